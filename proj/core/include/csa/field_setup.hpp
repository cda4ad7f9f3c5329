// csa/field_setup.hpp: the arithmetic environment F|Z, K and the tail of unlisted primes.

#pragma once

#include "csa/bigint.hpp"
#include "csa/permutation.hpp"
#include "csa/residue.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace csa {

enum class PlaceKind { Finite, Real, Complex };

std::string to_string(PlaceKind kind);
PlaceKind parse_place_kind(const std::string &text);

/// Identity of a place of Z. Archimedean places carry norm 0.
///
/// Places are ordered finite-before-archimedean, finite ones by (norm, id) and
/// archimedean ones by id. Every deterministic output uses this order.
struct PlaceKey {
    std::string id;
    PlaceKind kind = PlaceKind::Finite;
    BigInt norm = 0;

    bool is_archimedean() const noexcept { return kind != PlaceKind::Finite; }

    friend bool operator==(const PlaceKey &a, const PlaceKey &b) { return a.id == b.id; }
    friend std::strong_ordering operator<=>(const PlaceKey &a, const PlaceKey &b);
};

PlaceKey finite_place(const BigInt &norm, std::string id = {});
PlaceKey real_place(std::string id = "inf");
PlaceKey complex_place(std::string id);

/// A place w of F above v: local degree d_w = [F_w : Z_v] and kappa_w with inv(K_w) = kappa_w / m.
struct FiberRecord {
    BigInt local_degree;
    Residue kappa;
};

struct PlaceRecord {
    PlaceKey key;
    bool ramified_in_F = false;
    std::vector<FiberRecord> fibers;
    /// Frobenius conjugacy class index; set for unramified finite places.
    std::optional<std::size_t> frobenius;

    bool has_nonzero_kappa() const;
};

enum class TailKind { Rational, Quadratic, Listed, Sampled };

std::string to_string(TailKind kind);

/// How places that are not listed explicitly are generated.
struct TailOracle {
    TailKind kind = TailKind::Rational;
    BigInt discriminant = 0; // quadratic: the field discriminant D of F = Q(sqrt D)
    BigInt bound = 0;        // listed: every finite place of norm <= bound is explicit
    std::uint64_t seed = 0;  // sampled: Chebotarev Monte Carlo seed
};

/// One explicitly listed place; kappa values are integers reduced modulo m.
struct PlaceRecordInput {
    std::string id;
    PlaceKind kind = PlaceKind::Finite;
    BigInt norm = 0;
    std::optional<bool> ramified;
    std::vector<std::pair<BigInt, BigInt>> fibers; // (d_w, kappa_w)
    std::optional<std::vector<long>> frobenius;     // one-based representative
};

/// Unvalidated setup data as read from a file or assembled in code.
struct SetupDescription {
    BigInt d = 1, m = 1, j = 1;
    std::vector<std::vector<long>> group_generators; // one-based image lists
    std::vector<PlaceRecordInput> places;
    TailOracle tail;
    std::optional<double> zeta_residue;
};

class FieldSetup;
using SetupPtr = std::shared_ptr<const FieldSetup>;

/// Validated, immutable arithmetic environment.
class FieldSetup {
  public:
    const BigInt &d() const noexcept { return d_; }
    const BigInt &m() const noexcept { return m_; }
    const BigInt &j() const noexcept { return j_; }
    const BigInt &M() const noexcept { return M_; }
    BigInt n() const { return d_ * j_ * j_; }

    const std::shared_ptr<const GroupTable> &group_ptr() const noexcept { return group_; }
    const GroupTable &group() const noexcept { return *group_; }
    const TailOracle &tail() const noexcept { return tail_; }
    bool is_stochastic() const noexcept { return tail_.kind == TailKind::Sampled; }
    /// Z = Q for the rational, quadratic and sampled kinds; finite places are then rational primes.
    bool center_is_rational() const noexcept { return tail_.kind != TailKind::Listed; }
    std::optional<double> zeta_residue() const noexcept { return zeta_residue_; }

    const std::vector<PlaceRecord> &explicit_places() const noexcept { return places_; }
    const PlaceRecord *find_explicit(const std::string &id) const;

    /// Record of any place: explicit, or synthesized from the tail oracle for a rational prime.
    PlaceRecord place_record(const PlaceKey &key) const;

    /// Non-explicit finite places with norm <= bound in ascending norm order.
    /// Throws CoverageError when the oracle cannot answer exactly up to `bound`.
    std::vector<PlaceRecord> tail_places_up_to(const BigInt &bound) const;

    /// Explicit non-exceptional finite places (listed mode) together with the tail, ascending.
    std::vector<PlaceRecord> generic_places_up_to(const BigInt &bound) const;

    /// Largest norm the oracle answers exactly; nullopt when unbounded.
    std::optional<BigInt> coverage_bound() const;

    /// Frobenius record of a rational prime not listed explicitly.
    PlaceRecord tail_record(const BigInt &p) const;

  private:
    friend SetupPtr build_setup(const SetupDescription &);

    BigInt d_, m_, j_, M_;
    std::shared_ptr<const GroupTable> group_;
    std::vector<PlaceRecord> places_;
    TailOracle tail_;
    std::optional<double> zeta_residue_;
};

/// Validates a description and produces the environment. Builtin kinds fill in the
/// archimedean place and (quadratic) the ramified primes when they are not listed.
SetupPtr build_setup(const SetupDescription &description);

/// Shorthand constructors for the builtin environments.
SetupDescription rational_description(long m, long j);
SetupDescription quadratic_description(long discriminant, long m, long j);

/// Key of a place named by id: an explicit place, or (Z = Q) a rational prime written in decimal.
PlaceKey resolve_place(const FieldSetup &setup, const std::string &id);

/// Frobenius class of an unramified finite place. Throws ValidationError if ramified.
std::size_t frobenius_at(const FieldSetup &setup, const PlaceKey &place);

/// Archimedean places, places ramified in F, and places carrying some kappa_w != 0.
std::vector<PlaceKey> exceptional_places(const FieldSetup &setup);
bool is_exceptional(const PlaceRecord &record);

/// eta = lcm(dm / cycgcd(Frob(p)), tau) as a divisor of M. Throws for exceptional places.
BigInt eta(const FieldSetup &setup, const BigInt &tau, const PlaceRecord &place);

/// dm / cycgcd(Frob(p)) for a non-exceptional finite place.
BigInt frobenius_step(const FieldSetup &setup, const PlaceRecord &place);

} // namespace csa
