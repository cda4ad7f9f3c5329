// csa/census.hpp: enumeration of Lambda_{S,xi,tau} under a discriminant or ramification budget,
// and the existence decision with witness construction.

#pragma once

#include "csa/brauer.hpp"
#include "csa/field_setup.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace csa {

/// (S, xi, tau): prescribed invariants on a finite set S of places and a divisor tau of M.
struct LocalConstraint {
    std::vector<std::pair<PlaceKey, Residue>> xi;
    BigInt tau = 1;

    bool contains(const std::string &place_id) const;
    std::optional<Residue> value(const std::string &place_id) const;
    /// sigma_xi = sum of xi over S.
    Residue sigma(const BigInt &M) const;
    /// Inserts or replaces xi(place).
    void assign(const PlaceKey &place, const Residue &value);
};

/// Checks tau | M, moduli, that every place of S is known and that xi satisfies the local conditions
/// (archimedean rules and the embedding condition at every fiber).
/// A xi not divisible by tau is allowed: the constrained set is then empty.
void validate_constraint(const FieldSetup &setup, const LocalConstraint &c);

bool xi_divisible_by_tau(const LocalConstraint &c);

/// The values lambda(v) allowed at one place by the local conditions and tau | lambda(v), ascending.
std::vector<Residue> admissible_values(const FieldSetup &setup, const PlaceRecord &place, const BigInt &tau);

/// d(xi) and ram(xi): contributions of the places of S.
FactoredRational xi_disc(const BigInt &M, const LocalConstraint &c);
FactoredRational xi_ram(const LocalConstraint &c);

enum class Metric { Disc, Ram };

std::string to_string(Metric m);
Metric parse_metric(const std::string &text);

struct Budget {
    Metric metric = Metric::Disc;
    BigInt bound = 0;
};

struct CensusRow {
    InvariantProfile profile;
    BigInt metric_value;
    FactoredRational disc;
    FactoredRational ram;
    BigInt index;
    bool is_skew = false;
};

struct CensusOptions {
    unsigned workers = 1;
};

/// Membership in Lambda_{S,xi,tau} (and in Lambda' when require_skew).
bool satisfies_lambda(const FieldSetup &setup, const LocalConstraint &c, const InvariantProfile &v,
                      bool require_skew = false);

/// Streams every profile of Lambda_{S,xi,tau} with metric <= bound, in search order.
/// Places of the exceptional set outside S range over all admissible values. Return false
/// from the visitor to stop early.
using CensusVisitor = std::function<bool(const InvariantProfile &, const BigInt &metric)>;
void visit_census(const FieldSetup &setup, const LocalConstraint &c, const Budget &budget, const CensusVisitor &visit);

/// Complete sorted list: by metric, then by profile (place order, then value).
std::vector<CensusRow> enumerate_census(const FieldSetup &setup, const LocalConstraint &c, const Budget &budget,
                                        bool skew_only, const CensusOptions &options = {});

struct CountRow {
    BigInt X;
    std::uint64_t count = 0;
    std::uint64_t skew_count = 0;
};

/// Counts at each grid point, from one enumeration at the largest bound.
std::vector<CountRow> count_table(const FieldSetup &setup, const LocalConstraint &c, Metric metric,
                                  const std::vector<BigInt> &grid, const CensusOptions &options = {});

using ExceptionalMap = std::vector<std::pair<PlaceKey, Residue>>;

struct ExistenceResult {
    bool exists = false;
    bool decided_by_prefilter = false;
    std::optional<ExceptionalMap> certificate;
};

inline constexpr std::uint64_t kDefaultExistenceCap = 10'000'000;

/// Searches maps on the exceptional places extending xi there, satisfying the local conditions, dm/U | sum,
/// and (skew) gcd(dm/U, gcd of values) = 1. Values of xi off the exceptional set are ignored.
ExistenceResult decide_existence(const FieldSetup &setup, const LocalConstraint &c, bool skew,
                                 std::uint64_t cap = kDefaultExistenceCap);

/// Extends a certificate to a full profile in Lambda (Lambda' when skew) agreeing with xi on S,
/// adding auxiliary tail primes. Throws CoverageError if the tail runs out of primes.
InvariantProfile construct_witness(const FieldSetup &setup, const LocalConstraint &c, const ExceptionalMap &certificate,
                                   bool skew);

} // namespace csa
