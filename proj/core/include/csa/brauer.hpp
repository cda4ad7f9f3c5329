// csa/brauer.hpp: central simple algebras as local-invariant profiles.

#pragma once

#include "csa/bigint.hpp"
#include "csa/field_setup.hpp"
#include "csa/residue.hpp"

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace csa {

/// Positive rational kept as base -> exponent. Equality compares the exact value.
class FactoredRational {
  public:
    FactoredRational() = default;
    /// Factors a positive integer by trial division (cofactors above 10^12 are kept whole).
    static FactoredRational from_integer(const BigInt &n);

    void multiply_power(const BigInt &base, const BigInt &exponent);
    FactoredRational &operator*=(const FactoredRational &other);
    FactoredRational operator*(const FactoredRational &other) const;
    FactoredRational inverse() const;
    FactoredRational pow(const BigInt &k) const;

    /// Exact value; exponents must fit in an unsigned long.
    Rational value() const;
    bool is_integer() const;
    BigInt integer_value() const;
    const std::map<BigInt, BigInt> &factors() const noexcept { return factors_; }

    friend bool operator==(const FactoredRational &a, const FactoredRational &b) { return a.value() == b.value(); }

  private:
    std::map<BigInt, BigInt> factors_;
};

std::string to_string(const FactoredRational &q);

/// The lambda of a central simple Z-algebra of degree M: nonzero local invariants only.
class InvariantProfile {
  public:
    using Entry = std::pair<PlaceKey, Residue>;

    explicit InvariantProfile(BigInt M = 1);

    const BigInt &M() const noexcept { return M_; }
    /// Sets lambda(v); a zero value removes v from the support.
    void set(const PlaceKey &place, const BigInt &value);
    Residue at(const std::string &place_id) const;
    /// Support in place order.
    const std::vector<Entry> &entries() const noexcept { return entries_; }
    bool is_zero() const noexcept { return entries_.empty(); }
    Residue sum() const;

    friend bool operator==(const InvariantProfile &a, const InvariantProfile &b) {
        return a.M_ == b.M_ && a.entries_ == b.entries_;
    }
    friend std::strong_ordering operator<=>(const InvariantProfile &a, const InvariantProfile &b);

  private:
    BigInt M_;
    std::vector<Entry> entries_;
};

struct ProfileCheck {
    bool valid = true;
    std::vector<std::string> diagnostics;
};

/// Complex places carry 0, real places 0 or M/2, and the invariants sum to 0.
ProfileCheck validate_profile(const InvariantProfile &v);

struct IndexReport {
    BigInt index;
    bool is_skew = false;
};

/// index = M / gcd(M, all values); skew iff index = M. Throws ValidationError on invalid profiles.
IndexReport index_and_skew(const InvariantProfile &v);

/// prod over finite places of ||p||^{M (M - gcd(M, lambda_p))}.
FactoredRational disc_over_center(const InvariantProfile &v);

/// Local index M / gcd(M, lambda_p) at each place of the support.
std::vector<std::pair<PlaceKey, BigInt>> local_indices(const InvariantProfile &v);

/// prod of ||p|| over finite places with lambda_p != 0.
FactoredRational ram_product(const InvariantProfile &v);

/// An algebra presented through its center: d(A|Z(A)), the degree over the center and
/// the center's degree and absolute discriminant over Q.
struct AlgebraDiscData {
    FactoredRational disc_over_center;
    BigInt degree = 1;        // A has dimension degree^2 over Z(A)
    BigInt center_degree = 1; // [Z(A) : Q]
    BigInt center_disc = 1;   // |D_{Z(A)}|
};

AlgebraDiscData algebra_data(const InvariantProfile &v, const BigInt &center_degree, const BigInt &center_disc);

/// dim_Q A = degree^2 * center_degree.
BigInt dimension_over_q(const AlgebraDiscData &a);

/// d(A|Q) = d(A|Z(A)) * D_{Z(A)}^{degree^2}.
FactoredRational disc_absolute(const AlgebraDiscData &a);

/// d(L|K) = d(L|Q) / d(K|Q)^{[L:K]}; throws ValidationError if dim K does not divide dim L.
FactoredRational disc_relative(const AlgebraDiscData &L, const AlgebraDiscData &K);

/// For every place w|v of F: dm | d_w lambda_v - dj kappa_w in Z/MZ.
bool embeds_into(const FieldSetup &setup, const InvariantProfile &v);

/// The fiber condition at one place, for lambda_v = value.
bool fiber_condition_holds(const FieldSetup &setup, const PlaceRecord &place, const Residue &value);

} // namespace csa
