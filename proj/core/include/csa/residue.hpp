// csa/residue.hpp: elements of Z/MZ read through their principal ideals.
//
// "a divides b", gcd and lcm on residues are statements about ideals of Z/MZ,
// so those operations return positive divisors of M rather than residues.

#pragma once

#include "csa/bigint.hpp"

#include <compare>
#include <ostream>

namespace csa {

/// Reduced fraction a/q in Q/Z with 0 <= a < q and gcd(a, q) = 1.
struct QZFraction {
    BigInt numerator;
    BigInt denominator{1};

    friend bool operator==(const QZFraction &, const QZFraction &) = default;
};

class Residue {
  public:
    /// The zero residue modulo 1.
    Residue() : modulus_(1), value_(0) {}
    /// Reduces `value` into [0, modulus). Throws ValidationError if modulus < 1.
    Residue(BigInt value, BigInt modulus);
    Residue(long value, long modulus) : Residue(BigInt(value), BigInt(modulus)) {}

    const BigInt &modulus() const noexcept { return modulus_; }
    const BigInt &value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0; }

    Residue operator+(const Residue &other) const;
    Residue operator-(const Residue &other) const;
    Residue operator-() const;
    Residue &operator+=(const Residue &other);
    /// Integer multiple.
    Residue scaled(const BigInt &k) const;

    friend bool operator==(const Residue &a, const Residue &b) {
        return a.modulus_ == b.modulus_ && a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const Residue &a, const Residue &b);

  private:
    void require_same_modulus(const Residue &other) const;

    BigInt modulus_;
    BigInt value_;
};

/// gcd(a, M): the positive divisor of M generating the ideal of a (M for zero).
BigInt gcd_with_modulus(const Residue &a);

/// Ideal divisibility: gcd_with_modulus(a) divides b. Throws on modulus mismatch.
bool divides_in_cyclic(const Residue &a, const Residue &b);
/// Divisor form: t (a positive divisor of M) divides b.
bool divides_in_cyclic(const BigInt &t, const Residue &b);

/// Additive order M / gcd(M, a).
BigInt element_order(const Residue &a);

/// The element a/M of Q/Z in lowest terms.
QZFraction to_qz(const Residue &a);

std::ostream &operator<<(std::ostream &os, const Residue &r);
std::ostream &operator<<(std::ostream &os, const QZFraction &q);

} // namespace csa
