// csa/bigint.hpp: arbitrary-precision integer and rational aliases over GMP.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace csa {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big_gcd(const BigInt &a, const BigInt &b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt big_lcm(const BigInt &a, const BigInt &b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Non-negative remainder of a modulo m (m > 0).
inline BigInt big_mod(const BigInt &a, const BigInt &m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool big_divides(const BigInt &d, const BigInt &n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline BigInt big_pow(const BigInt &base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

/// floor(n^(1/k)) for n >= 0.
inline BigInt big_root_floor(const BigInt &n, unsigned long k) {
    BigInt r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline std::uint64_t to_u64(const BigInt &v) {
    return static_cast<std::uint64_t>(v.get_ui());
}

inline bool fits_u64(const BigInt &v) {
    return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64 && v.fits_ulong_p();
}

inline std::string to_string(const BigInt &v) { return v.get_str(); }

inline std::string to_string(const Rational &q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Parses a decimal integer; throws ParseError on junk.
BigInt parse_bigint(const std::string &text);

/// Parses "p/q" or "p" into a canonical rational.
Rational parse_rational(const std::string &text);

/// Divisors of n in increasing order (n > 0, small enough to trial-divide).
std::vector<BigInt> divisors_of(const BigInt &n);

/// Möbius function of a positive integer.
int moebius(const BigInt &n);

/// Euler's totient of a positive integer.
BigInt totient(const BigInt &n);

/// Smallest prime factor of n >= 2.
BigInt smallest_prime_factor(const BigInt &n);

} // namespace csa
