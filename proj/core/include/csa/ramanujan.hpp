// csa/ramanujan.hpp: Ramanujan sums on divisors of M.

#pragma once

#include "csa/bigint.hpp"
#include "csa/residue.hpp"

namespace csa {

/// g_chi(q) = sum over units l of Z/qZ of e(chi * l / q), for q | M where M is chi's modulus.
///
/// Evaluated in closed form: with h = gcd(chi, q) and r = q / h,
/// g_chi(q) = mu(r) * phi(q) / phi(r). g_0 is Euler's totient and g_1 the Moebius function.
/// Throws ValidationError if q does not divide M.
BigInt ramanujan_g(const Residue &chi, const BigInt &q);

} // namespace csa
