// csa/primes.hpp: rational primes and quadratic residue symbols.

#pragma once

#include "csa/bigint.hpp"

#include <cstdint>
#include <vector>

namespace csa {

/// All primes <= bound, ascending (Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// Kronecker symbol (a / n) for n >= 1.
int kronecker_symbol(const BigInt &a, const BigInt &n);

bool is_prime(const BigInt &n);

/// True when D is the discriminant of a quadratic field (D != 1, fundamental).
bool is_fundamental_discriminant(const BigInt &d);

} // namespace csa
