// Independent reference computations used only by the tests.

#pragma once

#include "csa/csa.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using csa::BigInt;

/// Number of squarefree integers in [1, n], by sieving out multiples of p^2.
inline std::uint64_t squarefree_count(std::uint64_t n) {
    std::vector<char> bad(n + 1, 0);
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        for (std::uint64_t k = p * p; k <= n; k += p * p) bad[k] = 1;
    }
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= n; ++k) c += bad[k] ? 0 : 1;
    return c;
}

/// g_chi(q) as the literal exponential sum over units modulo q.
inline long ramanujan_by_sum(long chi, long q, long M) {
    std::complex<double> s = 0;
    for (long l = 0; l < q; ++l) {
        if (std::gcd(l, q) != 1) continue;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(chi * (M / q) * l % M) / static_cast<double>(M);
        s += std::polar(1.0, angle);
    }
    return std::lround(s.real());
}

/// Orbit sizes of a permutation found by walking each point, then their gcd.
inline std::size_t cycgcd_by_orbits(const csa::Permutation &g) {
    std::vector<char> seen(g.degree(), 0);
    std::size_t acc = 0;
    for (std::size_t i = 0; i < g.degree(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t k = i; !seen[k]; k = g(static_cast<csa::Permutation::Point>(k))) {
            seen[k] = 1;
            ++len;
        }
        acc = std::gcd(acc, len);
    }
    return acc;
}

inline csa::Permutation random_permutation(std::size_t d, std::mt19937_64 &rng) {
    std::vector<csa::Permutation::Point> img(d);
    for (std::size_t i = 0; i < d; ++i) img[i] = static_cast<csa::Permutation::Point>(i);
    std::shuffle(img.begin(), img.end(), rng);
    return csa::Permutation(img);
}

/// Closure of up to four random permutations, retried until transitive.
inline csa::GroupTable random_transitive_group(std::size_t d, std::mt19937_64 &rng) {
    for (;;) {
        const std::size_t k = 1 + rng() % 4;
        std::vector<csa::Permutation> gens;
        for (std::size_t i = 0; i < k; ++i) gens.push_back(random_permutation(d, rng));
        auto g = csa::group_closure(gens, d);
        if (g.is_transitive()) return g;
    }
}

/// The embedding condition read straight off the fibers, independent of the library's checks.
inline bool fiberwise_condition(const csa::FieldSetup &s, const csa::PlaceRecord &rec, const BigInt &lambda) {
    const BigInt dm = s.d() * s.m();
    for (const auto &f : rec.fibers) {
        BigInt x = f.local_degree * lambda - s.d() * s.j() * f.kappa.value();
        x %= s.M();
        if (x < 0) x += s.M();
        if (x % dm != 0) return false;
    }
    return true;
}

struct BruteRow {
    BigInt metric;
    bool skew;
};

/// Exhaustive enumeration over all maps (places -> Z/MZ) on the given candidate places.
/// `places` must include every place that can carry a nonzero value within the bound.
inline std::vector<BruteRow> brute_force_rows(const csa::FieldSetup &s, const csa::LocalConstraint &c,
                                              const std::vector<csa::PlaceRecord> &places, csa::Metric metric,
                                              const BigInt &X) {
    const BigInt M = s.M();
    const unsigned long Mu = M.get_ui();
    std::vector<unsigned long> vals(places.size(), 0);
    std::vector<BruteRow> out;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == places.size()) {
            BigInt sum = 0, g = M, q = 1;
            for (std::size_t k = 0; k < places.size(); ++k) {
                const auto &pl = places[k];
                const BigInt v(vals[k]);
                if (auto fixed = c.value(pl.key.id); fixed && fixed->value() != v) return;
                if (v % c.tau != 0) return;
                if (pl.key.kind == csa::PlaceKind::Complex && v != 0) return;
                if (pl.key.kind == csa::PlaceKind::Real && v != 0 && 2 * v != M) return;
                if (!fiberwise_condition(s, pl, v)) return;
                sum += v;
                g = csa::big_gcd(g, v);
                if (v != 0 && pl.key.kind == csa::PlaceKind::Finite) {
                    if (metric == csa::Metric::Ram) {
                        q *= pl.key.norm;
                    } else {
                        q *= csa::big_pow(pl.key.norm, BigInt(M * (M - csa::big_gcd(M, v))).get_ui());
                    }
                }
            }
            if (sum % M != 0 || q > X) return;
            out.push_back(BruteRow{q, g == 1});
            return;
        }
        for (unsigned long v = 0; v < Mu; ++v) {
            vals[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

/// Explicit places plus every rational prime p whose smallest conceivable nonzero contribution fits in X.
inline std::vector<csa::PlaceRecord> brute_force_places(const csa::FieldSetup &s, csa::Metric metric, const BigInt &X) {
    std::vector<csa::PlaceRecord> out = s.explicit_places();
    const BigInt M = s.M();
    BigInt e_min = 1;
    if (metric == csa::Metric::Disc) {
        BigInt largest = 1;
        for (const auto &g : csa::divisors_of(M)) {
            if (g < M) largest = g;
        }
        e_min = M * (M - largest);
    }
    if (M == 1) return out;
    for (unsigned long p = 2;; ++p) {
        if (!csa::is_prime(BigInt(p))) continue;
        if (csa::big_pow(BigInt(p), e_min.get_ui()) > X) break;
        if (s.find_explicit(std::to_string(p))) continue;
        out.push_back(s.tail_record(BigInt(p)));
    }
    return out;
}

} // namespace oracle
