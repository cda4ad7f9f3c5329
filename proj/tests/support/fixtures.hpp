// Setups shared by the unit and acceptance tests.

#pragma once

#include "csa/csa.hpp"

#include <random>
#include <vector>

namespace fixture {

using csa::BigInt;

/// Z = F = Q, K = Q, j = 2: central simple Q-algebras of degree 2.
inline csa::SetupPtr quaternion() { return csa::build_setup(csa::rational_description(1, 2)); }

/// K = Hamilton quaternions over F = Z = Q, with given j.
inline csa::SetupDescription hamilton_description(long j) {
    auto d = csa::rational_description(2, j);
    d.places.push_back({"2", csa::PlaceKind::Finite, 2, std::nullopt, {{1, 1}}, std::nullopt});
    d.places.push_back({"inf", csa::PlaceKind::Real, 0, std::nullopt, {{1, 1}}, std::nullopt});
    return d;
}

/// F = Q(i), m = 2, j = 1, kappa = 0 and 1 at the two places above 5, kappa = 1 at 2.
inline csa::SetupDescription remark237_description() {
    auto d = csa::quadratic_description(-4, 2, 1);
    d.places.push_back({"2", csa::PlaceKind::Finite, 2, true, {{2, 1}}, std::nullopt});
    d.places.push_back({"5", csa::PlaceKind::Finite, 5, std::nullopt, {{1, 0}, {1, 1}}, std::nullopt});
    return d;
}

/// The sextic group generated by (1 4)(2 5) and (1 3 5)(2 4 6).
inline std::vector<csa::Permutation> sextic_generators() {
    return {csa::Permutation::parse_cycles(6, "(1 4)(2 5)"), csa::Permutation::parse_cycles(6, "(1 3 5)(2 4 6)")};
}

inline csa::LocalConstraint xi_at(const csa::FieldSetup &s, std::initializer_list<std::pair<const char *, long>> values,
                                  long tau = 1) {
    csa::LocalConstraint c;
    c.tau = tau;
    for (const auto &[id, v] : values) c.assign(csa::resolve_place(s, id), csa::Residue(BigInt(v), s.M()));
    return c;
}

/// Random Z = Q setup: rational (d = 1) or a quadratic field, with K given by random
/// invariants at a few small places, subject to M = dmj <= max_M.
inline csa::SetupPtr random_setup(std::mt19937_64 &rng, long max_M, bool allow_quadratic = true) {
    static const long discs[] = {-4, -3, -7, -8, 5, 8, 12, 13, -15, 17};
    for (;;) {
        const bool quad = allow_quadratic && rng() % 2 == 0;
        const long d = quad ? 2 : 1;
        const long m = 1 + static_cast<long>(rng() % 4);
        const long j = 1 + static_cast<long>(rng() % 4);
        if (d * m * j > max_M || d * j * j < 2) continue;
        csa::SetupDescription desc =
            quad ? csa::quadratic_description(discs[rng() % std::size(discs)], m, j) : csa::rational_description(m, j);
        auto base = csa::build_setup(desc);
        // invariants of K at a few places: pick fibers from the base setup and random kappas
        std::vector<csa::PlaceRecordInput> inputs;
        long total = 0;
        auto push = [&](const csa::PlaceRecord &rec) {
            csa::PlaceRecordInput in{rec.key.id, rec.key.kind, rec.key.norm, std::nullopt, {}, std::nullopt};
            if (quad && rec.key.kind == csa::PlaceKind::Finite) in.ramified = rec.ramified_in_F;
            for (const auto &f : rec.fibers) {
                long kappa = 0;
                if (rec.key.kind == csa::PlaceKind::Finite) {
                    kappa = static_cast<long>(rng() % m);
                } else if (rec.key.kind == csa::PlaceKind::Real && f.local_degree == 1 && m % 2 == 0) {
                    kappa = rng() % 2 ? m / 2 : 0;
                }
                total += kappa;
                in.fibers.emplace_back(f.local_degree, kappa);
            }
            inputs.push_back(in);
        };
        for (const auto &rec : base->explicit_places()) push(rec);
        for (long p : {3L, 5L, 7L, 11L}) {
            if (base->find_explicit(std::to_string(p))) continue;
            if (rng() % 3 != 0) continue;
            push(base->tail_record(BigInt(p)));
        }
        // repair the sum at the first finite fiber, or give up on this draw
        if (total % m != 0) {
            bool fixed = false;
            for (auto &in : inputs) {
                if (in.kind != csa::PlaceKind::Finite || in.fibers.empty()) continue;
                auto &k = in.fibers.front().second;
                k = csa::big_mod(k - total, BigInt(m));
                fixed = true;
                break;
            }
            if (!fixed) continue;
        }
        desc.places = inputs;
        return csa::build_setup(desc);
    }
}

/// Random xi on all exceptional places (admissible values divisible by tau).
inline csa::LocalConstraint random_full_xi(const csa::FieldSetup &s, const BigInt &tau, std::mt19937_64 &rng) {
    csa::LocalConstraint c;
    c.tau = tau;
    for (const auto &rec : s.explicit_places()) {
        if (!csa::is_exceptional(rec)) continue;
        const auto vals = csa::admissible_values(s, rec, tau);
        if (vals.empty()) return c;
        c.assign(rec.key, vals[rng() % vals.size()]);
    }
    return c;
}

} // namespace fixture
