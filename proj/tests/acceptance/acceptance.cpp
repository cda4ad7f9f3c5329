// One PASS/FAIL line per acceptance criterion; the exit status is the number of failures.

#include "csa/csa.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using csa::BigInt;
using csa::LocalConstraint;
using csa::Metric;
using csa::Rational;
using csa::Residue;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            if (pass) detail << "first failure: " << what << "; ";
            pass = false;
        }
    }
};

int failures = 0;

void criterion(int id, const char *title, const std::function<void(Outcome &)> &body) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception &e) {
        out.pass = false;
        out.detail << "exception: " << e.what() << "; ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!out.pass) ++failures;
    std::printf("%s %2d %s [%.2fs] %s\n", out.pass ? "PASS" : "FAIL", id, title, secs, out.detail.str().c_str());
    std::fflush(stdout);
}

std::vector<BigInt> log_grid(int from_exp4, int to_exp4) {
    // X = 10^(k/4), rounded down
    std::vector<BigInt> grid;
    for (int k = from_exp4; k <= to_exp4; ++k) {
        grid.emplace_back(std::floor(std::pow(10.0, k / 4.0)));
    }
    return grid;
}

/// Grid points whose count is large enough that rounding does not dominate log N.
std::vector<csa::CountRow> fit_window(const std::vector<csa::CountRow> &table, std::uint64_t min_count) {
    std::vector<csa::CountRow> out;
    for (const auto &r : table) {
        if (r.count >= min_count) out.push_back(r);
    }
    return out;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

/// Setups with Z = Q of the given total degree M.
csa::SetupPtr random_setup_of_degree(std::mt19937_64 &rng, long M) {
    for (;;) {
        auto s = fixture::random_setup(rng, M);
        if (s->M() == M) return s;
    }
}

LocalConstraint random_partial_xi(const csa::FieldSetup &s, std::mt19937_64 &rng) {
    LocalConstraint c;
    for (const auto &rec : s.explicit_places()) {
        if (rng() % 2) continue;
        const auto vals = csa::admissible_values(s, rec, 1);
        if (!vals.empty()) c.assign(rec.key, vals[rng() % vals.size()]);
    }
    return c;
}

/// Bound admitting the cheapest nonzero value at every generic prime up to 7.
BigInt seven_bound(const csa::FieldSetup &s) {
    BigInt largest = 1;
    for (const auto &g : csa::divisors_of(s.M())) {
        if (g < s.M()) largest = g;
    }
    return csa::big_pow(BigInt(7), BigInt(s.M() * (s.M() - largest)).get_ui()) * 4;
}

csa::GroupTable sextic_group() { return csa::group_closure(fixture::sextic_generators(), 6); }

/// beta counted element by element: the share of g with dm / cycgcd(g) dividing M / u.
Rational beta_by_elements(const csa::GroupTable &g, long m, long j, const BigInt &u) {
    const long d = static_cast<long>(g.degree());
    const BigInt M = BigInt(d) * m * j;
    long hits = 0;
    for (const auto &x : g.elements()) {
        const BigInt step = BigInt(d * m) / BigInt(static_cast<unsigned long>(oracle::cycgcd_by_orbits(x)));
        if (csa::big_divides(step, M / u)) ++hits;
    }
    Rational beta(hits, static_cast<long>(g.order()));
    beta.canonicalize();
    return beta;
}

} // namespace

int main() {
    const double pi2 = std::numbers::pi * std::numbers::pi;

    criterion(1, "quaternion census counts equal squarefree counts up to sqrt(X)", [](Outcome &o) {
        const auto s = fixture::quaternion();
        const std::vector<BigInt> grid{100, 10000, 1000000, 100000000};
        const auto table = csa::count_table(*s, {}, Metric::Disc, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto root = csa::big_root_floor(grid[i], 2).get_ui();
            const auto expected = oracle::squarefree_count(root);
            o.require(table[i].count == expected, "count at X=" + grid[i].get_str());
            o.require(table[i].skew_count + 1 == expected, "skew count at X=" + grid[i].get_str());
            o.detail << "N(" << grid[i].get_str() << ")=" << table[i].count << " ";
        }
    });

    criterion(2, "quaternion exponent fit and leading constants", [&](Outcome &o) {
        const auto s = fixture::quaternion();
        const auto table = csa::count_table(*s, {}, Metric::Disc, log_grid(8, 32));
        const auto fit = csa::fit_exponents(fit_window(table, 50));
        o.require(fit.alpha_hat >= 0.48 && fit.alpha_hat <= 0.52, "alpha_hat in [0.48, 0.52]");
        o.detail << "window N>=50: " << fit.points << " points, unfiltered alpha=" << fmt(csa::fit_exponents(table).alpha_hat)
                 << "; ";
        const auto total = csa::leading_constant(*s, {}, 100000, true);
        o.require(std::abs(total.C / (6.0 / pi2) - 1) <= 0.02, "summed C within 2% of 6/pi^2");
        for (const auto &part : total.completions) {
            o.require(std::abs(part.C / (3.0 / pi2) - 1) <= 0.02, "per-xi C within 2% of 3/pi^2");
        }
        o.detail << "alpha=" << fmt(fit.alpha_hat) << " C=" << fmt(total.C) << " parts=";
        for (const auto &part : total.completions) o.detail << fmt(part.C) << " ";
    });

    criterion(3, "ramification metric: exact count and linear growth", [](Outcome &o) {
        const auto s = fixture::quaternion();
        const auto e = csa::exponents_inner(*s);
        o.require(e.b_star == 1, "b* = 1");
        const auto at = csa::count_table(*s, {}, Metric::Ram, {10000});
        o.require(at[0].count == oracle::squarefree_count(10000), "count at X=10^4");
        const auto table = csa::count_table(*s, {}, Metric::Ram, log_grid(4, 24));
        const auto fit = csa::fit_exponents(fit_window(table, 50));
        o.require(fit.alpha_hat >= 0.97 && fit.alpha_hat <= 1.03, "alpha_hat in [0.97, 1.03]");
        o.detail << "N(10^4)=" << at[0].count << " alpha=" << fmt(fit.alpha_hat) << " (window N>=50, " << fit.points
                 << " points; unfiltered " << fmt(csa::fit_exponents(table).alpha_hat) << ")";
    });

    criterion(4, "direct and character-sum expansions agree coefficientwise", [](Outcome &o) {
        std::mt19937_64 rng(4004);
        int instances = 0;
        std::size_t terms = 0;
        while (instances < 24) {
            const auto s = fixture::random_setup(rng, 12);
            const auto divs = csa::divisors_of(s->M());
            const auto c = fixture::random_full_xi(*s, divs[rng() % divs.size()], rng);
            if (c.xi.size() != csa::exceptional_places(*s).size()) continue;
            const auto metric = rng() % 3 == 0 ? Metric::Ram : Metric::Disc;
            const BigInt cutoff = 20 + rng() % 31;
            const BigInt bound = metric == Metric::Ram ? BigInt(1) << 48 : BigInt(1) << 400;
            const auto a = csa::dirichlet_partial(*s, c, cutoff, csa::SumMethod::Direct, metric, bound);
            const auto b = csa::dirichlet_partial(*s, c, cutoff, csa::SumMethod::Charsum, metric, bound);
            o.require(a == b, "identity on instance " + std::to_string(instances));
            terms += a.terms.size();
            ++instances;
        }
        o.detail << instances << " instances, " << terms << " coefficients";
    });

    criterion(5, "skew counts equal the Moebius sum over tau", [](Outcome &o) {
        std::mt19937_64 rng(5005);
        int instances = 0;
        for (long M : {2L, 4L, 6L}) {
            for (int k = 0; k < 6; ++k) {
                const auto s = random_setup_of_degree(rng, M);
                auto c = random_partial_xi(*s, rng);
                const BigInt X = seven_bound(*s);
                const std::vector<BigInt> grid{1, X / 4, X, X * 100, X * 10000};
                const auto base = csa::count_table(*s, c, Metric::Disc, grid);
                std::vector<long long> sieve(grid.size(), 0);
                for (const auto &tau : csa::divisors_of(s->M())) {
                    const int mu = csa::moebius(tau);
                    if (mu == 0) continue;
                    c.tau = tau;
                    const auto t = csa::count_table(*s, c, Metric::Disc, grid);
                    for (std::size_t i = 0; i < grid.size(); ++i) sieve[i] += mu * static_cast<long long>(t[i].count);
                }
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    o.require(static_cast<long long>(base[i].skew_count) == sieve[i], "sieve at M=" + std::to_string(M));
                }
                ++instances;
            }
        }
        o.detail << instances << " instances";
    });

    criterion(6, "group invariants", [](Outcome &o) {
        const auto a4 = sextic_group();
        const auto b = csa::invariants_bundle(a4, 1, 1);
        o.require(a4.order() == 12 && b.U == 3 && b.u == 3 && b.beta == Rational(2, 3), "sextic group invariants");
        o.require(beta_by_elements(a4, 1, 1, b.u) == b.beta, "sextic beta by elements");
        const auto s2 = csa::group_closure({csa::Permutation::parse_cycles(2, "(1 2)")}, 2);
        o.require(csa::invariants_bundle(s2, 1, 1).U == 2, "U of the regular S2");

        std::mt19937_64 rng(6006);
        int groups = 0;
        for (; groups < 200; ++groups) {
            const std::size_t d = 2 + rng() % 6;
            auto g = std::make_shared<const csa::GroupTable>(oracle::random_transitive_group(d, rng));
            std::size_t U = 1;
            for (const auto &x : g->elements()) U = std::lcm(U, oracle::cycgcd_by_orbits(x));
            const long m = 1 + static_cast<long>(rng() % 2), j = 1 + static_cast<long>(rng() % 3);
            const auto bundle = csa::invariants_bundle(*g, j, m);
            o.require(U >= 2 && bundle.U == U, "U >= 2 and matches the orbit oracle");
            o.require(beta_by_elements(*g, m, j, bundle.u) == bundle.beta, "beta by elements");
            const BigInt M = BigInt(static_cast<unsigned long>(d)) * m * j;
            const csa::PsiContext ctx{BigInt(static_cast<unsigned long>(d)), m, j, bundle.u};
            for (BigInt chi = 0; chi < M; ++chi) {
                const auto psi = csa::class_function_psi(g, csa::PsiVariant::Discriminant, 1, Residue(chi, M), ctx);
                const Rational expected =
                    csa::big_divides(bundle.u, chi) ? (Rational(bundle.u) - 1) * bundle.beta : Rational(-bundle.beta);
                o.require(csa::avg(psi) == expected, "average of psi_{1,chi}");
            }
        }
        o.detail << groups << " random groups";
    });

    criterion(7, "existence decisions and witnesses", [](Outcome &o) {
        const auto gauss = csa::build_setup(fixture::remark237_description());
        o.require(!csa::decide_existence(*gauss, {}, true).exists, "split-prime obstruction (skew)");
        o.require(!csa::decide_existence(*gauss, {}, false).exists, "split-prime obstruction");
        for (long m = 1; m <= 4; ++m)
            for (long j = 1; j <= 4; ++j) {
                if (std::gcd(m, j) == 1 || j * j < 2) continue;
                const auto s = csa::build_setup(csa::rational_description(m, j));
                o.require(!csa::decide_existence(*s, {}, true).exists, "skew with gcd(m, j) > 1");
            }

        std::mt19937_64 rng(7007);
        int agree = 0, witnesses = 0;
        for (int trial = 0; trial < 50; ++trial) {
            csa::SetupPtr s;
            do {
                s = fixture::random_setup(rng, 6);
            } while (s->explicit_places().size() > 4);
            const bool skew = rng() % 2;
            const auto c = random_partial_xi(*s, rng);
            const BigInt X = seven_bound(*s);
            const auto brute =
                oracle::brute_force_rows(*s, c, oracle::brute_force_places(*s, Metric::Disc, X), Metric::Disc, X);
            const bool hit = std::any_of(brute.begin(), brute.end(), [&](const auto &r) { return !skew || r.skew; });
            const auto r = csa::decide_existence(*s, c, skew);
            bool ok = hit ? r.exists : true;
            if (r.exists) {
                const auto w = csa::construct_witness(*s, c, *r.certificate, skew);
                const bool valid = csa::satisfies_lambda(*s, c, w, skew);
                o.require(valid, "witness satisfies the constraint");
                witnesses += valid ? 1 : 0;
            }
            o.require(ok, "exhaustive search found a profile the decision missed");
            agree += ok ? 1 : 0;
        }
        o.detail << agree << "/50 agree, " << witnesses << " witnesses checked";
    });

    criterion(8, "outer extensions: two-path discriminant and splitting sweeps", [](Outcome &o) {
        csa::BaseAlgebra K;
        K.m = 2;
        K.kappa = {{csa::finite_place(2), Residue(1, 2)}, {csa::real_place(), Residue(1, 2)}};
        csa::EtaleData E{2, {{csa::finite_place(2), {csa::SplittingFactor::finite(1, 2)}},
                             {csa::real_place(), {csa::SplittingFactor::infinite(csa::ArchFactor::ComplexOverReal)}}}};
        const auto r = csa::outer_summary(K, E, 3);
        const auto second = csa::disc_relative(csa::tensor_algebra_data(K, E, 3, 1, 1), csa::base_algebra_data(K, 1, 1));
        o.require(r.d_L_over_K.value() == Rational(81, 16) && !r.is_skew, "Hamilton over Q(sqrt -3)");
        o.require(second == r.d_L_over_K, "tensor profile path");

        std::size_t cases = 0;
        for (long d = 1; d <= 4; ++d)
            for (long m = 1; m <= 4; ++m) {
                const auto ft = csa::splitting_types(d, csa::PlaceKind::Finite);
                const auto rt = csa::splitting_types(d, csa::PlaceKind::Real);
                for (long k2 = 0; k2 < m; ++k2)
                    for (long kinf : {0L, m / 2}) {
                        if (kinf != 0 && m % 2 != 0) continue;
                        csa::BaseAlgebra B;
                        B.m = m;
                        B.kappa = {{csa::finite_place(2), Residue(k2, m)},
                                   {csa::finite_place(3), Residue(-k2 - kinf, m)},
                                   {csa::real_place(), Residue(kinf, m)}};
                        const BigInt dK = csa::base_algebra_data(B, 1, 1).disc_over_center.integer_value();
                        BigInt g = m;
                        for (const auto &[key, x] : B.kappa) g = csa::big_gcd(g, x.value());
                        for (const auto &t2 : ft)
                            for (const auto &t3 : ft)
                                for (const auto &ti : rt) {
                                    csa::EtaleData F{d, {{csa::finite_place(2), t2}, {csa::finite_place(3), t3},
                                                         {csa::real_place(), ti}}};
                                    const BigInt dv = csa::delta(B, F).integer_value();
                                    const BigInt root = csa::big_root_floor(dv, static_cast<unsigned long>(m));
                                    o.require(csa::big_pow(root, static_cast<unsigned long>(m)) == dv, "delta is an m-th power");
                                    o.require(csa::big_divides(dv, csa::big_pow(dK, static_cast<unsigned long>(d))),
                                              "delta divides d(K|F)^d");
                                    const auto sum = csa::outer_summary(B, F, 7);
                                    if (g == 1 && std::gcd(d, m) == 1) o.require(sum.is_skew, "skew stays skew");
                                    o.require(csa::disc_relative(csa::tensor_algebra_data(B, F, 7, 1, 1),
                                                                 csa::base_algebra_data(B, 1, 1)) == sum.d_L_over_K,
                                              "two paths agree in the sweep");
                                    ++cases;
                                }
                    }
            }
        o.detail << cases << " sweep cases";
    });

    criterion(9, "fiberwise embedding condition equals the step divisibility", [](Outcome &o) {
        static const long discs[] = {-3, -4, -7, -8, 5, 8, 12, 13, -15, 17, -20, 21};
        std::mt19937_64 rng(9009);
        int places = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const long D = discs[rng() % std::size(discs)];
            const long m = 1 + static_cast<long>(rng() % 4), j = 1 + static_cast<long>(rng() % 3);
            const auto s = csa::build_setup(csa::quadratic_description(D, m, j));
            const BigInt M = s->M();
            // a random profile supported on eight generic primes
            for (auto p : {101UL, 103UL, 107UL, 109UL, 113UL, 127UL, 131UL, 137UL}) {
                const auto rec = s->place_record(csa::finite_place(BigInt(p)));
                if (csa::is_exceptional(rec)) continue;
                const BigInt lambda = BigInt(static_cast<unsigned long>(rng() % M.get_ui()));
                const std::size_t c = s->group().class_cycgcd(*rec.frobenius);
                const BigInt step = s->d() * s->m() / BigInt(static_cast<unsigned long>(c));
                const bool fiberwise = oracle::fiberwise_condition(*s, rec, lambda);
                o.require(fiberwise == csa::big_divides(step, lambda), "oracle vs cycgcd shortcut");
                o.require(fiberwise == csa::fiber_condition_holds(*s, rec, Residue(lambda, M)), "oracle vs library");
                ++places;
            }
        }
        o.detail << places << " places";
    });

    criterion(10, "tower law for relative discriminants", [](Outcome &o) {
        std::mt19937_64 rng(1010);
        auto profile = [&](const BigInt &M) {
            csa::InvariantProfile v{M};
            BigInt sum = 0;
            for (long p : {2L, 3L, 5L, 7L, 11L}) {
                if (rng() % 2) continue;
                const BigInt x = BigInt(static_cast<unsigned long>(rng() % M.get_ui()));
                v.set(csa::finite_place(p), x);
                sum += x;
            }
            v.set(csa::finite_place(13), csa::big_mod(-sum, M));
            return v;
        };
        int towers = 0;
        for (; towers < 300; ++towers) {
            // centers: Q or a quadratic field at the bottom, same or a quadratic extension above
            const BigInt da = 1 + rng() % 2, Da = da == 1 ? 1 : 3 + rng() % 40;
            const bool grow = rng() % 2;
            const BigInt dc = grow ? da * 2 : da, Dc = grow ? Da * Da * (5 + rng() % 9) : Da;
            const BigInt ma = 1 + rng() % 3, mb = ma * (1 + rng() % 2), mc = mb * (1 + rng() % 2);
            const auto A = csa::algebra_data(profile(ma), da, Da);
            const auto B = csa::algebra_data(profile(mb), da, Da);
            const auto C = csa::algebra_data(profile(mc), dc, Dc);
            const BigInt CB = csa::dimension_over_q(C) / csa::dimension_over_q(B);
            o.require(csa::disc_relative(C, A) == csa::disc_relative(C, B) * csa::disc_relative(B, A).pow(CB),
                      "tower " + std::to_string(towers));
        }
        o.detail << towers << " towers";
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
