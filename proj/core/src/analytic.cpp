#include "csa/analytic.hpp"

#include "csa/errors.hpp"
#include "csa/permutation.hpp"

#include <cmath>
#include <numbers>

namespace csa {

ExponentReport exponents_inner(const FieldSetup &setup) {
    if (setup.n() < 2) throw ValidationError("n = dj^2 must be at least 2");
    const auto bundle = invariants_bundle(setup.group(), setup.j(), setup.m());
    ExponentReport r;
    r.M = setup.M();
    r.u = bundle.u;
    r.U = bundle.U;
    r.beta = bundle.beta;
    r.avg_cycgcd = bundle.avg_cycgcd;
    r.a = Rational(r.M * r.M) * (Rational(1) - Rational(BigInt(1), r.u));
    r.a.canonicalize();
    r.b = Rational(r.u - 1) * r.beta;
    r.b.canonicalize();
    r.b_star = Rational(setup.j()) * r.avg_cycgcd - 1;
    r.b_star.canonicalize();
    return r;
}

OuterExponents exponents_outer_abelian(const std::vector<BigInt> &cyclic_orders, const BigInt &m,
                                       const BigInt &deg_zeta_u) {
    if (m < 1 || deg_zeta_u < 1) throw ValidationError("m and [F(zeta_u):F] must be positive");
    BigInt order = 1;
    for (const auto &c : cyclic_orders) {
        if (c < 1) throw ValidationError("cyclic factor orders must be positive");
        order *= c;
    }
    if (order < 2) throw ValidationError("G must be nontrivial");
    OuterExponents out;
    out.u = smallest_prime_factor(order);
    unsigned long s = 0;
    for (const auto &c : cyclic_orders) {
        if (big_divides(out.u, c)) ++s;
    }
    out.r = big_pow(out.u, s) - 1;
    out.a = Rational(m * m * order) * (Rational(1) - Rational(BigInt(1), out.u));
    out.a.canonicalize();
    out.b = Rational(out.r, deg_zeta_u);
    out.b.canonicalize();
    return out;
}

Rational exponent_outer_degree(long n, const BigInt &m) {
    if (n < 2 || n > 5) throw ValidationError("degree n must lie in {2, 3, 4, 5}");
    if (m < 1) throw ValidationError("m must be positive");
    return Rational(BigInt(1), m * m);
}

EulerPolynomial euler_factor(const FieldSetup &setup, const BigInt &tau, const Residue &chi, const PlaceRecord &place,
                             Metric metric) {
    const BigInt &M = setup.M();
    if (chi.modulus() != M) throw ValidationError("chi must be a residue modulo M");
    const BigInt e = eta(setup, tau, place);
    EulerPolynomial f;
    f[0] = 1;
    if (metric == Metric::Ram) {
        const BigInt c = M / e;
        const BigInt coef = (big_divides(c, chi.value()) ? c : BigInt(0)) - 1;
        if (coef != 0 && e < M) f[1] = coef;
        return f;
    }
    for (const auto &g : divisors_of(M)) {
        if (g == M || !big_divides(e, g)) continue;
        const BigInt coef = ramanujan_g(chi, M / g);
        if (coef != 0) f[M * (M - g)] += coef;
    }
    return f;
}

double euler_factor_value(const FieldSetup &setup, const BigInt &tau, const Residue &chi, const PlaceRecord &place,
                          double s, Metric metric) {
    const double p = place.key.norm.get_d();
    double v = 0;
    for (const auto &[e, c] : euler_factor(setup, tau, chi, place, metric)) v += c.get_d() * std::pow(p, -s * e.get_d());
    return v;
}

namespace {

void require_s_covers_exceptional(const FieldSetup &setup, const LocalConstraint &c) {
    for (const auto &k : exceptional_places(setup)) {
        if (!c.contains(k.id)) throw ValidationError("S must contain the exceptional place '" + k.id + "'");
    }
}

double log_value(const FactoredRational &q) {
    double s = 0;
    for (const auto &[b, e] : q.factors()) s += e.get_d() * std::log(b.get_d());
    return s;
}

struct Single {
    double C = 0;
    double err = 0;
    std::vector<BigInt> chis;
};

Single single_constant(const FieldSetup &setup, const LocalConstraint &c, const BigInt &P_max,
                       const InvariantsBundle &bundle, double a, double b, const std::vector<PlaceRecord> &places) {
    Single out;
    if (!xi_divisible_by_tau(c)) return out;
    const BigInt &M = setup.M();
    const Rational target = Rational(bundle.u - 1) * bundle.beta;
    const PsiContext ctx{setup.d(), setup.m(), setup.j(), bundle.u};
    const double res = *setup.zeta_residue();
    const double prefactor =
        1.0 / (std::pow(a, b - 1.0) * std::tgamma(b)) * std::exp(-log_value(xi_disc(M, c)) / a) / M.get_d();
    const Residue sigma = c.sigma(M);
    double s_factor = 1.0;
    for (const auto &[key, v] : c.xi) {
        if (!key.is_archimedean()) s_factor *= 1.0 - 1.0 / key.norm.get_d();
    }
    const double P = P_max.get_d();
    const BigInt a_int = M * (M - M / bundle.u);

    for (BigInt chi = 0; chi < M; ++chi) {
        const Residue rchi(chi, M);
        const ClassFunction psi = class_function_psi(setup.group_ptr(), PsiVariant::Discriminant, c.tau, rchi, ctx);
        if (avg(psi) != target) continue;
        if (!psi.is_constant()) {
            throw OutOfScopeError("psi_{tau,chi} for chi = " + chi.get_str() +
                                  " is not constant on G; its constant needs Artin L-values");
        }
        out.chis.push_back(chi);
        const double psi_v = psi[0].get_d();
        long double prod = std::pow(static_cast<long double>(res * s_factor), static_cast<long double>(psi_v));
        BigInt e2 = 0;
        double mass = 0;
        for (const auto &place : places) {
            const auto f = euler_factor(setup, c.tau, rchi, place);
            const long double p = place.key.norm.get_d();
            long double fv = 0;
            double local_mass = 0;
            for (const auto &[e, coef] : f) {
                fv += coef.get_d() * std::pow(p, -static_cast<long double>(e.get_d()) / a);
                if (e > a_int) {
                    if (e2 == 0 || e < e2) e2 = e;
                    local_mass += std::fabs(coef.get_d());
                }
            }
            mass = std::max(mass, local_mass);
            prod *= fv * std::pow(1.0L - 1.0L / p, static_cast<long double>(psi_v));
        }
        const double phase = std::cos(2.0 * std::numbers::pi * BigInt(chi * sigma.value()).get_d() / M.get_d());
        const double term = prefactor * phase * static_cast<double>(prod);
        out.C += term;
        const double theta = e2 == 0 ? 2.0 : std::min(2.0, e2.get_d() / a);
        const double K = 2.0 * (psi_v * psi_v + std::fabs(psi_v) + 1.0) + 2.0 * mass;
        const double tail = theta > 1.0 ? K * std::pow(P, 1.0 - theta) / (theta - 1.0) : INFINITY;
        out.err += std::fabs(term) * std::expm1(tail);
    }
    return out;
}

std::vector<PlaceRecord> product_places(const FieldSetup &setup, const LocalConstraint &c, const BigInt &P_max) {
    std::vector<PlaceRecord> out;
    for (auto &rec : setup.generic_places_up_to(P_max)) {
        if (!c.contains(rec.key.id)) out.push_back(std::move(rec));
    }
    return out;
}

} // namespace

ConstantReport leading_constant(const FieldSetup &setup, const LocalConstraint &c, const BigInt &P_max,
                                bool sum_completions) {
    validate_constraint(setup, c);
    if (!setup.zeta_residue()) throw ValidationError("the setup has no zeta_residue for its center");
    if (P_max < 2) throw ValidationError("P_max must be at least 2");
    const auto report_exp = exponents_inner(setup);
    const auto bundle = invariants_bundle(setup.group(), setup.j(), setup.m());
    ConstantReport report;
    report.a = report_exp.a;
    report.b = report_exp.b;
    report.stochastic = setup.is_stochastic();
    const double a = report.a.get_d(), b = report.b.get_d();

    std::vector<LocalConstraint> completions;
    if (!sum_completions) {
        require_s_covers_exceptional(setup, c);
        completions.push_back(c);
    } else {
        std::vector<std::pair<PlaceKey, std::vector<Residue>>> free;
        for (const auto &rec : setup.explicit_places()) {
            if (is_exceptional(rec) && !c.contains(rec.key.id)) free.push_back({rec.key, admissible_values(setup, rec, c.tau)});
        }
        std::function<void(std::size_t, LocalConstraint &)> expand = [&](std::size_t i, LocalConstraint &cur) {
            if (i == free.size()) {
                completions.push_back(cur);
                return;
            }
            for (const auto &v : free[i].second) {
                LocalConstraint next = cur;
                next.assign(free[i].first, v);
                expand(i + 1, next);
            }
        };
        LocalConstraint start = c;
        expand(0, start);
    }
    // All completions share S, so they share the product places.
    const auto places = completions.empty() ? std::vector<PlaceRecord>{} : product_places(setup, completions.front(), P_max);
    for (const auto &comp : completions) {
        const Single s = single_constant(setup, comp, P_max, bundle, a, b, places);
        report.C += s.C;
        report.error_bound += s.err;
        for (const auto &chi : s.chis) {
            if (std::find(report.contributing_chi.begin(), report.contributing_chi.end(), chi) ==
                report.contributing_chi.end()) {
                report.contributing_chi.push_back(chi);
            }
        }
        report.completions.push_back(CompletionConstant{comp, s.C});
    }
    std::sort(report.contributing_chi.begin(), report.contributing_chi.end());
    return report;
}

ConstantReport moebius_sieve_constant(const FieldSetup &setup, const LocalConstraint &c, const BigInt &P_max,
                                      bool sum_completions) {
    ConstantReport total;
    bool first = true;
    for (const auto &tau : divisors_of(setup.M())) {
        const int mu = moebius(tau);
        if (mu == 0) continue;
        LocalConstraint ct = c;
        ct.tau = tau;
        const ConstantReport r = leading_constant(setup, ct, P_max, sum_completions);
        if (first) {
            total.a = r.a;
            total.b = r.b;
            total.stochastic = r.stochastic;
            total.contributing_chi = r.contributing_chi;
            first = false;
        }
        total.C += mu * r.C;
        total.error_bound += r.error_bound;
    }
    return total;
}

} // namespace csa
