#include "csa/analytic.hpp"

#include "csa/errors.hpp"

#include <stdexcept>

namespace csa {

namespace {

using Poly = std::vector<BigInt>; // coefficients, lowest degree first

Poly cyclotomic(unsigned long n) {
    static std::map<unsigned long, Poly> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    Poly p(n + 1, BigInt(0));
    p[0] = -1;
    p[n] = 1;
    for (unsigned long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const Poly q = cyclotomic(d);
        // exact division of p by the monic q
        const std::size_t dq = q.size() - 1;
        Poly quot(p.size() - dq, BigInt(0));
        for (std::size_t k = p.size(); k-- > dq;) {
            const BigInt t = p[k];
            quot[k - dq] = t;
            for (std::size_t i = 0; i <= dq; ++i) p[k - dq + i] -= t * q[i];
        }
        p = std::move(quot);
    }
    cache.emplace(n, p);
    return p;
}

// Value of sum_k c_k zeta_M^k as an integer, or nullopt if it is not rational.
std::optional<BigInt> group_ring_integer(Poly c, unsigned long M) {
    const Poly phi = cyclotomic(M);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t k = c.size(); k-- > deg;) {
        const BigInt t = c[k];
        if (t == 0) continue;
        for (std::size_t i = 0; i <= deg; ++i) c[k - deg + i] -= t * phi[i];
    }
    for (std::size_t k = 1; k < std::min(deg, c.size()); ++k) {
        if (c[k] != 0) return std::nullopt;
    }
    return c[0];
}

using Series = std::map<BigInt, BigInt>;

struct Term {
    BigInt value;  // lambda(p)
    BigInt factor; // its metric contribution
};

std::vector<Term> place_terms(const FieldSetup &setup, const BigInt &tau, const PlaceRecord &rec, Metric metric) {
    const BigInt &M = setup.M();
    const BigInt e = eta(setup, tau, rec);
    std::vector<Term> out;
    for (BigInt v = e; v < M; v += e) {
        const BigInt f = metric == Metric::Ram ? rec.key.norm
                                               : big_pow(rec.key.norm, BigInt(M * (M - big_gcd(M, v))).get_ui());
        out.push_back(Term{v, f});
    }
    return out;
}

bool within(const BigInt &q, const std::optional<BigInt> &bound) { return !bound || q <= *bound; }

} // namespace

DirichletPolynomial dirichlet_partial(const FieldSetup &setup, const LocalConstraint &c, const BigInt &prime_cutoff,
                                      SumMethod method, Metric metric, const std::optional<BigInt> &metric_bound) {
    validate_constraint(setup, c);
    if (setup.is_stochastic()) throw CoverageError("the sampled tail is stochastic; exact series refused");
    for (const auto &k : exceptional_places(setup)) {
        if (!c.contains(k.id)) throw ValidationError("S must contain the exceptional place '" + k.id + "'");
    }
    const BigInt &M = setup.M();
    if (!M.fits_ulong_p()) throw CapExceededError("M too large for group-ring arithmetic");
    const unsigned long Mu = M.get_ui();
    DirichletPolynomial out;
    if (!xi_divisible_by_tau(c)) return out;

    const BigInt base = (metric == Metric::Disc ? xi_disc(M, c) : xi_ram(c)).integer_value();
    if (!within(base, metric_bound)) return out;
    std::vector<PlaceRecord> places;
    for (auto &rec : setup.generic_places_up_to(prime_cutoff)) {
        if (!c.contains(rec.key.id)) places.push_back(std::move(rec));
    }
    const unsigned long sigma = c.sigma(M).value().get_ui();

    if (method == SumMethod::Direct) {
        std::vector<Series> states(Mu);
        states[sigma][base] = 1;
        for (const auto &rec : places) {
            const auto terms = place_terms(setup, c.tau, rec, metric);
            std::vector<Series> next = states;
            for (unsigned long s = 0; s < Mu; ++s) {
                for (const auto &[q, n] : states[s]) {
                    for (const auto &t : terms) {
                        const BigInt q2 = q * t.factor;
                        if (!within(q2, metric_bound)) continue;
                        const unsigned long s2 = (s + t.value.get_ui()) % Mu;
                        next[s2][q2] += n;
                    }
                }
            }
            states = std::move(next);
        }
        for (const auto &[q, n] : states[0]) {
            if (n != 0) out.terms[q] = n;
        }
        return out;
    }

    std::map<BigInt, Poly> ring;
    for (unsigned long chi = 0; chi < Mu; ++chi) {
        const Residue rchi(BigInt(chi), M);
        Series P;
        P[base] = 1;
        for (const auto &rec : places) {
            const auto f = euler_factor(setup, c.tau, rchi, rec, metric);
            Series next;
            for (const auto &[q, n] : P) {
                for (const auto &[e, coef] : f) {
                    const BigInt q2 = q * big_pow(rec.key.norm, e.get_ui());
                    if (!within(q2, metric_bound)) continue;
                    next[q2] += n * coef;
                }
            }
            P = std::move(next);
        }
        const unsigned long phase = BigInt(big_mod(BigInt(chi) * sigma, M)).get_ui();
        for (const auto &[q, n] : P) {
            if (n == 0) continue;
            auto &slot = ring[q];
            if (slot.empty()) slot.assign(Mu, BigInt(0));
            slot[phase] += n;
        }
    }
    for (const auto &[q, coeffs] : ring) {
        const auto v = group_ring_integer(coeffs, Mu);
        if (!v) throw std::logic_error("character sum at metric " + q.get_str() + " is not a rational integer");
        if (!big_divides(M, *v)) throw std::logic_error("character sum at metric " + q.get_str() + " is not divisible by M");
        if (*v != 0) out.terms[q] = *v / M;
    }
    return out;
}

} // namespace csa
