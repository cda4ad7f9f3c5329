// csa/analytic.hpp: exponents, Euler factors, truncated Dirichlet series and leading constants.

#pragma once

#include "csa/bigint.hpp"
#include "csa/census.hpp"
#include "csa/field_setup.hpp"
#include "csa/ramanujan.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace csa {

struct ExponentReport {
    Rational a, b, b_star;
    BigInt u, U, M;
    Rational beta, avg_cycgcd;
};

/// a = M^2 (1 - 1/u), b = (u - 1) beta, b* = j avg_cycgcd - 1. Requires n = dj^2 >= 2.
ExponentReport exponents_inner(const FieldSetup &setup);

struct OuterExponents {
    Rational a, b;
    BigInt u, r;
};

/// Abelian G given by its cyclic factor orders: u = least prime of |G|, r = elements of order u.
OuterExponents exponents_outer_abelian(const std::vector<BigInt> &cyclic_orders, const BigInt &m,
                                       const BigInt &deg_zeta_u);

/// Degree n in {2, 3, 4, 5}: N(X) ~ C X^{1/m^2}. Returns the power 1/m^2.
Rational exponent_outer_degree(long n, const BigInt &m);

/// Polynomial in T = ||p||^{-s}: exponent -> integer coefficient (constant term at 0).
using EulerPolynomial = std::map<BigInt, BigInt>;

/// Disc: 1 + sum over eta | g | M, g < M of g_chi(M/g) T^{M(M-g)}. Ram: 1 + psi*(Frob p) T.
EulerPolynomial euler_factor(const FieldSetup &setup, const BigInt &tau, const Residue &chi, const PlaceRecord &place,
                             Metric metric = Metric::Disc);

/// The same factor evaluated at a real s.
double euler_factor_value(const FieldSetup &setup, const BigInt &tau, const Residue &chi, const PlaceRecord &place,
                          double s, Metric metric = Metric::Disc);

/// Finite Dirichlet polynomial: metric value q -> number of profiles with that metric.
struct DirichletPolynomial {
    std::map<BigInt, BigInt> terms;

    friend bool operator==(const DirichletPolynomial &, const DirichletPolynomial &) = default;
};

enum class SumMethod { Direct, Charsum };

/// The series restricted to profiles supported (off S) on primes <= prime_cutoff, optionally
/// truncated to metric <= metric_bound. S must contain every exceptional place.
DirichletPolynomial dirichlet_partial(const FieldSetup &setup, const LocalConstraint &c, const BigInt &prime_cutoff,
                                      SumMethod method, Metric metric = Metric::Disc,
                                      const std::optional<BigInt> &metric_bound = std::nullopt);

struct CompletionConstant {
    LocalConstraint constraint;
    double C = 0;
};

struct ConstantReport {
    double C = 0;
    double error_bound = 0;
    Rational a, b;
    std::vector<BigInt> contributing_chi;
    std::vector<CompletionConstant> completions;
    bool stochastic = false;
};

/// C_{S,xi,tau} (tau taken from the constraint) with the Euler product truncated at P_max.
/// With sum_completions, S may omit exceptional places; the constants of every admissible
/// completion of xi on them are summed. Throws OutOfScopeError if a contributing psi is not
/// constant on G.
ConstantReport leading_constant(const FieldSetup &setup, const LocalConstraint &c, const BigInt &P_max,
                                bool sum_completions = false);

/// C' = sum over tau | M of mu(tau) C_{S,xi,tau}.
ConstantReport moebius_sieve_constant(const FieldSetup &setup, const LocalConstraint &c, const BigInt &P_max,
                                      bool sum_completions = false);

struct FitReport {
    double alpha_hat = 0;
    double b_hat = 0;
    std::size_t points = 0;
};

/// Least squares for log N = alpha log X + (b - 1) log log X + c over points with N > 0, X >= 3.
FitReport fit_exponents(const std::vector<std::pair<double, double>> &points);
FitReport fit_exponents(const std::vector<CountRow> &table, bool skew = false);

} // namespace csa
