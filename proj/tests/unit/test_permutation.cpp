#include "doctest.h"

#include "csa/csa.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using csa::BigInt;
using csa::Permutation;
using csa::Rational;
using csa::Residue;

namespace {

std::vector<std::size_t> sorted_class_sizes(const csa::GroupTable &g) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < g.classes().size(); ++c) out.push_back(g.class_size(c));
    std::sort(out.begin(), out.end());
    return out;
}

std::shared_ptr<const csa::GroupTable> shared(csa::GroupTable g) {
    return std::make_shared<const csa::GroupTable>(std::move(g));
}

bool is_power_of(std::size_t n, std::size_t p) {
    while (n % p == 0) n /= p;
    return n == 1;
}

} // namespace

TEST_CASE("cycgcd") {
    CHECK(csa::cycgcd(Permutation::identity(6)) == 1);
    CHECK(csa::cycgcd(Permutation::parse_cycles(6, "(1 3 5)(2 4 6)")) == 3);
    CHECK(csa::cycgcd(Permutation::parse_cycles(6, "(1 4)(2 5)")) == 1);
    CHECK(csa::cycgcd(Permutation::parse_cycles(4, "(1 2)(3 4)")) == 2);
}

TEST_CASE("permutation parsing and composition") {
    const auto a = Permutation::parse_cycles(3, "(1 2 3)");
    CHECK(a.to_cycle_string() == "(1 2 3)");
    CHECK(a.order() == 3);
    CHECK((a * a * a).is_identity());
    CHECK(a.inverse() * a == Permutation::identity(3));
    CHECK(Permutation::parse_cycles(3, "()").is_identity());
    CHECK(Permutation::from_one_based({2, 3, 1}) == a);
    CHECK_THROWS_AS(Permutation::parse_cycles(3, "(1 4)"), csa::ValidationError);
    CHECK_THROWS_AS(Permutation::parse_cycles(3, "(1 2"), csa::ParseError);
    CHECK_THROWS_AS(Permutation::from_one_based({1, 1}), csa::ValidationError);
}

TEST_CASE("group_closure") {
    const auto s2 = csa::group_closure({Permutation::parse_cycles(2, "(1 2)")}, 2);
    CHECK(s2.order() == 2);
    CHECK(s2.classes().size() == 2);
    CHECK(s2.is_transitive());

    const auto a4 = csa::group_closure(fixture::sextic_generators(), 6);
    CHECK(a4.order() == 12);
    CHECK(sorted_class_sizes(a4) == std::vector<std::size_t>{1, 3, 4, 4});
    CHECK(a4.is_transitive());

    CHECK_FALSE(csa::group_closure({Permutation::parse_cycles(3, "(1 2)")}, 3).is_transitive());
    CHECK(csa::group_closure({}, 1).order() == 1);
    CHECK_THROWS_AS(csa::group_closure({Permutation::identity(2), Permutation::identity(3)}, 2),
                    csa::ValidationError);
    CHECK_THROWS_AS(csa::group_closure({Permutation::parse_cycles(5, "(1 2 3 4 5)"),
                                        Permutation::parse_cycles(5, "(1 2)")},
                                       5, 50),
                    csa::CapExceededError);
}

TEST_CASE("invariants_bundle") {
    const auto s2 = csa::group_closure({Permutation::parse_cycles(2, "(1 2)")}, 2);
    auto b = csa::invariants_bundle(s2, 1, 1);
    CHECK(b.U == 2);
    CHECK(b.u == 2);
    CHECK(b.beta == Rational(1, 2));

    const auto a4 = csa::group_closure(fixture::sextic_generators(), 6);
    b = csa::invariants_bundle(a4, 1, 1);
    CHECK(b.U == 3);
    CHECK(b.u == 3);
    CHECK(b.beta == Rational(2, 3));

    const auto trivial = csa::group_closure({}, 1);
    b = csa::invariants_bundle(trivial, 2, 1);
    CHECK(b.U == 1);
    CHECK(b.u == 2);
    CHECK(b.beta == 1);
    CHECK_THROWS_AS(csa::invariants_bundle(trivial, 1, 1), csa::ValidationError);
}

TEST_CASE("class_function_psi and avg") {
    auto trivial = shared(csa::group_closure({}, 1));
    const csa::PsiContext ctx{1, 1, 2, 2};
    const auto disc = [&](long tau, long chi) {
        return csa::class_function_psi(trivial, csa::PsiVariant::Discriminant, tau, Residue(chi, 2), ctx);
    };
    CHECK(disc(1, 0).values() == std::vector<Rational>{1});
    CHECK(disc(2, 0).values() == std::vector<Rational>{0});
    const auto ram = csa::class_function_psi(trivial, csa::PsiVariant::Ramified, 1, Residue(0, 2), ctx);
    CHECK(ram.values() == std::vector<Rational>{1});
    CHECK(csa::avg(ram) == 1);
    CHECK(ram.is_constant());
    CHECK_THROWS_AS(disc(3, 0), csa::ValidationError);

    auto s2 = shared(csa::group_closure({Permutation::parse_cycles(2, "(1 2)")}, 2));
    const csa::PsiContext c2{2, 1, 1, 2};
    const auto p0 = csa::class_function_psi(s2, csa::PsiVariant::Discriminant, 1, Residue(0, 2), c2);
    const auto p1 = csa::class_function_psi(s2, csa::PsiVariant::Discriminant, 1, Residue(1, 2), c2);
    CHECK(csa::avg(p0) == Rational(1, 2));
    CHECK(csa::avg(p1) == Rational(-1, 2));
    CHECK_FALSE(p0.is_constant());
}

TEST_CASE("random transitive groups") {
    std::mt19937_64 rng(20261018);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t d = 2 + rng() % 6;
        const auto g = oracle::random_transitive_group(d, rng);
        auto gp = shared(g);
        CAPTURE(d);
        CAPTURE(g.order());

        std::size_t U = 1;
        for (std::size_t i = 0; i < g.order(); ++i) {
            const auto &x = g.elements()[i];
            const std::size_t c = csa::cycgcd(x);
            CHECK(c == oracle::cycgcd_by_orbits(x));
            CHECK(d % c == 0);
            CHECK(c == g.class_cycgcd(g.class_of_element(i)));
            U = std::lcm(U, c);
        }
        CHECK(U >= 2);
        for (std::size_t p = 2; p <= 7; ++p) {
            if (csa::is_prime(BigInt(p)) && is_power_of(d, p)) CHECK(is_power_of(U, p));
        }

        const long j = 1 + static_cast<long>(rng() % 3);
        const long m = 1 + static_cast<long>(rng() % 3);
        const auto bundle = csa::invariants_bundle(g, j, m);
        CHECK(bundle.U == U);
        const BigInt M = BigInt(d) * m * j;
        const csa::PsiContext ctx{BigInt(d), m, j, bundle.u};
        const Rational top = (Rational(bundle.u) - 1) * bundle.beta;
        for (long chi = 0; chi < M; ++chi) {
            for (const auto &tau : csa::divisors_of(M)) {
                const auto psi =
                    csa::class_function_psi(gp, csa::PsiVariant::Discriminant, tau, Residue(BigInt(chi), M), ctx);
                CHECK(csa::avg(psi) <= top);
                if (tau == 1) {
                    CHECK(csa::avg(psi) == (csa::big_divides(bundle.u, BigInt(chi)) ? top : Rational(-bundle.beta)));
                }
            }
        }
        const auto star = csa::class_function_psi(gp, csa::PsiVariant::Ramified, 1, Residue(BigInt(0), M), ctx);
        CHECK(csa::avg(star) == Rational(j) * bundle.avg_cycgcd - 1);
    }
}

TEST_CASE("regular groups") {
    // cyclic groups and the Klein four group in its regular action
    std::vector<csa::GroupTable> groups;
    for (std::size_t d = 2; d <= 8; ++d) {
        std::vector<std::vector<long>> cyc(1);
        for (std::size_t i = 1; i <= d; ++i) cyc[0].push_back(static_cast<long>(i));
        groups.push_back(csa::group_closure({Permutation::from_cycles(d, cyc)}, d));
    }
    groups.push_back(csa::group_closure(
        {Permutation::parse_cycles(4, "(1 2)(3 4)"), Permutation::parse_cycles(4, "(1 3)(2 4)")}, 4));
    for (const auto &g : groups) {
        REQUIRE(g.order() == g.degree());
        std::size_t exponent = 1;
        for (const auto &x : g.elements()) {
            CHECK(csa::cycgcd(x) == x.order());
            exponent = std::lcm(exponent, x.order());
        }
        CHECK(csa::invariants_bundle(g, 1, 1).U == exponent);
    }
}
