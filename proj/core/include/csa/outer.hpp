// csa/outer.hpp: outer extensions L = K (x)_F F' described by splitting types of F'|F.

#pragma once

#include "csa/brauer.hpp"
#include "csa/field_setup.hpp"
#include "csa/permutation.hpp"

#include <map>
#include <string>
#include <vector>

namespace csa {

enum class ArchFactor { RealOverReal, ComplexOverReal, ComplexOverComplex };

/// One field factor E' of F' (x)_F F_v, up to splitting type.
struct SplittingFactor {
    bool archimedean = false;
    BigInt e = 1, f = 1;
    ArchFactor arch = ArchFactor::RealOverReal;

    static SplittingFactor finite(const BigInt &e, const BigInt &f) { return {false, e, f, ArchFactor::RealOverReal}; }
    static SplittingFactor infinite(ArchFactor a) { return {true, 1, 1, a}; }

    /// [E' : F_v]
    BigInt degree() const;
    friend bool operator==(const SplittingFactor &, const SplittingFactor &) = default;
};

std::string to_string(const SplittingFactor &f);

struct PlaceSplitting {
    PlaceKey key;
    std::vector<SplittingFactor> factors;
};

struct EtaleData {
    BigInt d = 1;
    std::vector<PlaceSplitting> places;
};

/// The central simple F-algebra K of degree m through its invariants kappa_v / m on a set of places.
struct BaseAlgebra {
    BigInt m = 1;
    std::vector<std::pair<PlaceKey, Residue>> kappa;

    Residue at(const std::string &id) const;
};

/// Checks the archimedean rules and the sum rule for K.
void validate_base_algebra(const BaseAlgebra &K);

struct TensorInvariant {
    PlaceKey place;
    std::size_t factor_index = 0;
    SplittingFactor factor;
    Residue value; // [E':F_v] kappa_v mod m
};

std::vector<TensorInvariant> tensor_invariants(const BaseAlgebra &K, const EtaleData &E);

/// m d (m - gcd(m, kappa)) - m sum_{E'} f(E') (m - gcd(m, [E':F_v] kappa)).
BigInt delta_exponent(const BigInt &m, const BigInt &d, const Residue &kappa, const std::vector<SplittingFactor> &factors);

/// prod over finite places of S of ||p||^{delta_p}. Throws ValidationError on a negative exponent.
FactoredRational delta(const BaseAlgebra &K, const EtaleData &E);

struct OuterSummary {
    FactoredRational d_L_over_K;
    FactoredRational delta;
    bool is_skew = false;
    std::vector<TensorInvariant> invariants;
};

/// d(L|K) = delta^{-1} d(F'|F)^{m^2}; skew iff the base-changed invariants generate Z/mZ.
OuterSummary outer_summary(const BaseAlgebra &K, const EtaleData &E, const BigInt &disc_FprimeF);

/// Every splitting type of total degree d over a place of the given kind.
std::vector<std::vector<SplittingFactor>> splitting_types(const BigInt &d, PlaceKind kind);

/// K as an algebra over its center F, for disc_relative.
AlgebraDiscData base_algebra_data(const BaseAlgebra &K, const BigInt &center_degree, const BigInt &center_disc);

/// L = K (x)_F F' over its center F', built from the tensor invariants. Finite places of F'
/// above p get norm ||p||^f; D_{F'} = D_F^d d(F'|F).
AlgebraDiscData tensor_algebra_data(const BaseAlgebra &K, const EtaleData &E, const BigInt &disc_FprimeF,
                                    const BigInt &center_degree, const BigInt &center_disc);

struct StabilizerReport {
    std::vector<std::size_t> members; // indices into the automorphism list
    bool is_galois = false;
};

/// H = { sigma : fixes Z and inv(L_{sigma(v)}) = inv(L_v) for every labelled place v }.
/// Galois test: |Aut| = [F':F] and H = Aut.
StabilizerReport automorphism_stabilizer(const std::vector<std::string> &labels,
                                         const std::vector<Permutation> &automorphisms,
                                         const std::vector<bool> &fixes_center,
                                         const std::map<std::string, Residue> &invariants, const BigInt &degree);

} // namespace csa
