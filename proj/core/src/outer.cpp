#include "csa/outer.hpp"

#include "csa/errors.hpp"

#include <algorithm>
#include <functional>

namespace csa {

BigInt SplittingFactor::degree() const {
    if (!archimedean) return e * f;
    return arch == ArchFactor::ComplexOverReal ? BigInt(2) : BigInt(1);
}

std::string to_string(const SplittingFactor &f) {
    if (!f.archimedean) return "(" + f.e.get_str() + "," + f.f.get_str() + ")";
    return f.arch == ArchFactor::RealOverReal ? "R" : "C";
}

Residue BaseAlgebra::at(const std::string &id) const {
    for (const auto &[k, v] : kappa) {
        if (k.id == id) return v;
    }
    return Residue(BigInt(0), m);
}

void validate_base_algebra(const BaseAlgebra &K) {
    if (K.m < 1) throw ValidationError("m must be positive");
    Residue sum(BigInt(0), K.m);
    for (const auto &[key, v] : K.kappa) {
        if (v.modulus() != K.m) throw ValidationError("kappa values must be residues modulo m");
        if (key.kind == PlaceKind::Complex && !v.is_zero()) throw ValidationError("K has a nonzero invariant at a complex place");
        if (key.kind == PlaceKind::Real && !v.is_zero() && v.value() * 2 != K.m) {
            throw ValidationError("K has an invariant other than 0, 1/2 at a real place");
        }
        sum += v;
    }
    if (!sum.is_zero()) throw ValidationError("the invariants of K do not sum to zero");
}

namespace {

void check_factor_kind(const PlaceKey &key, const SplittingFactor &f) {
    if (key.kind == PlaceKind::Finite) {
        if (f.archimedean) throw ValidationError("archimedean factor at finite place '" + key.id + "'");
        if (f.e < 1 || f.f < 1) throw ValidationError("e and f must be positive at '" + key.id + "'");
    } else if (key.kind == PlaceKind::Real) {
        if (!f.archimedean || f.arch == ArchFactor::ComplexOverComplex) {
            throw ValidationError("factors over the real place '" + key.id + "' must be R or C");
        }
    } else if (!f.archimedean || f.arch != ArchFactor::ComplexOverComplex) {
        throw ValidationError("factors over the complex place '" + key.id + "' must be C");
    }
}

void validate_etale(const BaseAlgebra &K, const EtaleData &E) {
    validate_base_algebra(K);
    if (E.d < 1) throw ValidationError("[F':F] must be positive");
    for (const auto &ps : E.places) {
        BigInt total = 0;
        for (const auto &f : ps.factors) {
            check_factor_kind(ps.key, f);
            total += f.degree();
        }
        if (total != E.d) throw ValidationError("factor degrees at '" + ps.key.id + "' sum to " + total.get_str() + ", not d");
    }
    for (const auto &[key, v] : K.kappa) {
        if (v.is_zero()) continue;
        const bool listed = std::any_of(E.places.begin(), E.places.end(), [&](const auto &ps) { return ps.key.id == key.id; });
        if (!listed) throw ValidationError("K ramifies at '" + key.id + "' but the etale data omits it");
    }
}

} // namespace

std::vector<TensorInvariant> tensor_invariants(const BaseAlgebra &K, const EtaleData &E) {
    validate_etale(K, E);
    std::vector<TensorInvariant> out;
    for (const auto &ps : E.places) {
        const Residue kappa = K.at(ps.key.id);
        for (std::size_t i = 0; i < ps.factors.size(); ++i) {
            out.push_back(TensorInvariant{ps.key, i, ps.factors[i], kappa.scaled(ps.factors[i].degree())});
        }
    }
    return out;
}

BigInt delta_exponent(const BigInt &m, const BigInt &d, const Residue &kappa, const std::vector<SplittingFactor> &factors) {
    BigInt e = m * d * (m - big_gcd(m, kappa.value()));
    for (const auto &f : factors) e -= m * f.f * (m - big_gcd(m, f.degree() * kappa.value()));
    return e;
}

FactoredRational delta(const BaseAlgebra &K, const EtaleData &E) {
    validate_etale(K, E);
    FactoredRational out;
    for (const auto &ps : E.places) {
        if (ps.key.is_archimedean()) continue;
        const BigInt e = delta_exponent(K.m, E.d, K.at(ps.key.id), ps.factors);
        if (e < 0) throw ValidationError("negative delta exponent at '" + ps.key.id + "'");
        out.multiply_power(ps.key.norm, e);
    }
    return out;
}

OuterSummary outer_summary(const BaseAlgebra &K, const EtaleData &E, const BigInt &disc_FprimeF) {
    if (disc_FprimeF < 1) throw ValidationError("d(F'|F) must be a positive integer");
    OuterSummary s;
    s.invariants = tensor_invariants(K, E);
    s.delta = delta(K, E);
    s.d_L_over_K = FactoredRational::from_integer(disc_FprimeF).pow(K.m * K.m) * s.delta.inverse();
    BigInt g = K.m;
    for (const auto &t : s.invariants) g = big_gcd(g, t.value.value());
    s.is_skew = g == 1;
    return s;
}

std::vector<std::vector<SplittingFactor>> splitting_types(const BigInt &d, PlaceKind kind) {
    if (d < 1) throw ValidationError("degree must be positive");
    std::vector<std::vector<SplittingFactor>> out;
    if (kind == PlaceKind::Complex) {
        out.emplace_back(d.get_ui(), SplittingFactor::infinite(ArchFactor::ComplexOverComplex));
        return out;
    }
    if (kind == PlaceKind::Real) {
        for (BigInt c = 0; 2 * c <= d; ++c) {
            std::vector<SplittingFactor> t(BigInt(d - 2 * c).get_ui(), SplittingFactor::infinite(ArchFactor::RealOverReal));
            for (BigInt i = 0; i < c; ++i) t.push_back(SplittingFactor::infinite(ArchFactor::ComplexOverReal));
            out.push_back(std::move(t));
        }
        return out;
    }
    // Multisets of (e, f) pairs, generated as non-increasing sequences in (degree, e) order.
    std::vector<std::pair<BigInt, BigInt>> pairs;
    for (BigInt k = 1; k <= d; ++k) {
        for (const auto &e : divisors_of(k)) pairs.emplace_back(e, k / e);
    }
    std::vector<SplittingFactor> cur;
    std::function<void(const BigInt &, std::size_t)> rec = [&](const BigInt &left, std::size_t max_idx) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = 0; i <= max_idx && i < pairs.size(); ++i) {
            const BigInt deg = pairs[i].first * pairs[i].second;
            if (deg > left) continue;
            cur.push_back(SplittingFactor::finite(pairs[i].first, pairs[i].second));
            rec(left - deg, i);
            cur.pop_back();
        }
    };
    rec(d, pairs.size() - 1);
    return out;
}

AlgebraDiscData base_algebra_data(const BaseAlgebra &K, const BigInt &center_degree, const BigInt &center_disc) {
    validate_base_algebra(K);
    InvariantProfile p(K.m);
    for (const auto &[key, v] : K.kappa) p.set(key, v.value());
    return algebra_data(p, center_degree, center_disc);
}

AlgebraDiscData tensor_algebra_data(const BaseAlgebra &K, const EtaleData &E, const BigInt &disc_FprimeF,
                                    const BigInt &center_degree, const BigInt &center_disc) {
    InvariantProfile p(K.m);
    for (const auto &t : tensor_invariants(K, E)) {
        PlaceKey key;
        key.id = t.place.id + "/" + std::to_string(t.factor_index + 1);
        if (t.place.is_archimedean()) {
            key.kind = t.factor.arch == ArchFactor::RealOverReal ? PlaceKind::Real : PlaceKind::Complex;
        } else {
            key.kind = PlaceKind::Finite;
            key.norm = big_pow(t.place.norm, t.factor.f.get_ui());
        }
        p.set(key, t.value.value());
    }
    return algebra_data(p, center_degree * E.d, big_pow(center_disc, E.d.get_ui()) * disc_FprimeF);
}

StabilizerReport automorphism_stabilizer(const std::vector<std::string> &labels,
                                         const std::vector<Permutation> &automorphisms,
                                         const std::vector<bool> &fixes_center,
                                         const std::map<std::string, Residue> &invariants, const BigInt &degree) {
    if (fixes_center.size() != automorphisms.size()) throw ValidationError("one center-fixing flag per automorphism");
    for (const auto &l : labels) {
        if (!invariants.count(l)) throw ValidationError("no invariant for place label '" + l + "'");
    }
    StabilizerReport r;
    for (std::size_t i = 0; i < automorphisms.size(); ++i) {
        const auto &s = automorphisms[i];
        if (s.degree() != labels.size()) throw ValidationError("automorphism does not act on exactly the labelled places");
        if (!fixes_center[i]) continue;
        bool keeps = true;
        for (std::size_t v = 0; v < labels.size() && keeps; ++v) {
            keeps = invariants.at(labels[s(static_cast<Permutation::Point>(v))]) == invariants.at(labels[v]);
        }
        if (keeps) r.members.push_back(i);
    }
    r.is_galois = BigInt(static_cast<unsigned long>(automorphisms.size())) == degree && r.members.size() == automorphisms.size();
    return r;
}

} // namespace csa
