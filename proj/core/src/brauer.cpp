#include "csa/brauer.hpp"

#include "csa/errors.hpp"

#include <algorithm>

namespace csa {

FactoredRational FactoredRational::from_integer(const BigInt &n) {
    if (n < 1) throw ValidationError("factored form needs a positive integer, got " + n.get_str());
    FactoredRational out;
    BigInt rest = n;
    for (unsigned long p = 2; p <= 1'000'000 && BigInt(p) * p <= rest; ++p) {
        unsigned long e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            rest /= p;
            ++e;
        }
        if (e) out.multiply_power(BigInt(p), BigInt(e));
    }
    if (rest > 1) out.multiply_power(rest, 1);
    return out;
}

void FactoredRational::multiply_power(const BigInt &base, const BigInt &exponent) {
    if (base < 1) throw ValidationError("factored form needs positive bases");
    if (base == 1 || exponent == 0) return;
    BigInt &e = factors_[base];
    e += exponent;
    if (e == 0) factors_.erase(base);
}

FactoredRational &FactoredRational::operator*=(const FactoredRational &other) {
    for (const auto &[b, e] : other.factors_) multiply_power(b, e);
    return *this;
}

FactoredRational FactoredRational::operator*(const FactoredRational &other) const {
    FactoredRational r = *this;
    r *= other;
    return r;
}

FactoredRational FactoredRational::inverse() const {
    FactoredRational r;
    for (const auto &[b, e] : factors_) r.factors_[b] = -e;
    return r;
}

FactoredRational FactoredRational::pow(const BigInt &k) const {
    FactoredRational r;
    if (k == 0) return r;
    for (const auto &[b, e] : factors_) r.factors_[b] = e * k;
    return r;
}

Rational FactoredRational::value() const {
    BigInt num = 1, den = 1;
    for (const auto &[b, e] : factors_) {
        const BigInt a = abs(e);
        if (!a.fits_ulong_p()) throw CapExceededError("exponent too large to evaluate");
        const BigInt pw = big_pow(b, a.get_ui());
        if (e > 0) {
            num *= pw;
        } else {
            den *= pw;
        }
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

bool FactoredRational::is_integer() const { return value().get_den() == 1; }

BigInt FactoredRational::integer_value() const {
    const Rational q = value();
    if (q.get_den() != 1) throw ValidationError("factored value " + to_string(q) + " is not an integer");
    return q.get_num();
}

std::string to_string(const FactoredRational &q) { return to_string(q.value()); }

InvariantProfile::InvariantProfile(BigInt M) : M_(std::move(M)) {
    if (M_ < 1) throw ValidationError("profile degree must be positive");
}

void InvariantProfile::set(const PlaceKey &place, const BigInt &value) {
    const Residue r(value, M_);
    auto it = std::lower_bound(entries_.begin(), entries_.end(), place,
                               [](const Entry &e, const PlaceKey &k) { return e.first < k; });
    if (it != entries_.end() && it->first.id == place.id) {
        if (r.is_zero()) {
            entries_.erase(it);
        } else {
            it->second = r;
        }
        return;
    }
    for (const auto &e : entries_) {
        if (e.first.id == place.id) throw ValidationError("place id '" + place.id + "' used with two different keys");
    }
    if (!r.is_zero()) entries_.insert(it, Entry{place, r});
}

Residue InvariantProfile::at(const std::string &place_id) const {
    for (const auto &e : entries_) {
        if (e.first.id == place_id) return e.second;
    }
    return Residue(BigInt(0), M_);
}

Residue InvariantProfile::sum() const {
    Residue s(BigInt(0), M_);
    for (const auto &e : entries_) s += e.second;
    return s;
}

std::strong_ordering operator<=>(const InvariantProfile &a, const InvariantProfile &b) {
    if (a.M_ != b.M_) return cmp(a.M_, b.M_) < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    const std::size_t n = std::min(a.entries_.size(), b.entries_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a.entries_[i].first <=> b.entries_[i].first; c != 0) return c;
        if (auto c = a.entries_[i].second <=> b.entries_[i].second; c != 0) return c;
    }
    return a.entries_.size() <=> b.entries_.size();
}

ProfileCheck validate_profile(const InvariantProfile &v) {
    ProfileCheck out;
    for (const auto &[key, value] : v.entries()) {
        if (key.kind == PlaceKind::Complex) {
            out.valid = false;
            out.diagnostics.push_back("nonzero invariant at complex place '" + key.id + "'");
        } else if (key.kind == PlaceKind::Real && value.value() * 2 != v.M()) {
            out.valid = false;
            out.diagnostics.push_back("invariant at real place '" + key.id + "' is neither 0 nor M/2");
        }
    }
    if (!v.sum().is_zero()) {
        out.valid = false;
        out.diagnostics.push_back("invariants sum to " + v.sum().value().get_str() + " mod " + v.M().get_str());
    }
    return out;
}

namespace {

void require_valid(const InvariantProfile &v) {
    const auto check = validate_profile(v);
    if (!check.valid) throw ValidationError("invalid profile: " + check.diagnostics.front());
}

} // namespace

IndexReport index_and_skew(const InvariantProfile &v) {
    require_valid(v);
    BigInt g = v.M();
    for (const auto &e : v.entries()) g = big_gcd(g, e.second.value());
    IndexReport r;
    r.index = v.M() / g;
    r.is_skew = r.index == v.M();
    return r;
}

FactoredRational disc_over_center(const InvariantProfile &v) {
    require_valid(v);
    FactoredRational d;
    for (const auto &[key, value] : v.entries()) {
        if (key.is_archimedean()) continue;
        d.multiply_power(key.norm, v.M() * (v.M() - gcd_with_modulus(value)));
    }
    return d;
}

std::vector<std::pair<PlaceKey, BigInt>> local_indices(const InvariantProfile &v) {
    std::vector<std::pair<PlaceKey, BigInt>> out;
    for (const auto &[key, value] : v.entries()) out.emplace_back(key, element_order(value));
    return out;
}

FactoredRational ram_product(const InvariantProfile &v) {
    FactoredRational r;
    for (const auto &[key, value] : v.entries()) {
        if (!key.is_archimedean()) r.multiply_power(key.norm, 1);
    }
    return r;
}

AlgebraDiscData algebra_data(const InvariantProfile &v, const BigInt &center_degree, const BigInt &center_disc) {
    return AlgebraDiscData{disc_over_center(v), v.M(), center_degree, center_disc};
}

BigInt dimension_over_q(const AlgebraDiscData &a) { return a.degree * a.degree * a.center_degree; }

FactoredRational disc_absolute(const AlgebraDiscData &a) {
    if (a.degree < 1 || a.center_degree < 1 || a.center_disc < 1) {
        throw ValidationError("degrees and center discriminant must be positive");
    }
    FactoredRational d = a.disc_over_center;
    d *= FactoredRational::from_integer(a.center_disc).pow(a.degree * a.degree);
    return d;
}

FactoredRational disc_relative(const AlgebraDiscData &L, const AlgebraDiscData &K) {
    const BigInt dimL = dimension_over_q(L), dimK = dimension_over_q(K);
    if (!big_divides(dimK, dimL)) {
        throw ValidationError("[L:K] = " + dimL.get_str() + "/" + dimK.get_str() + " is not an integer");
    }
    FactoredRational d = disc_absolute(L);
    d *= disc_absolute(K).pow(dimL / dimK).inverse();
    return d;
}

bool fiber_condition_holds(const FieldSetup &setup, const PlaceRecord &place, const Residue &value) {
    const BigInt dm = setup.d() * setup.m();
    const BigInt dj = setup.d() * setup.j();
    for (const auto &f : place.fibers) {
        const BigInt x = f.local_degree * value.value() - dj * f.kappa.value();
        if (!big_divides(dm, x)) return false;
    }
    return true;
}

bool embeds_into(const FieldSetup &setup, const InvariantProfile &v) {
    require_valid(v);
    if (v.M() != setup.M()) throw ValidationError("profile degree differs from M = dmj");
    for (const auto &place : setup.explicit_places()) {
        if (!fiber_condition_holds(setup, place, v.at(place.key.id))) return false;
    }
    for (const auto &[key, value] : v.entries()) {
        if (setup.find_explicit(key.id)) continue;
        if (!fiber_condition_holds(setup, setup.place_record(key), value)) return false;
    }
    return true;
}

} // namespace csa
