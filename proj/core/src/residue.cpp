#include "csa/residue.hpp"

#include "csa/errors.hpp"

namespace csa {

Residue::Residue(BigInt value, BigInt modulus) : modulus_(std::move(modulus)) {
    if (modulus_ < 1) {
        throw ValidationError("residue modulus must be >= 1, got " + modulus_.get_str());
    }
    value_ = big_mod(value, modulus_);
}

void Residue::require_same_modulus(const Residue &other) const {
    if (modulus_ != other.modulus_) {
        throw ValidationError("residue modulus mismatch: " + modulus_.get_str() + " vs " +
                              other.modulus_.get_str());
    }
}

Residue Residue::operator+(const Residue &other) const {
    require_same_modulus(other);
    return Residue(value_ + other.value_, modulus_);
}

Residue Residue::operator-(const Residue &other) const {
    require_same_modulus(other);
    return Residue(value_ - other.value_, modulus_);
}

Residue Residue::operator-() const { return Residue(-value_, modulus_); }

Residue &Residue::operator+=(const Residue &other) {
    *this = *this + other;
    return *this;
}

Residue Residue::scaled(const BigInt &k) const { return Residue(value_ * k, modulus_); }

std::strong_ordering operator<=>(const Residue &a, const Residue &b) {
    if (int c = cmp(a.modulus_, b.modulus_); c != 0) return c <=> 0;
    return cmp(a.value_, b.value_) <=> 0;
}

BigInt gcd_with_modulus(const Residue &a) { return big_gcd(a.value(), a.modulus()); }

bool divides_in_cyclic(const Residue &a, const Residue &b) {
    if (a.modulus() != b.modulus()) {
        throw ValidationError("divides_in_cyclic: modulus mismatch");
    }
    return big_divides(gcd_with_modulus(a), b.value());
}

bool divides_in_cyclic(const BigInt &t, const Residue &b) {
    if (t < 1 || !big_divides(t, b.modulus())) {
        throw ValidationError("divides_in_cyclic: " + t.get_str() + " is not a positive divisor of " +
                              b.modulus().get_str());
    }
    return big_divides(t, b.value());
}

BigInt element_order(const Residue &a) { return a.modulus() / gcd_with_modulus(a); }

QZFraction to_qz(const Residue &a) {
    const BigInt g = gcd_with_modulus(a);
    return QZFraction{a.value() / g, a.modulus() / g};
}

std::ostream &operator<<(std::ostream &os, const Residue &r) {
    return os << r.value() << " mod " << r.modulus();
}

std::ostream &operator<<(std::ostream &os, const QZFraction &q) {
    return os << q.numerator << "/" << q.denominator;
}

} // namespace csa
