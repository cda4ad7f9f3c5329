#include "csa/primes.hpp"

#include "csa/errors.hpp"

#include <algorithm>
#include <cctype>

namespace csa {

BigInt parse_bigint(const std::string &text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    if (i == text.size()) throw ParseError("not an integer: '" + text + "'");
    for (std::size_t k = i; k < text.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
            throw ParseError("not an integer: '" + text + "'");
        }
    }
    BigInt v;
    v.set_str(text[0] == '+' ? text.substr(1) : text, 10);
    return v;
}

Rational parse_rational(const std::string &text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_bigint(text));
    BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    Rational q(parse_bigint(text.substr(0, slash)), den);
    q.canonicalize();
    return q;
}

namespace {

// Prime factorisation by trial division; inputs here are group orders and degrees.
std::vector<std::pair<BigInt, unsigned>> factor_small(BigInt n) {
    if (n < 1) throw ValidationError("factorisation needs a positive integer");
    std::vector<std::pair<BigInt, unsigned>> out;
    for (BigInt p = 2; p * p <= n; ++p) {
        if (big_divides(p, n)) {
            unsigned e = 0;
            while (big_divides(p, n)) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1u);
    return out;
}

} // namespace

std::vector<BigInt> divisors_of(const BigInt &n) {
    std::vector<BigInt> divs{1};
    for (const auto &[p, e] : factor_small(n)) {
        const std::size_t base = divs.size();
        BigInt pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

int moebius(const BigInt &n) {
    int mu = 1;
    for (const auto &[p, e] : factor_small(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

BigInt totient(const BigInt &n) {
    BigInt phi = n;
    for (const auto &[p, e] : factor_small(n)) phi = phi / p * (p - 1);
    return phi;
}

BigInt smallest_prime_factor(const BigInt &n) {
    if (n < 2) throw ValidationError("smallest_prime_factor needs n >= 2");
    return factor_small(n).front().first;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        if (i <= bound / i) {
            for (std::uint64_t k = i * i; k <= bound; k += i) composite[k] = true;
        }
    }
    return out;
}

int kronecker_symbol(const BigInt &a, const BigInt &n) {
    if (n < 1) throw ValidationError("kronecker_symbol needs n >= 1");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

bool is_prime(const BigInt &n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

bool is_fundamental_discriminant(const BigInt &d) {
    if (d == 0 || d == 1) return false;
    const BigInt r4 = big_mod(d, BigInt(4));
    auto squarefree = [](BigInt v) {
        if (v < 0) v = -v;
        for (const auto &[p, e] : factor_small(v)) {
            if (e > 1) return false;
        }
        return true;
    };
    if (r4 == 1) return squarefree(d);
    if (r4 != 0) return false;
    const BigInt q = d / 4;
    const BigInt r = big_mod(q, BigInt(4));
    return (r == 2 || r == 3) && squarefree(q);
}

} // namespace csa
