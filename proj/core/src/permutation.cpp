#include "csa/permutation.hpp"

#include "csa/errors.hpp"
#include "csa/ramanujan.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace csa {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
        if (p >= images_.size() || seen[p]) {
            throw ValidationError("permutation image list is not a bijection");
        }
        seen[p] = true;
    }
}

Permutation Permutation::identity(std::size_t degree) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    return Permutation(std::move(images));
}

Permutation Permutation::from_one_based(const std::vector<long> &images) {
    std::vector<Point> zero_based;
    zero_based.reserve(images.size());
    for (long v : images) {
        if (v < 1 || static_cast<std::size_t>(v) > images.size()) {
            throw ValidationError("permutation image " + std::to_string(v) + " out of range 1.." +
                                  std::to_string(images.size()));
        }
        zero_based.push_back(static_cast<Point>(v - 1));
    }
    return Permutation(std::move(zero_based));
}

Permutation Permutation::from_cycles(std::size_t degree, const std::vector<std::vector<long>> &cycles) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    std::vector<bool> used(degree, false);
    for (const auto &cycle : cycles) {
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            const long a = cycle[k];
            const long b = cycle[(k + 1) % cycle.size()];
            if (a < 1 || b < 1 || static_cast<std::size_t>(a) > degree ||
                static_cast<std::size_t>(b) > degree) {
                throw ValidationError("cycle entry out of range for degree " + std::to_string(degree));
            }
            if (used[a - 1]) throw ValidationError("cycles are not disjoint");
            used[a - 1] = true;
            images[a - 1] = static_cast<Point>(b - 1);
        }
    }
    return Permutation(std::move(images));
}

Permutation Permutation::parse_cycles(std::size_t degree, const std::string &text) {
    std::vector<std::vector<long>> cycles;
    std::vector<long> current;
    bool open = false;
    std::string number;
    auto flush_number = [&] {
        if (!number.empty()) {
            current.push_back(std::stol(number));
            number.clear();
        }
    };
    for (char ch : text) {
        if (ch == '(') {
            if (open) throw ParseError("nested '(' in cycle notation: " + text);
            open = true;
        } else if (ch == ')') {
            if (!open) throw ParseError("unbalanced ')' in cycle notation: " + text);
            flush_number();
            if (!current.empty()) cycles.push_back(current);
            current.clear();
            open = false;
        } else if (ch >= '0' && ch <= '9') {
            if (!open) throw ParseError("digit outside a cycle: " + text);
            number.push_back(ch);
        } else if (ch == ' ' || ch == ',') {
            flush_number();
        } else {
            throw ParseError(std::string("unexpected character '") + ch + "' in cycle notation");
        }
    }
    if (open) throw ParseError("unterminated cycle: " + text);
    return from_cycles(degree, cycles);
}

Permutation Permutation::operator*(const Permutation &other) const {
    if (degree() != other.degree()) throw ValidationError("composing permutations of different degree");
    std::vector<Point> images(degree());
    for (std::size_t i = 0; i < degree(); ++i) images[i] = images_[other.images_[i]];
    return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
    std::vector<Point> images(degree());
    for (std::size_t i = 0; i < degree(); ++i) images[images_[i]] = static_cast<Point>(i);
    return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i] != i) return false;
    }
    return true;
}

std::vector<std::size_t> Permutation::cycle_type() const {
    std::vector<std::size_t> lengths;
    std::vector<bool> seen(degree(), false);
    for (std::size_t start = 0; start < degree(); ++start) {
        if (seen[start]) continue;
        std::size_t len = 0;
        for (Point i = static_cast<Point>(start); !seen[i]; i = images_[i]) {
            seen[i] = true;
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.rbegin(), lengths.rend());
    return lengths;
}

std::size_t Permutation::order() const {
    std::size_t o = 1;
    for (std::size_t len : cycle_type()) o = std::lcm(o, len);
    return o;
}

std::string Permutation::to_cycle_string() const {
    std::ostringstream os;
    std::vector<bool> seen(degree(), false);
    bool any = false;
    for (std::size_t start = 0; start < degree(); ++start) {
        if (seen[start] || images_[start] == start) continue;
        os << '(';
        bool first = true;
        for (Point i = static_cast<Point>(start); !seen[i]; i = images_[i]) {
            seen[i] = true;
            if (!first) os << ' ';
            os << (i + 1);
            first = false;
        }
        os << ')';
        any = true;
    }
    return any ? os.str() : "()";
}

std::vector<long> Permutation::to_one_based() const {
    std::vector<long> out;
    out.reserve(degree());
    for (Point p : images_) out.push_back(static_cast<long>(p) + 1);
    return out;
}

std::size_t PermutationHash::operator()(const Permutation &p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : p.images()) {
        h ^= v;
        h *= 1099511628211ULL;
    }
    return h;
}

std::size_t cycgcd(const Permutation &g) {
    std::size_t acc = 0;
    for (std::size_t len : g.cycle_type()) acc = std::gcd(acc, len);
    return acc == 0 ? 1 : acc;
}

std::size_t GroupTable::class_of(const Permutation &g) const {
    auto it = index_.find(g);
    if (it == index_.end()) throw ValidationError("permutation " + g.to_cycle_string() + " is not in the group");
    return class_of_[it->second];
}

GroupTable group_closure(const std::vector<Permutation> &generators, std::size_t degree,
                         std::size_t order_cap) {
    if (degree == 0) throw ValidationError("group degree must be >= 1");
    for (const auto &g : generators) {
        if (g.degree() != degree) {
            throw ValidationError("generator " + g.to_cycle_string() + " has degree " +
                                  std::to_string(g.degree()) + ", expected " + std::to_string(degree));
        }
    }
    GroupTable table;
    table.degree_ = degree;
    table.generators_ = generators;

    auto add = [&](Permutation p) {
        if (table.elements_.size() >= order_cap) {
            throw CapExceededError("group order exceeds cap " + std::to_string(order_cap));
        }
        table.index_.emplace(p, table.elements_.size());
        table.elements_.push_back(std::move(p));
    };
    add(Permutation::identity(degree));
    for (std::size_t head = 0; head < table.elements_.size(); ++head) {
        for (const auto &s : generators) {
            Permutation next = s * table.elements_[head];
            if (!table.index_.count(next)) add(std::move(next));
        }
    }

    std::vector<Permutation> inverses;
    inverses.reserve(generators.size());
    for (const auto &s : generators) inverses.push_back(s.inverse());

    constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
    table.class_of_.assign(table.elements_.size(), unassigned);
    for (std::size_t e = 0; e < table.elements_.size(); ++e) {
        if (table.class_of_[e] != unassigned) continue;
        const std::size_t cls = table.classes_.size();
        ConjugacyClass cc{e, {e}};
        table.class_of_[e] = cls;
        for (std::size_t head = 0; head < cc.members.size(); ++head) {
            const Permutation &x = table.elements_[cc.members[head]];
            for (std::size_t k = 0; k < generators.size(); ++k) {
                const std::size_t y = table.index_.at(generators[k] * x * inverses[k]);
                if (table.class_of_[y] == unassigned) {
                    table.class_of_[y] = cls;
                    cc.members.push_back(y);
                }
            }
        }
        std::sort(cc.members.begin(), cc.members.end());
        table.class_cycgcd_.push_back(cycgcd(table.elements_[e]));
        table.classes_.push_back(std::move(cc));
    }

    std::vector<bool> reached(degree, false);
    std::deque<std::size_t> queue{0};
    reached[0] = true;
    std::size_t count = 1;
    while (!queue.empty()) {
        const std::size_t x = queue.front();
        queue.pop_front();
        for (const auto &s : generators) {
            const std::size_t y = s(static_cast<Permutation::Point>(x));
            if (!reached[y]) {
                reached[y] = true;
                ++count;
                queue.push_back(y);
            }
        }
    }
    table.transitive_ = count == degree;
    return table;
}

InvariantsBundle invariants_bundle(const GroupTable &group, const BigInt &j, const BigInt &m) {
    if (!group.is_transitive()) throw ValidationError("invariants need a transitive group");
    if (j < 1 || m < 1) throw ValidationError("j and m must be positive");
    BigInt U = 1;
    BigInt cyc_sum = 0;
    for (std::size_t c = 0; c < group.classes().size(); ++c) {
        const BigInt cyc(static_cast<unsigned long>(group.class_cycgcd(c)));
        U = big_lcm(U, cyc);
        cyc_sum += cyc * static_cast<unsigned long>(group.class_size(c));
    }
    const BigInt Uj = U * j;
    if (Uj < 2) throw ValidationError("U*j = 1: the trivial extension (d = j = 1) is excluded");
    InvariantsBundle out;
    out.U = U;
    out.u = smallest_prime_factor(Uj);
    const BigInt order(static_cast<unsigned long>(group.order()));
    BigInt hits = 0;
    for (std::size_t c = 0; c < group.classes().size(); ++c) {
        const BigInt cyc(static_cast<unsigned long>(group.class_cycgcd(c)));
        if (big_divides(out.u, j * cyc)) hits += static_cast<unsigned long>(group.class_size(c));
    }
    out.beta = Rational(hits, order);
    out.beta.canonicalize();
    out.avg_cycgcd = Rational(cyc_sum, order);
    out.avg_cycgcd.canonicalize();
    return out;
}

ClassFunction::ClassFunction(std::shared_ptr<const GroupTable> group, std::vector<Rational> values)
    : group_(std::move(group)), values_(std::move(values)) {
    if (!group_) throw ValidationError("class function needs a group");
    if (values_.size() != group_->classes().size()) {
        throw ValidationError("class function needs exactly one value per conjugacy class");
    }
}

bool ClassFunction::is_constant() const {
    return std::all_of(values_.begin(), values_.end(), [&](const Rational &v) { return v == values_.front(); });
}

ClassFunction class_function_psi(std::shared_ptr<const GroupTable> group, PsiVariant variant,
                                 const BigInt &tau, const Residue &chi, const PsiContext &ctx) {
    const BigInt M = ctx.M();
    if (tau < 1 || !big_divides(tau, M)) {
        throw ValidationError("tau = " + tau.get_str() + " does not divide M = " + M.get_str());
    }
    if (chi.modulus() != M) throw ValidationError("chi must be a residue modulo M");
    if (group->degree() != ctx.d) throw ValidationError("group degree differs from d");
    const BigInt dm = ctx.d * ctx.m;
    std::vector<Rational> values;
    values.reserve(group->classes().size());
    const BigInt g_u = variant == PsiVariant::Discriminant ? ramanujan_g(chi, ctx.u) : BigInt(0);
    for (std::size_t c = 0; c < group->classes().size(); ++c) {
        const BigInt cyc(static_cast<unsigned long>(group->class_cycgcd(c)));
        if (variant == PsiVariant::Discriminant) {
            const BigInt eta = big_lcm(dm / cyc, tau);
            values.emplace_back(big_divides(eta, M / ctx.u) ? g_u : BigInt(0));
        } else {
            const BigInt c_val = big_gcd(ctx.j * cyc, M / tau);
            values.emplace_back(big_divides(c_val, chi.value()) ? BigInt(c_val - 1) : BigInt(-1));
        }
    }
    return ClassFunction(std::move(group), std::move(values));
}

Rational avg(const ClassFunction &psi) {
    Rational total = 0;
    const auto &g = psi.group();
    for (std::size_t c = 0; c < g.classes().size(); ++c) {
        total += psi[c] * Rational(static_cast<unsigned long>(g.class_size(c)));
    }
    total /= Rational(static_cast<unsigned long>(g.order()));
    total.canonicalize();
    return total;
}

BigInt ramanujan_g(const Residue &chi, const BigInt &q) {
    if (q < 1 || !big_divides(q, chi.modulus())) {
        throw ValidationError("ramanujan_g: q = " + q.get_str() + " does not divide " + chi.modulus().get_str());
    }
    const BigInt h = big_gcd(chi.value(), q);
    const BigInt r = q / h;
    return BigInt(moebius(r)) * (totient(q) / totient(r));
}

} // namespace csa
