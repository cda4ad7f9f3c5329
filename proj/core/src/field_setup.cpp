#include "csa/field_setup.hpp"

#include "csa/errors.hpp"
#include "csa/primes.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace csa {

std::string to_string(PlaceKind kind) {
    switch (kind) {
    case PlaceKind::Finite: return "finite";
    case PlaceKind::Real: return "real";
    case PlaceKind::Complex: return "complex";
    }
    return "?";
}

PlaceKind parse_place_kind(const std::string &text) {
    if (text == "finite") return PlaceKind::Finite;
    if (text == "real") return PlaceKind::Real;
    if (text == "complex") return PlaceKind::Complex;
    throw ParseError("unknown place kind '" + text + "'");
}

std::string to_string(TailKind kind) {
    switch (kind) {
    case TailKind::Rational: return "rational";
    case TailKind::Quadratic: return "quadratic";
    case TailKind::Listed: return "listed";
    case TailKind::Sampled: return "sampled";
    }
    return "?";
}

std::strong_ordering operator<=>(const PlaceKey &a, const PlaceKey &b) {
    const bool aa = a.is_archimedean(), ba = b.is_archimedean();
    if (aa != ba) return aa ? std::strong_ordering::greater : std::strong_ordering::less;
    if (!aa) {
        const int c = cmp(a.norm, b.norm);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.id <=> b.id;
}

PlaceKey finite_place(const BigInt &norm, std::string id) {
    if (id.empty()) id = norm.get_str();
    return PlaceKey{std::move(id), PlaceKind::Finite, norm};
}

PlaceKey real_place(std::string id) { return PlaceKey{std::move(id), PlaceKind::Real, 0}; }

PlaceKey complex_place(std::string id) { return PlaceKey{std::move(id), PlaceKind::Complex, 0}; }

bool PlaceRecord::has_nonzero_kappa() const {
    return std::any_of(fibers.begin(), fibers.end(), [](const FiberRecord &f) { return !f.kappa.is_zero(); });
}

bool is_exceptional(const PlaceRecord &record) {
    return record.key.is_archimedean() || record.ramified_in_F || record.has_nonzero_kappa();
}

const PlaceRecord *FieldSetup::find_explicit(const std::string &id) const {
    for (const auto &p : places_) {
        if (p.key.id == id) return &p;
    }
    return nullptr;
}

namespace {

std::vector<FiberRecord> fibers_from_cycle_type(const std::vector<std::size_t> &type, const BigInt &m) {
    std::vector<FiberRecord> out;
    for (std::size_t len : type) out.push_back(FiberRecord{BigInt(static_cast<unsigned long>(len)), Residue(BigInt(0), m)});
    return out;
}

std::vector<BigInt> sorted_degrees(const std::vector<FiberRecord> &fibers) {
    std::vector<BigInt> out;
    for (const auto &f : fibers) out.push_back(f.local_degree);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::vector<BigInt> sorted_degrees(const std::vector<std::size_t> &type) {
    std::vector<BigInt> out;
    for (auto t : type) out.emplace_back(static_cast<unsigned long>(t));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::size_t transposition_class(const GroupTable &g) {
    for (std::size_t c = 0; c < g.classes().size(); ++c) {
        if (!g.representative(c).is_identity()) return c;
    }
    throw ValidationError("quadratic setup needs a group of order 2");
}

inline constexpr std::uint64_t kSieveCap = 2'000'000'000ULL;

} // namespace

PlaceRecord FieldSetup::tail_record(const BigInt &p) const {
    if (!center_is_rational()) throw CoverageError("place of norm " + p.get_str() + " is not listed");
    if (!is_prime(p)) throw ValidationError(p.get_str() + " is not a prime");
    PlaceRecord rec;
    rec.key = finite_place(p);
    std::size_t cls = 0;
    switch (tail_.kind) {
    case TailKind::Rational:
        cls = group_->identity_class();
        break;
    case TailKind::Quadratic: {
        const int k = kronecker_symbol(tail_.discriminant, p);
        if (k == 0) throw ValidationError("prime " + p.get_str() + " ramifies in F");
        cls = k == 1 ? group_->identity_class() : transposition_class(*group_);
        break;
    }
    case TailKind::Sampled: {
        const std::uint64_t pl = p.get_ui();
        const BigInt hi_big = p >> 64;
        std::seed_seq seq{static_cast<std::uint32_t>(tail_.seed), static_cast<std::uint32_t>(tail_.seed >> 32),
                          static_cast<std::uint32_t>(pl), static_cast<std::uint32_t>(pl >> 32),
                          static_cast<std::uint32_t>(hi_big.get_ui())};
        std::mt19937_64 gen(seq);
        cls = group_->class_of_element(static_cast<std::size_t>(gen() % group_->order()));
        break;
    }
    case TailKind::Listed:
        break;
    }
    rec.frobenius = cls;
    rec.fibers = fibers_from_cycle_type(group_->representative(cls).cycle_type(), m_);
    return rec;
}

PlaceRecord FieldSetup::place_record(const PlaceKey &key) const {
    if (const auto *p = find_explicit(key.id)) return *p;
    if (key.kind == PlaceKind::Finite && center_is_rational()) {
        BigInt norm = key.norm;
        if (norm == 0) norm = parse_bigint(key.id);
        if (norm.get_str() != key.id) throw ValidationError("finite place id '" + key.id + "' must be its norm");
        return tail_record(norm);
    }
    throw ValidationError("unknown place '" + key.id + "'");
}

std::optional<BigInt> FieldSetup::coverage_bound() const {
    if (tail_.kind == TailKind::Listed) return tail_.bound;
    return std::nullopt;
}

std::vector<PlaceRecord> FieldSetup::tail_places_up_to(const BigInt &bound) const {
    std::vector<PlaceRecord> out;
    if (bound < 2) return out;
    if (tail_.kind == TailKind::Listed) {
        if (bound > tail_.bound) {
            throw CoverageError("places up to norm " + bound.get_str() + " requested but only norms <= " +
                                tail_.bound.get_str() + " are listed");
        }
        return out;
    }
    if (!fits_u64(bound) || to_u64(bound) > kSieveCap) {
        throw CapExceededError("prime bound " + bound.get_str() + " exceeds the sieve cap");
    }
    std::set<BigInt> listed;
    for (const auto &p : places_) {
        if (!p.key.is_archimedean()) listed.insert(p.key.norm);
    }
    for (std::uint64_t p : primes_up_to(to_u64(bound))) {
        const BigInt bp(static_cast<unsigned long>(p));
        if (listed.count(bp)) continue;
        out.push_back(tail_record(bp));
    }
    return out;
}

std::vector<PlaceRecord> FieldSetup::generic_places_up_to(const BigInt &bound) const {
    std::vector<PlaceRecord> out = tail_places_up_to(bound);
    for (const auto &p : places_) {
        if (!p.key.is_archimedean() && !is_exceptional(p) && p.key.norm <= bound) out.push_back(p);
    }
    std::sort(out.begin(), out.end(), [](const PlaceRecord &a, const PlaceRecord &b) { return a.key < b.key; });
    return out;
}

SetupDescription rational_description(long m, long j) {
    SetupDescription d;
    d.d = 1;
    d.m = m;
    d.j = j;
    d.tail.kind = TailKind::Rational;
    return d;
}

SetupDescription quadratic_description(long discriminant, long m, long j) {
    SetupDescription d;
    d.d = 2;
    d.m = m;
    d.j = j;
    d.group_generators = {{2, 1}};
    d.tail.kind = TailKind::Quadratic;
    d.tail.discriminant = discriminant;
    return d;
}

SetupPtr build_setup(const SetupDescription &desc) {
    if (desc.d < 1 || desc.m < 1 || desc.j < 1) throw ValidationError("d, m and j must be positive");
    if (!desc.d.fits_ulong_p() || desc.d > 64) throw ValidationError("degree d too large for a permutation group");
    auto setup = std::make_shared<FieldSetup>();
    FieldSetup &s = *setup;
    s.d_ = desc.d;
    s.m_ = desc.m;
    s.j_ = desc.j;
    s.M_ = desc.d * desc.m * desc.j;
    s.tail_ = desc.tail;
    const std::size_t degree = desc.d.get_ui();

    auto gens_input = desc.group_generators;
    switch (desc.tail.kind) {
    case TailKind::Rational:
        if (desc.d != 1) throw ValidationError("the rational kind has F = Q, so d must be 1");
        break;
    case TailKind::Quadratic:
        if (desc.d != 2) throw ValidationError("the quadratic kind needs d = 2");
        if (!is_fundamental_discriminant(desc.tail.discriminant)) {
            throw ValidationError(desc.tail.discriminant.get_str() + " is not a fundamental discriminant");
        }
        if (gens_input.empty()) gens_input = {{2, 1}};
        break;
    case TailKind::Listed:
        if (desc.tail.bound < 1) throw ValidationError("listed tail needs a positive norm bound");
        break;
    case TailKind::Sampled:
        break;
    }
    std::vector<Permutation> gens;
    for (const auto &g : gens_input) {
        auto p = Permutation::from_one_based(g);
        if (p.degree() != degree) throw ValidationError("group generator degree differs from d");
        gens.push_back(std::move(p));
    }
    s.group_ = std::make_shared<const GroupTable>(group_closure(gens, degree));
    if (!s.group_->is_transitive()) throw ValidationError("the group must act transitively on d points");
    if (desc.tail.kind == TailKind::Quadratic && s.group_->order() != 2) {
        throw ValidationError("the quadratic kind needs the group of order 2");
    }

    std::vector<PlaceRecordInput> inputs = desc.places;
    const bool has_arch = std::any_of(inputs.begin(), inputs.end(),
                                      [](const PlaceRecordInput &p) { return p.kind != PlaceKind::Finite; });
    if (!has_arch) {
        if (desc.tail.kind == TailKind::Rational) {
            inputs.push_back(PlaceRecordInput{"inf", PlaceKind::Real, 0, false, {{1, 0}}, std::nullopt});
        } else if (desc.tail.kind == TailKind::Quadratic) {
            PlaceRecordInput inf{"inf", PlaceKind::Real, 0, false, {}, std::nullopt};
            if (desc.tail.discriminant < 0) {
                inf.fibers = {{2, 0}};
            } else {
                inf.fibers = {{1, 0}, {1, 0}};
            }
            inputs.push_back(inf);
        } else {
            throw ValidationError("listed and sampled setups must list their archimedean places");
        }
    }
    if (desc.tail.kind == TailKind::Quadratic) {
        const BigInt D = abs(desc.tail.discriminant);
        BigInt rest = D;
        while (rest > 1) {
            const BigInt p = smallest_prime_factor(rest);
            while (big_divides(p, rest)) rest /= p;
            const bool listed = std::any_of(inputs.begin(), inputs.end(), [&](const PlaceRecordInput &in) {
                return in.kind == PlaceKind::Finite && in.norm == p;
            });
            if (!listed) inputs.push_back(PlaceRecordInput{p.get_str(), PlaceKind::Finite, p, true, {{2, 0}}, std::nullopt});
        }
    }

    std::set<std::string> ids;
    BigInt kappa_total = 0;
    for (const auto &in : inputs) {
        PlaceRecord rec;
        rec.key.kind = in.kind;
        rec.key.id = in.id;
        if (in.kind == PlaceKind::Finite) {
            if (in.norm < 2) throw ValidationError("finite place '" + in.id + "' needs a norm >= 2");
            rec.key.norm = in.norm;
            if (rec.key.id.empty()) rec.key.id = in.norm.get_str();
            if (s.center_is_rational()) {
                if (!is_prime(in.norm)) throw ValidationError("norm " + in.norm.get_str() + " is not prime although Z = Q");
                if (rec.key.id != in.norm.get_str()) {
                    throw ValidationError("finite place '" + rec.key.id + "' over Q must be named by its prime");
                }
            }
        } else {
            if (in.norm != 0) throw ValidationError("archimedean place '" + in.id + "' must not carry a norm");
            if (rec.key.id.empty()) throw ValidationError("archimedean places need an id");
        }
        if (!ids.insert(rec.key.id).second) throw ValidationError("duplicate place id '" + rec.key.id + "'");

        BigInt degree_sum = 0;
        for (const auto &[dw, kappa] : in.fibers) {
            if (dw < 1) throw ValidationError("local degree must be positive at '" + rec.key.id + "'");
            degree_sum += dw;
            rec.fibers.push_back(FiberRecord{dw, Residue(kappa, s.m_)});
            kappa_total += kappa;
        }
        if (degree_sum != s.d_) {
            throw ValidationError("local degrees at '" + rec.key.id + "' sum to " + degree_sum.get_str() + ", not d");
        }

        if (in.kind == PlaceKind::Complex) {
            for (const auto &f : rec.fibers) {
                if (f.local_degree != 1 || !f.kappa.is_zero()) {
                    throw ValidationError("fibers over the complex place '" + rec.key.id + "' must have d_w = 1, kappa = 0");
                }
            }
        } else if (in.kind == PlaceKind::Real) {
            for (const auto &f : rec.fibers) {
                if (f.local_degree > 2) throw ValidationError("fiber of degree > 2 over real place '" + rec.key.id + "'");
                if (f.local_degree == 2 && !f.kappa.is_zero()) {
                    throw ValidationError("complex fiber over '" + rec.key.id + "' must have kappa = 0");
                }
                if (f.local_degree == 1 && !f.kappa.is_zero() && f.kappa.value() * 2 != s.m_) {
                    throw ValidationError("real fiber over '" + rec.key.id + "' must have kappa in {0, m/2}");
                }
            }
        }

        if (in.kind == PlaceKind::Finite) {
            bool ramified = in.ramified.value_or(false);
            if (desc.tail.kind == TailKind::Quadratic) {
                const bool divides = big_divides(in.norm, desc.tail.discriminant);
                if (in.ramified.has_value() && *in.ramified != divides) {
                    throw ValidationError("ramification flag at '" + rec.key.id + "' contradicts the discriminant");
                }
                ramified = divides;
            }
            if (desc.tail.kind == TailKind::Rational && ramified) {
                throw ValidationError("nothing ramifies in F = Q");
            }
            rec.ramified_in_F = ramified;
            if (!ramified) {
                std::size_t cls = 0;
                if (in.frobenius) {
                    cls = s.group_->class_of(Permutation::from_one_based(*in.frobenius));
                } else if (desc.tail.kind == TailKind::Rational || desc.tail.kind == TailKind::Quadratic) {
                    cls = *s.tail_record(in.norm).frobenius;
                } else {
                    const auto want = sorted_degrees(rec.fibers);
                    bool found = false;
                    for (std::size_t c = 0; c < s.group_->classes().size() && !found; ++c) {
                        if (sorted_degrees(s.group_->representative(c).cycle_type()) == want) {
                            cls = c;
                            found = true;
                        }
                    }
                    if (!found) throw ValidationError("no conjugacy class has the fiber pattern of '" + rec.key.id + "'");
                }
                if (sorted_degrees(s.group_->representative(cls).cycle_type()) != sorted_degrees(rec.fibers)) {
                    throw ValidationError("fibers at '" + rec.key.id + "' do not match the cycle type of its Frobenius");
                }
                rec.frobenius = cls;
            }
        } else if (in.ramified.value_or(false)) {
            throw ValidationError("archimedean place '" + rec.key.id + "' cannot be flagged ramified");
        }
        s.places_.push_back(std::move(rec));
    }
    if (!big_divides(s.m_, kappa_total)) {
        throw ValidationError("local invariants of K do not sum to zero in Q/Z");
    }
    std::sort(s.places_.begin(), s.places_.end(), [](const PlaceRecord &a, const PlaceRecord &b) { return a.key < b.key; });

    if (desc.zeta_residue) {
        if (!(*desc.zeta_residue > 0)) throw ValidationError("zeta_residue must be positive");
        s.zeta_residue_ = desc.zeta_residue;
    } else if (s.center_is_rational()) {
        s.zeta_residue_ = 1.0;
    }
    return setup;
}

PlaceKey resolve_place(const FieldSetup &setup, const std::string &id) {
    if (const auto *p = setup.find_explicit(id)) return p->key;
    if (setup.center_is_rational() && !id.empty() && id.find_first_not_of("0123456789") == std::string::npos) {
        const BigInt p(id);
        if (is_prime(p) && p.get_str() == id) return finite_place(p);
    }
    throw ValidationError("unknown place '" + id + "'");
}

std::size_t frobenius_at(const FieldSetup &setup, const PlaceKey &place) {
    if (place.is_archimedean()) throw ValidationError("Frobenius is defined at finite places only");
    const PlaceRecord rec = setup.place_record(place);
    if (rec.ramified_in_F || !rec.frobenius) throw ValidationError("place '" + place.id + "' ramifies in F");
    return *rec.frobenius;
}

std::vector<PlaceKey> exceptional_places(const FieldSetup &setup) {
    std::vector<PlaceKey> out;
    for (const auto &p : setup.explicit_places()) {
        if (is_exceptional(p)) out.push_back(p.key);
    }
    return out;
}

BigInt frobenius_step(const FieldSetup &setup, const PlaceRecord &place) {
    if (is_exceptional(place)) throw ValidationError("place '" + place.key.id + "' is exceptional");
    const BigInt cyc(static_cast<unsigned long>(setup.group().class_cycgcd(*place.frobenius)));
    return setup.d() * setup.m() / cyc;
}

BigInt eta(const FieldSetup &setup, const BigInt &tau, const PlaceRecord &place) {
    if (tau < 1 || !big_divides(tau, setup.M())) throw ValidationError("tau must divide M");
    return big_lcm(frobenius_step(setup, place), tau);
}

} // namespace csa
