#include "csa/census.hpp"

#include "csa/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

namespace csa {

bool LocalConstraint::contains(const std::string &place_id) const { return value(place_id).has_value(); }

std::optional<Residue> LocalConstraint::value(const std::string &place_id) const {
    for (const auto &[k, v] : xi) {
        if (k.id == place_id) return v;
    }
    return std::nullopt;
}

Residue LocalConstraint::sigma(const BigInt &M) const {
    Residue s(BigInt(0), M);
    for (const auto &e : xi) s += e.second;
    return s;
}

void LocalConstraint::assign(const PlaceKey &place, const Residue &v) {
    for (auto &e : xi) {
        if (e.first.id == place.id) {
            e.second = v;
            return;
        }
    }
    xi.emplace_back(place, v);
    std::sort(xi.begin(), xi.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
}

std::string to_string(Metric m) { return m == Metric::Disc ? "disc" : "ram"; }

Metric parse_metric(const std::string &text) {
    if (text == "disc") return Metric::Disc;
    if (text == "ram") return Metric::Ram;
    throw ParseError("unknown metric '" + text + "' (expected disc or ram)");
}

std::vector<Residue> admissible_values(const FieldSetup &setup, const PlaceRecord &place, const BigInt &tau) {
    const BigInt &M = setup.M();
    std::vector<Residue> out;
    for (BigInt v = 0; v < M; v += tau) {
        const Residue r(v, M);
        if (place.key.kind == PlaceKind::Complex && !r.is_zero()) continue;
        if (place.key.kind == PlaceKind::Real && !r.is_zero() && v * 2 != M) continue;
        if (!fiber_condition_holds(setup, place, r)) continue;
        out.push_back(r);
    }
    return out;
}

void validate_constraint(const FieldSetup &setup, const LocalConstraint &c) {
    if (c.tau < 1 || !big_divides(c.tau, setup.M())) throw ValidationError("tau must be a positive divisor of M");
    std::set<std::string> seen;
    for (const auto &[key, value] : c.xi) {
        if (!seen.insert(key.id).second) throw ValidationError("place '" + key.id + "' appears twice in xi");
        if (value.modulus() != setup.M()) throw ValidationError("xi values must be residues modulo M");
        const PlaceRecord rec = setup.place_record(key);
        if (rec.key.kind != key.kind) throw ValidationError("place '" + key.id + "' has the wrong kind in xi");
        const auto allowed = admissible_values(setup, rec, 1);
        if (std::find(allowed.begin(), allowed.end(), value) == allowed.end()) {
            throw ValidationError("xi(" + key.id + ") = " + value.value().get_str() + " violates the local conditions");
        }
    }
}

bool xi_divisible_by_tau(const LocalConstraint &c) {
    return std::all_of(c.xi.begin(), c.xi.end(), [&](const auto &e) { return big_divides(c.tau, e.second.value()); });
}

FactoredRational xi_disc(const BigInt &M, const LocalConstraint &c) {
    FactoredRational d;
    for (const auto &[key, value] : c.xi) {
        if (!key.is_archimedean() && !value.is_zero()) d.multiply_power(key.norm, M * (M - gcd_with_modulus(value)));
    }
    return d;
}

FactoredRational xi_ram(const LocalConstraint &c) {
    FactoredRational r;
    for (const auto &[key, value] : c.xi) {
        if (!key.is_archimedean() && !value.is_zero()) r.multiply_power(key.norm, 1);
    }
    return r;
}

bool satisfies_lambda(const FieldSetup &setup, const LocalConstraint &c, const InvariantProfile &v, bool require_skew) {
    if (v.M() != setup.M()) return false;
    if (!validate_profile(v).valid) return false;
    try {
        if (!embeds_into(setup, v)) return false;
    } catch (const ValidationError &) {
        return false;
    }
    for (const auto &e : v.entries()) {
        if (!big_divides(c.tau, e.second.value())) return false;
    }
    for (const auto &[key, value] : c.xi) {
        if (v.at(key.id) != value) return false;
    }
    if (require_skew && !index_and_skew(v).is_skew) return false;
    return true;
}

namespace {

struct Option {
    BigInt value;
    BigInt factor;
};

struct Slot {
    PlaceKey key;
    std::vector<Option> options;
};

struct GenericPlace {
    PlaceKey key;
    BigInt glob_factor; // ||p||^{e_glob}, for the break test
    std::vector<Option> options; // sorted by factor
};

BigInt place_factor(Metric metric, const BigInt &M, const PlaceKey &key, const BigInt &value) {
    if (key.is_archimedean() || big_mod(value, M) == 0) return 1;
    if (metric == Metric::Ram) return key.norm;
    const BigInt e = M * (M - big_gcd(M, value));
    return big_pow(key.norm, e.get_ui());
}

struct Plan {
    BigInt M, X;
    Metric metric = Metric::Disc;
    bool empty = false;
    std::vector<std::pair<PlaceKey, Residue>> fixed;
    BigInt fixed_metric = 1;
    BigInt fixed_sum = 0;
    std::vector<Slot> finite_slots;
    std::vector<Slot> arch_slots;
    std::vector<GenericPlace> generic;
};

Plan make_plan(const FieldSetup &setup, const LocalConstraint &c, const Budget &budget) {
    validate_constraint(setup, c);
    if (setup.is_stochastic()) throw CoverageError("the sampled tail is stochastic; exact enumeration refused");
    Plan plan;
    plan.M = setup.M();
    plan.X = budget.bound;
    plan.metric = budget.metric;
    const BigInt &M = plan.M;
    if (budget.bound < 1 || !xi_divisible_by_tau(c)) {
        plan.empty = true;
        return plan;
    }
    for (const auto &[key, value] : c.xi) {
        plan.fixed.emplace_back(key, value);
        plan.fixed_metric *= place_factor(plan.metric, M, key, value.value());
        plan.fixed_sum += value.value();
    }
    if (plan.fixed_metric > plan.X) {
        plan.empty = true;
        return plan;
    }
    for (const auto &rec : setup.explicit_places()) {
        if (!is_exceptional(rec) || c.contains(rec.key.id)) continue;
        Slot slot{rec.key, {}};
        for (const auto &r : admissible_values(setup, rec, c.tau)) {
            slot.options.push_back(Option{r.value(), place_factor(plan.metric, M, rec.key, r.value())});
        }
        if (slot.options.empty()) {
            plan.empty = true;
            return plan;
        }
        (rec.key.is_archimedean() ? plan.arch_slots : plan.finite_slots).push_back(std::move(slot));
    }

    // Per Frobenius class: nonzero values divisible by eta and their exponent.
    const auto &G = setup.group();
    const BigInt dm = setup.d() * setup.m();
    std::vector<std::vector<std::pair<BigInt, BigInt>>> class_opts(G.classes().size());
    BigInt e_glob = 0;
    for (std::size_t cls = 0; cls < G.classes().size(); ++cls) {
        const BigInt eta = big_lcm(dm / BigInt(static_cast<unsigned long>(G.class_cycgcd(cls))), c.tau);
        for (BigInt v = eta; v < M; v += eta) {
            const BigInt e = plan.metric == Metric::Disc ? BigInt(M * (M - big_gcd(M, v))) : BigInt(1);
            class_opts[cls].emplace_back(v, e);
            if (e_glob == 0 || e < e_glob) e_glob = e;
        }
        std::stable_sort(class_opts[cls].begin(), class_opts[cls].end(),
                         [](const auto &a, const auto &b) { return a.second < b.second; });
    }
    if (e_glob == 0) return plan;
    const BigInt remaining = plan.X / plan.fixed_metric;
    const BigInt B = big_root_floor(remaining, e_glob.get_ui());
    if (B < 2) return plan;
    for (auto &rec : setup.generic_places_up_to(B)) {
        if (c.contains(rec.key.id)) continue;
        const auto &opts = class_opts[*rec.frobenius];
        if (opts.empty()) continue;
        GenericPlace gp{rec.key, big_pow(rec.key.norm, e_glob.get_ui()), {}};
        for (const auto &[v, e] : opts) {
            const BigInt f = big_pow(rec.key.norm, e.get_ui());
            if (f > remaining) break;
            gp.options.push_back(Option{v, f});
        }
        if (!gp.options.empty()) plan.generic.push_back(std::move(gp));
    }
    return plan;
}

class Walker {
  public:
    Walker(const Plan &plan, const CensusVisitor &visit, unsigned worker, unsigned workers)
        : plan_(plan), visit_(visit), worker_(worker), workers_(workers) {}

    void run() {
        if (plan_.empty) return;
        slots(0, plan_.fixed_metric, plan_.fixed_sum);
    }

  private:
    bool take_task() { return (counter_++ % workers_) == worker_; }

    void slots(std::size_t i, const BigInt &metric, const BigInt &sum) {
        if (stopped_) return;
        if (i == plan_.finite_slots.size()) {
            generic_root(metric, sum);
            return;
        }
        for (const auto &opt : plan_.finite_slots[i].options) {
            const BigInt m2 = metric * opt.factor;
            if (m2 > plan_.X) continue;
            assigned_.emplace_back(&plan_.finite_slots[i].key, opt.value);
            slots(i + 1, m2, sum + opt.value);
            assigned_.pop_back();
            if (stopped_) return;
        }
    }

    void generic_root(const BigInt &metric, const BigInt &sum) {
        if (take_task()) leaf(metric, sum);
        for (std::size_t idx = 0; idx < plan_.generic.size() && !stopped_; ++idx) {
            const auto &gp = plan_.generic[idx];
            if (metric * gp.glob_factor > plan_.X) break;
            for (const auto &opt : gp.options) {
                const BigInt m2 = metric * opt.factor;
                if (m2 > plan_.X) break;
                if (!take_task()) continue;
                assigned_.emplace_back(&gp.key, opt.value);
                descend(idx + 1, m2, sum + opt.value);
                assigned_.pop_back();
                if (stopped_) return;
            }
        }
    }

    void descend(std::size_t start, const BigInt &metric, const BigInt &sum) {
        leaf(metric, sum);
        for (std::size_t idx = start; idx < plan_.generic.size() && !stopped_; ++idx) {
            const auto &gp = plan_.generic[idx];
            if (metric * gp.glob_factor > plan_.X) break;
            for (const auto &opt : gp.options) {
                const BigInt m2 = metric * opt.factor;
                if (m2 > plan_.X) break;
                assigned_.emplace_back(&gp.key, opt.value);
                descend(idx + 1, m2, sum + opt.value);
                assigned_.pop_back();
                if (stopped_) return;
            }
        }
    }

    void leaf(const BigInt &metric, const BigInt &sum) { arch(0, metric, sum); }

    void arch(std::size_t i, const BigInt &metric, const BigInt &sum) {
        if (stopped_) return;
        if (i == plan_.arch_slots.size()) {
            if (big_mod(sum, plan_.M) != 0) return;
            InvariantProfile v(plan_.M);
            for (const auto &[key, value] : plan_.fixed) v.set(key, value.value());
            for (const auto &[key, value] : assigned_) v.set(*key, value);
            if (!visit_(v, metric)) stopped_ = true;
            return;
        }
        for (const auto &opt : plan_.arch_slots[i].options) {
            assigned_.emplace_back(&plan_.arch_slots[i].key, opt.value);
            arch(i + 1, metric, sum + opt.value);
            assigned_.pop_back();
            if (stopped_) return;
        }
    }

    const Plan &plan_;
    const CensusVisitor &visit_;
    unsigned worker_, workers_;
    std::uint64_t counter_ = 0;
    bool stopped_ = false;
    std::vector<std::pair<const PlaceKey *, BigInt>> assigned_;
};

template <class Collector>
std::vector<Collector> run_parallel(const Plan &plan, unsigned workers,
                                    const std::function<CensusVisitor(Collector &)> &make_visitor) {
    if (workers == 0) workers = 1;
    std::vector<Collector> out(workers);
    if (workers == 1) {
        const CensusVisitor v = make_visitor(out[0]);
        Walker(plan, v, 0, 1).run();
        return out;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                const CensusVisitor v = make_visitor(out[w]);
                Walker(plan, v, w, workers).run();
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : threads) t.join();
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

bool profile_is_skew(const InvariantProfile &v) {
    BigInt g = v.M();
    for (const auto &e : v.entries()) g = big_gcd(g, e.second.value());
    return g == 1;
}

} // namespace

void visit_census(const FieldSetup &setup, const LocalConstraint &c, const Budget &budget, const CensusVisitor &visit) {
    const Plan plan = make_plan(setup, c, budget);
    Walker(plan, visit, 0, 1).run();
}

std::vector<CensusRow> enumerate_census(const FieldSetup &setup, const LocalConstraint &c, const Budget &budget,
                                        bool skew_only, const CensusOptions &options) {
    const Plan plan = make_plan(setup, c, budget);
    using Rows = std::vector<CensusRow>;
    auto parts = run_parallel<Rows>(plan, options.workers, [&](Rows &rows) -> CensusVisitor {
        return [&rows, skew_only](const InvariantProfile &v, const BigInt &metric) {
            const auto idx = index_and_skew(v);
            if (skew_only && !idx.is_skew) return true;
            rows.push_back(CensusRow{v, metric, disc_over_center(v), ram_product(v), idx.index, idx.is_skew});
            return true;
        };
    });
    Rows rows;
    for (auto &p : parts) std::move(p.begin(), p.end(), std::back_inserter(rows));
    std::sort(rows.begin(), rows.end(), [](const CensusRow &a, const CensusRow &b) {
        if (a.metric_value != b.metric_value) return a.metric_value < b.metric_value;
        return a.profile < b.profile;
    });
    return rows;
}

std::vector<CountRow> count_table(const FieldSetup &setup, const LocalConstraint &c, Metric metric,
                                  const std::vector<BigInt> &grid, const CensusOptions &options) {
    if (!std::is_sorted(grid.begin(), grid.end())) throw ValidationError("count grid must be ascending");
    std::vector<CountRow> table;
    if (grid.empty()) return table;
    const Plan plan = make_plan(setup, c, Budget{metric, grid.back()});
    using Seen = std::vector<std::pair<BigInt, bool>>;
    auto parts = run_parallel<Seen>(plan, options.workers, [&](Seen &seen) -> CensusVisitor {
        return [&seen](const InvariantProfile &v, const BigInt &m) {
            seen.emplace_back(m, profile_is_skew(v));
            return true;
        };
    });
    std::vector<BigInt> all, skew;
    for (const auto &p : parts) {
        for (const auto &[m, s] : p) {
            all.push_back(m);
            if (s) skew.push_back(m);
        }
    }
    std::sort(all.begin(), all.end());
    std::sort(skew.begin(), skew.end());
    for (const auto &X : grid) {
        CountRow r;
        r.X = X;
        r.count = static_cast<std::uint64_t>(std::upper_bound(all.begin(), all.end(), X) - all.begin());
        r.skew_count = static_cast<std::uint64_t>(std::upper_bound(skew.begin(), skew.end(), X) - skew.begin());
        table.push_back(r);
    }
    return table;
}

namespace {

BigInt lcm_cycgcd(const GroupTable &G) {
    BigInt U = 1;
    for (std::size_t c = 0; c < G.classes().size(); ++c) U = big_lcm(U, BigInt(static_cast<unsigned long>(G.class_cycgcd(c))));
    return U;
}

} // namespace

ExistenceResult decide_existence(const FieldSetup &setup, const LocalConstraint &c, bool skew, std::uint64_t cap) {
    validate_constraint(setup, c);
    ExistenceResult result;
    if (skew && big_gcd(setup.m(), setup.j()) != 1) {
        result.decided_by_prefilter = true;
        return result;
    }
    const BigInt &M = setup.M();
    const BigInt target = setup.d() * setup.m() / lcm_cycgcd(setup.group());

    std::vector<std::pair<PlaceKey, std::vector<Residue>>> slots;
    std::size_t free_count = 0;
    for (const auto &rec : setup.explicit_places()) {
        if (!is_exceptional(rec)) continue;
        if (auto v = c.value(rec.key.id)) {
            slots.push_back({rec.key, {*v}});
        } else {
            slots.push_back({rec.key, admissible_values(setup, rec, 1)});
            ++free_count;
        }
    }
    BigInt space = 1;
    for (std::size_t i = 0; i < free_count; ++i) space *= M;
    if (space > BigInt(std::to_string(cap))) {
        throw CapExceededError("existence search space M^" + std::to_string(free_count) + " = " + space.get_str() +
                               " exceeds the cap");
    }

    ExceptionalMap current;
    std::function<bool(std::size_t, const BigInt &, const BigInt &)> search = [&](std::size_t i, const BigInt &sum,
                                                                                  const BigInt &g) -> bool {
        if (i == slots.size()) {
            if (!big_divides(target, sum)) return false;
            if (skew && big_gcd(target, g) != 1) return false;
            return true;
        }
        for (const auto &v : slots[i].second) {
            current.emplace_back(slots[i].first, v);
            if (search(i + 1, sum + v.value(), big_gcd(g, v.value()))) return true;
            current.pop_back();
        }
        return false;
    };
    if (search(0, BigInt(0), M)) {
        result.exists = true;
        result.certificate = current;
    }
    return result;
}

namespace {

// Calls fn on generic places outside S in ascending order until it returns true.
void scan_generic(const FieldSetup &setup, const LocalConstraint &c, const std::function<bool(const PlaceRecord &)> &fn) {
    BigInt done = 1;
    std::vector<BigInt> bounds;
    if (auto cov = setup.coverage_bound()) {
        bounds.push_back(*cov);
    } else {
        for (BigInt b = 128; b <= BigInt(1) << 27; b *= 8) bounds.push_back(b);
    }
    for (const auto &b : bounds) {
        for (const auto &rec : setup.generic_places_up_to(b)) {
            if (rec.key.norm <= done || c.contains(rec.key.id)) continue;
            if (fn(rec)) return;
        }
        done = b;
    }
    throw CoverageError("ran out of tail primes while building a witness");
}

} // namespace

InvariantProfile construct_witness(const FieldSetup &setup, const LocalConstraint &c, const ExceptionalMap &certificate,
                                   bool skew) {
    validate_constraint(setup, c);
    if (setup.is_stochastic()) throw CoverageError("the sampled tail is stochastic; witness construction refused");
    const BigInt &M = setup.M();
    InvariantProfile lam(M);
    std::set<std::string> used;
    for (const auto &[key, v] : certificate) {
        lam.set(key, v.value());
        used.insert(key.id);
    }
    for (const auto &[key, v] : c.xi) {
        if (!used.count(key.id)) lam.set(key, v.value());
        used.insert(key.id);
    }
    LocalConstraint frozen = c;
    frozen.tau = 1;

    if (skew) {
        const BigInt target = setup.d() * setup.m() / lcm_cycgcd(setup.group());
        BigInt g = 0;
        if (g != target) {
            scan_generic(setup, frozen, [&](const PlaceRecord &rec) {
                const BigInt step = frobenius_step(setup, rec);
                const BigInt ng = big_gcd(g, step);
                if (g == 0 || ng < g) {
                    lam.set(rec.key, step);
                    frozen.assign(rec.key, Residue(step, M));
                    g = ng;
                }
                return g == target;
            });
        }
    }

    const BigInt need = big_mod(-lam.sum().value(), M);
    if (need != 0) {
        BigInt g = M;
        std::vector<std::pair<PlaceKey, BigInt>> chosen; // place, step
        std::vector<BigInt> coef;
        scan_generic(setup, frozen, [&](const PlaceRecord &rec) {
            const BigInt step = frobenius_step(setup, rec);
            BigInt ng, a, b;
            mpz_gcdext(ng.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t(), step.get_mpz_t());
            if (ng < g) {
                for (auto &k : coef) k *= a;
                coef.push_back(b);
                chosen.emplace_back(rec.key, step);
                g = ng;
            }
            return big_divides(g, need);
        });
        const BigInt k = need / g;
        for (std::size_t i = 0; i < chosen.size(); ++i) lam.set(chosen[i].first, coef[i] * chosen[i].second * k);
    }
    if (!satisfies_lambda(setup, c.tau == 1 ? c : LocalConstraint{c.xi, 1}, lam, skew)) {
        throw std::logic_error("witness construction produced a profile outside Lambda");
    }
    return lam;
}

} // namespace csa
