// csa: command-line front end over the csacore library.

#include "csa/csa.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using csa::BigInt;
using json = nlohmann::ordered_json;

enum ExitCode : int {
    kOk = 0,
    kOther = 1,
    kParse = 2,
    kValidation = 3,
    kCoverage = 4,
    kOutOfScope = 5,
    kCap = 6,
};

std::string sha256_hex(const std::string &data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX *ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("SHA-256 digest failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

/// 12 significant digits, as a JSON number.
json float12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return json::parse(buf);
}

std::string text12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

BigInt parse_big_flag(const std::string &text, const char *flag) {
    // accepts 1e8-style powers of ten as well as plain integers
    const auto e = text.find_first_of("eE");
    if (e != std::string::npos) {
        const BigInt mant = csa::parse_bigint(text.substr(0, e));
        const BigInt exp = csa::parse_bigint(text.substr(e + 1));
        if (exp < 0 || exp > 100000) throw csa::ParseError(std::string(flag) + ": exponent out of range");
        return mant * csa::big_pow(BigInt(10), exp.get_ui());
    }
    try {
        return csa::parse_bigint(text);
    } catch (const csa::ParseError &) {
        throw csa::ParseError(std::string(flag) + ": '" + text + "' is not an integer");
    }
}

std::vector<BigInt> parse_grid(const std::string &text) {
    std::vector<BigInt> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_big_flag(item, "--grid"));
    if (out.empty()) throw csa::ParseError("--grid is empty");
    if (!std::is_sorted(out.begin(), out.end())) throw csa::ValidationError("--grid must be ascending");
    return out;
}

unsigned worker_count(unsigned flag) {
    if (flag > 0) return flag;
    if (const char *env = std::getenv("CSA_WORKERS")) {
        const BigInt w = csa::parse_bigint(env);
        if (w < 1 || w > 1024) throw csa::ValidationError("CSA_WORKERS must be in [1, 1024]");
        return static_cast<unsigned>(w.get_ui());
    }
    return 1;
}

json rational_json(const csa::Rational &q) { return csa::to_string(q); }

json certificate_json(const csa::ExceptionalMap &m) {
    json arr = json::array();
    for (const auto &[key, value] : m) arr.push_back({{"place", key.id}, {"value", value.value().get_str()}});
    return arr;
}

struct Context {
    std::string setup_path, constraint_path, output_path;
    std::string digest;
    csa::SetupPtr setup;
    csa::LocalConstraint constraint;
    unsigned workers = 0;

    void load() {
        const std::string text = csa::read_text_file(setup_path);
        digest = sha256_hex(text);
        setup = csa::build_setup(csa::parse_setup_json(text));
        if (!constraint_path.empty()) {
            constraint = csa::parse_constraint_json(*setup, csa::read_text_file(constraint_path));
            csa::validate_constraint(*setup, constraint);
        }
    }

    void emit(const std::string &body) const {
        if (output_path.empty()) {
            std::cout << body;
            std::cout.flush();
            return;
        }
        std::ofstream out(output_path, std::ios::binary);
        if (!out) throw csa::ParseError("cannot write '" + output_path + "'");
        out << body;
    }

    void emit(json j) const {
        j["setup_digest"] = digest;
        emit(j.dump(2) + "\n");
    }
};

void add_setup_options(CLI::App *cmd, Context &ctx, bool with_constraint) {
    cmd->add_option("--setup", ctx.setup_path, "setup JSON file")->required();
    if (with_constraint) cmd->add_option("--constraint", ctx.constraint_path, "constraint JSON file {tau, xi}");
    cmd->add_option("--output", ctx.output_path, "write to this file instead of stdout");
}

int run(int argc, char **argv) {
    CLI::App app{"Counting central simple algebras by local invariants"};
    app.require_subcommand(1);
    Context ctx;

    auto *inv = app.add_subcommand("invariants", "exponents a, b, b* and group invariants");
    add_setup_options(inv, ctx, false);

    bool skew = false, witness = false;
    auto *ex = app.add_subcommand("exists", "decide whether the constrained family is nonempty");
    add_setup_options(ex, ctx, true);
    ex->add_flag("--skew", skew, "ask for skew fields only");
    ex->add_flag("--witness", witness, "also build a witness profile");

    std::string metric_text = "disc", bound_text, grid_text;
    auto *census = app.add_subcommand("census", "list every profile up to a bound (TSV)");
    add_setup_options(census, ctx, true);
    census->add_option("--metric", metric_text, "disc or ram")->check(CLI::IsMember({"disc", "ram"}));
    census->add_option("--bound", bound_text, "bound X")->required();
    census->add_flag("--skew", skew, "skew fields only");
    census->add_option("--workers", ctx.workers, "worker threads (default: CSA_WORKERS or 1)");

    bool fit = false;
    auto *count = app.add_subcommand("count", "counts N(X) on a grid (TSV)");
    add_setup_options(count, ctx, true);
    count->add_option("--metric", metric_text, "disc or ram")->check(CLI::IsMember({"disc", "ram"}));
    count->add_option("--grid", grid_text, "ascending comma-separated bounds, e.g. 1e2,1e4,1e6")->required();
    count->add_flag("--fit", fit, "append the least-squares exponent fit");
    count->add_option("--workers", ctx.workers, "worker threads (default: CSA_WORKERS or 1)");

    std::string pmax_text = "100000";
    bool completions = false, sieve = false;
    auto *constant = app.add_subcommand("constant", "leading constant of the asymptotic count");
    add_setup_options(constant, ctx, true);
    constant->add_option("--pmax", pmax_text, "Euler product truncation");
    constant->add_flag("--sum-completions", completions, "sum over completions on unconstrained exceptional places");
    constant->add_flag("--sieve", sieve, "skew-field constant via the Moebius sum over tau");

    std::string cutoff_text = "30";
    auto *identity = app.add_subcommand("identity-check", "compare direct and character-sum expansions");
    add_setup_options(identity, ctx, true);
    identity->add_option("--cutoff", cutoff_text, "largest prime in the support");
    identity->add_option("--metric", metric_text, "disc or ram")->check(CLI::IsMember({"disc", "ram"}));
    identity->add_option("--bound", bound_text, "drop terms above this metric value");

    std::string algebra_path, etale_path, disc_text;
    auto *outer = app.add_subcommand("outer", "discriminant and skewness of K (x)_F F'");
    outer->add_option("--algebra", algebra_path, "base algebra JSON {m, places}")->required();
    outer->add_option("--etale", etale_path, "splitting data JSON {d, places}")->required();
    outer->add_option("--disc", disc_text, "norm of the relative discriminant d(F'|F)")->required();
    outer->add_option("--output", ctx.output_path, "write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }

    if (*outer) {
        const std::string a_text = csa::read_text_file(algebra_path);
        const std::string e_text = csa::read_text_file(etale_path);
        ctx.digest = sha256_hex(a_text + e_text);
        const auto K = csa::parse_base_algebra_json(a_text);
        const auto E = csa::parse_etale_json(e_text);
        const BigInt disc = parse_big_flag(disc_text, "--disc");
        const auto r = csa::outer_summary(K, E, disc);
        json inv_arr = json::array();
        for (const auto &t : r.invariants) {
            inv_arr.push_back({{"place", t.place.id},
                               {"factor", csa::to_string(t.factor)},
                               {"value", t.value.value().get_str()}});
        }
        ctx.emit(json{{"d_L_over_K", csa::to_string(r.d_L_over_K.value())},
                      {"delta", csa::to_string(r.delta.value())},
                      {"is_skew", r.is_skew},
                      {"invariants", inv_arr}});
        return kOk;
    }

    ctx.load();
    const auto &s = *ctx.setup;

    if (*inv) {
        const auto e = csa::exponents_inner(s);
        ctx.emit(json{{"a", rational_json(e.a)},
                      {"b", rational_json(e.b)},
                      {"b_star", rational_json(e.b_star)},
                      {"u", e.u.get_str()},
                      {"U", e.U.get_str()},
                      {"M", e.M.get_str()},
                      {"beta", rational_json(e.beta)},
                      {"avg_cycgcd", rational_json(e.avg_cycgcd)},
                      {"group_order", s.group().order()}});
        return kOk;
    }

    if (*ex) {
        const auto r = csa::decide_existence(s, ctx.constraint, skew);
        json out{{"exists", r.exists}, {"skew", skew}, {"decided_by_prefilter", r.decided_by_prefilter}};
        out["certificate"] = r.certificate ? certificate_json(*r.certificate) : json(nullptr);
        if (witness && r.exists) {
            out["witness"] = json::parse(csa::profile_to_json(csa::construct_witness(s, ctx.constraint, *r.certificate, skew)));
        }
        ctx.emit(out);
        return kOk;
    }

    const auto metric = csa::parse_metric(metric_text);
    const unsigned workers = worker_count(ctx.workers);

    if (*census) {
        const BigInt X = parse_big_flag(bound_text, "--bound");
        const auto rows = csa::enumerate_census(s, ctx.constraint, csa::Budget{metric, X}, skew, {workers});
        std::ostringstream out;
        out << "# setup_digest=" << ctx.digest << "\n";
        out << "# metric=" << csa::to_string(metric) << " bound=" << X.get_str() << " skew_only=" << (skew ? 1 : 0)
            << "\n";
        out << "metric_value\tdisc\tram\tindex\tis_skew\tprofile_json\n";
        for (const auto &r : rows) {
            out << r.metric_value.get_str() << '\t' << r.disc.integer_value().get_str() << '\t'
                << r.ram.integer_value().get_str() << '\t' << r.index.get_str() << '\t' << (r.is_skew ? 1 : 0) << '\t'
                << csa::profile_to_json(r.profile) << '\n';
        }
        out << "# rows=" << rows.size() << "\n";
        ctx.emit(out.str());
        return kOk;
    }

    if (*count) {
        const auto grid = parse_grid(grid_text);
        const auto table = csa::count_table(s, ctx.constraint, metric, grid, {workers});
        std::ostringstream out;
        out << "# setup_digest=" << ctx.digest << "\n";
        out << "# metric=" << csa::to_string(metric) << "\n";
        out << "X\tN\tN_skew\n";
        for (const auto &r : table) out << r.X.get_str() << '\t' << r.count << '\t' << r.skew_count << '\n';
        if (fit) {
            const auto f = csa::fit_exponents(table);
            const auto e = csa::exponents_inner(s);
            const auto expected_b = metric == csa::Metric::Disc ? e.b : e.b_star;
            const auto expected_alpha = metric == csa::Metric::Disc ? csa::Rational(1) / e.a : csa::Rational(1);
            out << "# fit\talpha_hat\tb_hat\tpoints\talpha\tb\n";
            out << "# fit\t" << text12(f.alpha_hat) << '\t' << text12(f.b_hat) << '\t' << f.points << '\t'
                << csa::to_string(expected_alpha) << '\t' << csa::to_string(expected_b) << '\n';
        }
        ctx.emit(out.str());
        return kOk;
    }

    if (*constant) {
        const BigInt pmax = parse_big_flag(pmax_text, "--pmax");
        const auto r = sieve ? csa::moebius_sieve_constant(s, ctx.constraint, pmax, completions)
                             : csa::leading_constant(s, ctx.constraint, pmax, completions);
        json chis = json::array();
        for (const auto &c : r.contributing_chi) chis.push_back(c.get_str());
        json parts = json::array();
        for (const auto &c : r.completions) {
            parts.push_back({{"constraint", json::parse(csa::constraint_to_json(c.constraint))}, {"C", float12(c.C)}});
        }
        ctx.emit(json{{"C", float12(r.C)},
                      {"error_bound", float12(r.error_bound)},
                      {"a", rational_json(r.a)},
                      {"b", rational_json(r.b)},
                      {"contributing_chi", chis},
                      {"completions", parts},
                      {"stochastic", r.stochastic},
                      {"pmax", pmax.get_str()}});
        return kOk;
    }

    if (*identity) {
        const BigInt cutoff = parse_big_flag(cutoff_text, "--cutoff");
        std::optional<BigInt> bound;
        if (!bound_text.empty()) bound = parse_big_flag(bound_text, "--bound");
        const auto direct = csa::dirichlet_partial(s, ctx.constraint, cutoff, csa::SumMethod::Direct, metric, bound);
        const auto charsum = csa::dirichlet_partial(s, ctx.constraint, cutoff, csa::SumMethod::Charsum, metric, bound);
        std::size_t mismatched = 0;
        for (const auto &[q, n] : direct.terms) {
            const auto it = charsum.terms.find(q);
            if (it == charsum.terms.end() || it->second != n) ++mismatched;
        }
        for (const auto &[q, n] : charsum.terms) {
            if (!direct.terms.count(q)) ++mismatched;
        }
        BigInt total = 0;
        for (const auto &[q, n] : direct.terms) total += n;
        ctx.emit(json{{"equal", direct == charsum},
                      {"terms", direct.terms.size()},
                      {"profiles", total.get_str()},
                      {"mismatched_terms", mismatched},
                      {"cutoff", cutoff.get_str()},
                      {"metric", csa::to_string(metric)}});
        return direct == charsum ? kOk : kOther;
    }
    return kOther;
}

} // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const csa::ParseError &e) {
        std::cerr << "csa: parse error: " << e.what() << "\n";
        return kParse;
    } catch (const csa::ValidationError &e) {
        std::cerr << "csa: invalid input: " << e.what() << "\n";
        return kValidation;
    } catch (const csa::CoverageError &e) {
        std::cerr << "csa: coverage: " << e.what() << "\n";
        return kCoverage;
    } catch (const csa::OutOfScopeError &e) {
        std::cerr << "csa: out of scope: " << e.what() << "\n";
        return kOutOfScope;
    } catch (const csa::CapExceededError &e) {
        std::cerr << "csa: cap exceeded: " << e.what() << "\n";
        return kCap;
    } catch (const std::exception &e) {
        std::cerr << "csa: " << e.what() << "\n";
        return kOther;
    }
}
