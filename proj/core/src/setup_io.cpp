#include "csa/setup_io.hpp"

#include "csa/errors.hpp"
#include "json_util.hpp"

#include <fstream>
#include <sstream>

namespace csa {

namespace {

std::vector<long> parse_image_list(const json &j, const std::string &where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of integers");
    std::vector<long> out;
    for (const auto &v : j) {
        if (!v.is_number_integer()) throw ParseError(where + ": expected an array of integers");
        out.push_back(v.get<long>());
    }
    return out;
}

PlaceRecordInput parse_place(const json &j) {
    require_object(j, "place");
    reject_unknown(j, {"id", "kind", "norm", "ramified", "fibers", "frob"}, "place");
    PlaceRecordInput in;
    in.id = get_string(j, "id", "place");
    in.kind = parse_place_kind(j.contains("kind") ? get_string(j, "kind", "place") : std::string("finite"));
    if (j.contains("norm")) in.norm = json_bigint(j.at("norm"), "place.norm");
    if (j.contains("ramified")) {
        if (!j.at("ramified").is_boolean()) throw ParseError("place.ramified must be a boolean");
        in.ramified = j.at("ramified").get<bool>();
    }
    if (!j.contains("fibers") || !j.at("fibers").is_array()) throw ParseError("place '" + in.id + "' needs a fibers array");
    for (const auto &f : j.at("fibers")) {
        require_object(f, "fiber");
        reject_unknown(f, {"dw", "kappa"}, "fiber");
        if (!f.contains("dw")) throw ParseError("fiber needs dw");
        BigInt kappa = f.contains("kappa") ? json_bigint(f.at("kappa"), "fiber.kappa") : BigInt(0);
        in.fibers.emplace_back(json_bigint(f.at("dw"), "fiber.dw"), kappa);
    }
    if (j.contains("frob")) in.frobenius = parse_image_list(j.at("frob"), "place.frob");
    return in;
}

TailKind parse_tail_kind(const std::string &s) {
    if (s == "rational") return TailKind::Rational;
    if (s == "quadratic") return TailKind::Quadratic;
    if (s == "listed") return TailKind::Listed;
    if (s == "sampled") return TailKind::Sampled;
    throw ParseError("unknown setup kind '" + s + "'");
}

} // namespace

SetupDescription parse_setup_json(const std::string &text) {
    const json j = parse_json_text(text);
    require_object(j, "setup");
    reject_unknown(j, {"kind", "d", "m", "j", "group_generators", "places", "tail", "zeta_residue"}, "setup");
    SetupDescription d;
    d.tail.kind = parse_tail_kind(get_string(j, "kind", "setup"));
    if (j.contains("d")) d.d = json_bigint(j.at("d"), "d");
    if (j.contains("m")) d.m = json_bigint(j.at("m"), "m");
    if (j.contains("j")) d.j = json_bigint(j.at("j"), "j");
    if (j.contains("group_generators")) {
        const auto &g = j.at("group_generators");
        if (!g.is_array()) throw ParseError("group_generators must be an array");
        for (const auto &gen : g) d.group_generators.push_back(parse_image_list(gen, "group_generators"));
    }
    if (j.contains("places")) {
        if (!j.at("places").is_array()) throw ParseError("places must be an array");
        for (const auto &p : j.at("places")) d.places.push_back(parse_place(p));
    }
    if (j.contains("tail")) {
        const auto &t = j.at("tail");
        require_object(t, "tail");
        reject_unknown(t, {"D", "bound", "seed"}, "tail");
        if (t.contains("D")) d.tail.discriminant = json_bigint(t.at("D"), "tail.D");
        if (t.contains("bound")) d.tail.bound = json_bigint(t.at("bound"), "tail.bound");
        if (t.contains("seed")) {
            if (!t.at("seed").is_number_unsigned()) throw ParseError("tail.seed must be a non-negative integer");
            d.tail.seed = t.at("seed").get<std::uint64_t>();
        }
    }
    if (d.tail.kind == TailKind::Quadratic && d.tail.discriminant == 0) throw ParseError("quadratic setup needs tail.D");
    if (d.tail.kind == TailKind::Listed && d.tail.bound == 0) throw ParseError("listed setup needs tail.bound");
    if (j.contains("zeta_residue")) {
        if (!j.at("zeta_residue").is_number()) throw ParseError("zeta_residue must be a number");
        d.zeta_residue = j.at("zeta_residue").get<double>();
    }
    return d;
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace csa
