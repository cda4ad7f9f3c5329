#include "csa/json_io.hpp"

#include "csa/errors.hpp"
#include "json_util.hpp"

namespace csa {

namespace {

json profile_json(const InvariantProfile &v) {
    json j;
    j["M"] = bigint_json(v.M());
    j["assignments"] = json::array();
    for (const auto &[key, value] : v.entries()) {
        j["assignments"].push_back({{"place", key.id}, {"value", bigint_json(value.value())}});
    }
    return j;
}

PlaceKey parse_place_key(const json &p) {
    PlaceKey key;
    key.id = get_string(p, "id", "place");
    key.kind = parse_place_kind(p.contains("kind") ? get_string(p, "kind", "place") : std::string("finite"));
    if (key.kind == PlaceKind::Finite) {
        if (!p.contains("norm")) throw ParseError("finite place '" + key.id + "' needs a norm");
        key.norm = json_bigint(p.at("norm"), "norm");
        if (key.norm < 2) throw ValidationError("norm of '" + key.id + "' must be at least 2");
    }
    return key;
}

} // namespace

std::string profile_to_json(const InvariantProfile &v) { return profile_json(v).dump(); }

InvariantProfile profile_from_json(const FieldSetup &setup, const std::string &text) {
    const json j = parse_json_text(text);
    require_object(j, "profile");
    reject_unknown(j, {"M", "assignments"}, "profile");
    if (!j.contains("M")) throw ParseError("profile needs M");
    InvariantProfile v(json_bigint(j.at("M"), "M"));
    if (j.contains("assignments")) {
        for (const auto &a : j.at("assignments")) {
            require_object(a, "assignment");
            reject_unknown(a, {"place", "value"}, "assignment");
            if (!a.contains("value")) throw ParseError("assignment needs a value");
            v.set(resolve_place(setup, get_string(a, "place", "assignment")), json_bigint(a.at("value"), "value"));
        }
    }
    return v;
}

LocalConstraint parse_constraint_json(const FieldSetup &setup, const std::string &text) {
    const json j = parse_json_text(text);
    require_object(j, "constraint");
    reject_unknown(j, {"tau", "xi"}, "constraint");
    LocalConstraint c;
    if (j.contains("tau")) c.tau = json_bigint(j.at("tau"), "tau");
    if (j.contains("xi")) {
        if (!j.at("xi").is_array()) throw ParseError("xi must be an array");
        for (const auto &a : j.at("xi")) {
            require_object(a, "xi entry");
            reject_unknown(a, {"place", "value"}, "xi entry");
            if (!a.contains("value")) throw ParseError("xi entry needs a value");
            const PlaceKey key = resolve_place(setup, get_string(a, "place", "xi entry"));
            if (c.contains(key.id)) throw ValidationError("place '" + key.id + "' appears twice in xi");
            c.assign(key, Residue(json_bigint(a.at("value"), "value"), setup.M()));
        }
    }
    validate_constraint(setup, c);
    return c;
}

std::string constraint_to_json(const LocalConstraint &c) {
    json j;
    j["tau"] = bigint_json(c.tau);
    j["xi"] = json::array();
    for (const auto &[key, v] : c.xi) j["xi"].push_back({{"place", key.id}, {"value", bigint_json(v.value())}});
    return j.dump();
}

BaseAlgebra parse_base_algebra_json(const std::string &text) {
    const json j = parse_json_text(text);
    require_object(j, "algebra");
    reject_unknown(j, {"m", "places"}, "algebra");
    if (!j.contains("m")) throw ParseError("algebra needs m");
    BaseAlgebra K;
    K.m = json_bigint(j.at("m"), "m");
    if (K.m < 1) throw ValidationError("m must be positive");
    if (j.contains("places")) {
        for (const auto &p : j.at("places")) {
            require_object(p, "place");
            reject_unknown(p, {"id", "kind", "norm", "kappa"}, "place");
            const PlaceKey key = parse_place_key(p);
            const BigInt kappa = p.contains("kappa") ? json_bigint(p.at("kappa"), "kappa") : BigInt(0);
            K.kappa.emplace_back(key, Residue(kappa, K.m));
        }
    }
    validate_base_algebra(K);
    return K;
}

EtaleData parse_etale_json(const std::string &text) {
    const json j = parse_json_text(text);
    require_object(j, "etale data");
    reject_unknown(j, {"d", "places"}, "etale data");
    if (!j.contains("d")) throw ParseError("etale data needs d");
    EtaleData E;
    E.d = json_bigint(j.at("d"), "d");
    if (j.contains("places")) {
        for (const auto &p : j.at("places")) {
            require_object(p, "place");
            reject_unknown(p, {"id", "kind", "norm", "factors"}, "place");
            PlaceSplitting ps{parse_place_key(p), {}};
            if (!p.contains("factors") || !p.at("factors").is_array()) throw ParseError("place needs a factors array");
            for (const auto &f : p.at("factors")) {
                if (f.is_string()) {
                    const std::string s = f.get<std::string>();
                    if (s == "R") {
                        ps.factors.push_back(SplittingFactor::infinite(ArchFactor::RealOverReal));
                    } else if (s == "C") {
                        ps.factors.push_back(SplittingFactor::infinite(ps.key.kind == PlaceKind::Complex
                                                                           ? ArchFactor::ComplexOverComplex
                                                                           : ArchFactor::ComplexOverReal));
                    } else {
                        throw ParseError("archimedean factor must be \"R\" or \"C\"");
                    }
                } else {
                    require_object(f, "factor");
                    reject_unknown(f, {"e", "f"}, "factor");
                    const BigInt e = f.contains("e") ? json_bigint(f.at("e"), "e") : BigInt(1);
                    const BigInt ff = f.contains("f") ? json_bigint(f.at("f"), "f") : BigInt(1);
                    ps.factors.push_back(SplittingFactor::finite(e, ff));
                }
            }
            E.places.push_back(std::move(ps));
        }
    }
    return E;
}

} // namespace csa
