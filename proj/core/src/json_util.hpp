// Private helpers shared by the JSON readers and writers.

#pragma once

#include "csa/bigint.hpp"
#include "csa/errors.hpp"

#include <json.hpp>

#include <initializer_list>
#include <string>

namespace csa {

using json = nlohmann::ordered_json;

inline json parse_json_text(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

inline void require_object(const json &j, const std::string &what) {
    if (!j.is_object()) throw ParseError(what + " must be a JSON object");
}

inline void reject_unknown(const json &j, std::initializer_list<const char *> allowed, const std::string &what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char *a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ParseError("unknown field '" + it.key() + "' in " + what);
    }
}

inline std::string get_string(const json &j, const char *key, const std::string &what) {
    if (!j.contains(key) || !j.at(key).is_string()) throw ParseError(what + " needs a string field '" + key + "'");
    return j.at(key).get<std::string>();
}

/// Integers may be written as JSON numbers or as decimal strings.
inline BigInt json_bigint(const json &v, const std::string &what) {
    if (v.is_number_integer()) {
        return v.is_number_unsigned() ? BigInt(std::to_string(v.get<unsigned long long>()))
                                      : BigInt(std::to_string(v.get<long long>()));
    }
    if (v.is_string()) return parse_bigint(v.get<std::string>());
    throw ParseError(what + " must be an integer");
}

/// Small integers go out as numbers, larger ones as strings.
inline json bigint_json(const BigInt &v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

} // namespace csa
