// csa/json_io.hpp: JSON forms of profiles, constraints and outer-extension inputs.

#pragma once

#include "csa/brauer.hpp"
#include "csa/census.hpp"
#include "csa/outer.hpp"

#include <string>

namespace csa {

/// {"M": .., "assignments": [{"place": id, "value": v}, ...]} on one line, places in order.
std::string profile_to_json(const InvariantProfile &v);

/// Place ids are resolved against the setup.
InvariantProfile profile_from_json(const FieldSetup &setup, const std::string &text);

/// {"tau": t, "xi": [{"place": id, "value": v}]}; values are reduced modulo M.
LocalConstraint parse_constraint_json(const FieldSetup &setup, const std::string &text);
std::string constraint_to_json(const LocalConstraint &c);

/// {"m": m, "places": [{"id", "kind", "norm", "kappa"}]}
BaseAlgebra parse_base_algebra_json(const std::string &text);

/// {"d": d, "places": [{"id", "kind", "norm", "factors": [{"e", "f"}] or ["R", "C"]}]}
EtaleData parse_etale_json(const std::string &text);

} // namespace csa
