// csa/setup_io.hpp: setup and constraint files (JSON).

#pragma once

#include "csa/field_setup.hpp"

#include <string>

namespace csa {

/// Parses a setup file body. Unknown fields, wrong types and bad kinds raise ParseError.
SetupDescription parse_setup_json(const std::string &text);

/// Reads the whole file; throws ParseError if it cannot be opened.
std::string read_text_file(const std::string &path);

} // namespace csa
