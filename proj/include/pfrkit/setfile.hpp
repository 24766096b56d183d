#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pfrkit/f2set.hpp"

namespace pfrkit {

// Set file format: first non-comment line "n=<dim>", then one element per line
// as a binary string of exactly n characters (coordinate 1 first), ascending.
// Lines starting with '#' are ignored. Parse errors carry 1-based line numbers.

F2Set parse_set_text(std::string_view text);
std::string format_set_text(const F2Set& a);

F2Set read_set_file(const std::filesystem::path& path);
void write_set_file(const std::filesystem::path& path, const F2Set& a);

}  // namespace pfrkit
