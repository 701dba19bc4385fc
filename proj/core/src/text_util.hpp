#pragma once

// Small parsing helpers shared by the text formats.

#include <string>
#include <string_view>
#include <vector>

#include "dtmwb/space.hpp"

namespace dtmwb::detail {

std::string trim(std::string_view s);
std::string strip_comment(std::string_view s);
std::vector<std::string> split_lines(std::string_view text);
std::vector<std::string> split_ws(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
int parse_int(std::string_view s);
/// Parses "(r,c) (r,c)" or "(r,c),(r,c)".
std::vector<Cell> parse_cells(std::string_view s);
uint64_t fnv1a(std::string_view s, uint64_t h = 0xcbf29ce484222325ull);

}  // namespace dtmwb::detail
