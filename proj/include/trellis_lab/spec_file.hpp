#pragma once

// Text format for trellises.
//
//   # comment
//   field 2
//   length 3
//   symbols 1 1 1
//   states 1 1 2          (explicit form only)
//   constraint 0          (explicit form: one section per index, rows "in|symbol|out")
//   0|1|1
//   ...
//   generator 101 0:3     (product form: codeword and span start:len)
//
// Digit strings use one digit per entry for p <= 7 and comma-separated entries above.

#include <filesystem>
#include <string>
#include <string_view>

#include "trellis_lab/trellis.hpp"

namespace trellis_lab {

/// Throws ParseError (with a line number) on malformed input and on invalid trellises.
Trellis parse_spec(std::string_view text);
/// Explicit form with RREF constraint rows; parse_spec(serialize_spec(t)) == t.
std::string serialize_spec(const Trellis& t);

Trellis load_spec(const std::filesystem::path& path);
void save_spec(const std::filesystem::path& path, const Trellis& t);

/// Parses a digit string in the format above; ParseError(line) on bad digits.
Vec parse_digits(const Field& f, std::string_view s, std::size_t line = 0);

}  // namespace trellis_lab
