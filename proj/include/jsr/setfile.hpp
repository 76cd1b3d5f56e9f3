#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "jsr/words.hpp"

namespace jsr {

/// Parse failure with 1-based line/column position.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " +
                           msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Matrix-set text format:
//   # comment (anywhere; '#' to end of line)
//   field real|complex
//   dim D
//   <label>
//   D rows of D whitespace-separated entries
//   ... further generator blocks ...
// Real entries are decimals or p/q rationals; complex entries additionally
// accept a+bi / bi forms.  Rationals are converted to the nearest double.
MatrixSet parse_set_file(std::string_view text);
MatrixSet load_set_file(const std::filesystem::path& path);

// Shortest round-trip decimals; parse(emit(set)) reproduces the generators
// bit for bit.
std::string emit_set_file(const MatrixSet& set);
void save_set_file(const MatrixSet& set, const std::filesystem::path& path);

// Words file: one word per line, 1-based indices separated by commas.
std::vector<Word> parse_words_file(std::string_view text, int card);
std::vector<Word> load_words_file(const std::filesystem::path& path, int card);

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

}  // namespace jsr
