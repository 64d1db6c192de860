#pragma once

// Locale-independent number formatting and a line-oriented reader shared by
// the file formats.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geonet {

// Shortest form that round-trips, at most 17 significant digits.
std::string format_real(double value);

// Fixed number of significant digits (used for human-facing summaries).
std::string format_real(double value, int significant_digits);

// Reads significant lines: skips blank lines and lines whose first
// non-blank character is '#'. Tracks 1-based line numbers for errors.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next significant line, split on whitespace (and commas when
  // `comma_separated`), or nullopt at end of input.
  std::optional<std::vector<std::string_view>> next(bool comma_separated = false);

  // As next(), but throws ParseError mentioning `expected` at end of input.
  std::vector<std::string_view> require(std::string_view expected,
                                        bool comma_separated = false);

  std::size_t line() const { return line_; }

  // Comment lines seen so far, without the leading '#'.
  const std::vector<std::string>& comments() const { return comments_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t line_ = 0;
  std::vector<std::string> comments_;
};

double parse_real(std::string_view token, std::size_t line);
std::uint64_t parse_count(std::string_view token, std::size_t line);

// Throws ParseError unless `tokens` has exactly `count` entries.
void expect_fields(const std::vector<std::string_view>& tokens, std::size_t count,
                   std::size_t line, std::string_view what);

}  // namespace geonet
