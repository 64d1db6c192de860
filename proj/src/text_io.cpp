#include "geonet/text_io.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "geonet/error.hpp"

namespace geonet {

std::string format_real(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw NumericalError("cannot format number");
  return std::string(buf.data(), ptr);
}

std::string format_real(double value, int significant_digits) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, significant_digits);
  if (ec != std::errc()) throw NumericalError("cannot format number");
  return std::string(buf.data(), ptr);
}

std::optional<std::vector<std::string_view>> LineReader::next(bool comma_separated) {
  while (std::getline(in_, buffer_)) {
    ++line_;
    if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
    const auto first = buffer_.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (buffer_[first] == '#') {
      comments_.push_back(buffer_.substr(first + 1));
      continue;
    }

    std::vector<std::string_view> tokens;
    std::string_view rest(buffer_);
    auto is_sep = [&](char c) {
      return c == ' ' || c == '\t' || (comma_separated && c == ',');
    };
    std::size_t i = 0;
    if (comma_separated) {
      // Empty fields are significant in CSV.
      std::size_t start = 0;
      for (i = 0; i <= rest.size(); ++i) {
        if (i == rest.size() || rest[i] == ',') {
          auto field = rest.substr(start, i - start);
          while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
            field.remove_prefix(1);
          while (!field.empty() && (field.back() == ' ' || field.back() == '\t'))
            field.remove_suffix(1);
          tokens.push_back(field);
          start = i + 1;
        }
      }
      return tokens;
    }
    while (i < rest.size()) {
      while (i < rest.size() && is_sep(rest[i])) ++i;
      const std::size_t start = i;
      while (i < rest.size() && !is_sep(rest[i])) ++i;
      if (i > start) tokens.push_back(rest.substr(start, i - start));
    }
    return tokens;
  }
  return std::nullopt;
}

std::vector<std::string_view> LineReader::require(std::string_view expected,
                                                  bool comma_separated) {
  auto tokens = next(comma_separated);
  if (!tokens) throw ParseError(0, "expected " + std::string(expected));
  return *tokens;
}

double parse_real(std::string_view token, std::size_t line) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ParseError(line, "invalid number '" + std::string(token) + "'");
  return value;
}

std::uint64_t parse_count(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line, "invalid non-negative integer '" + std::string(token) + "'");
  return value;
}

void expect_fields(const std::vector<std::string_view>& tokens, std::size_t count,
                   std::size_t line, std::string_view what) {
  if (tokens.size() != count)
    throw ParseError(line, "expected " + std::string(what) + " (" + std::to_string(count) +
                               " fields, got " + std::to_string(tokens.size()) + ")");
}

}  // namespace geonet
