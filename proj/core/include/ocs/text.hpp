#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ocs::text {

struct Token {
  std::string value;
  bool quoted = false;
  std::size_t column = 0;  // 1-based
};

/// Splits a line on whitespace. Double-quoted strings become single tokens
/// (with \" and \\ escapes); `#` outside quotes starts a comment.
/// Throws ParseError on an unterminated string.
std::vector<Token> tokenize(std::string_view line, std::size_t line_no);

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
bool iequals(std::string_view a, std::string_view b);

/// Quotes and escapes a string for the line formats.
std::string quote(std::string_view s);

/// Splits text into lines on LF, dropping a trailing CR if present.
std::vector<std::string_view> lines(std::string_view text);

/// "Ace of Clubs" -> "AceOfClubs"; drops everything but letters and digits.
std::string camel_case(std::string_view s);

/// "Jordan Count (4 as 4)" -> "Jordan_Count_4_as_4": spaces become
/// underscores, parentheses and other punctuation except '-' are dropped.
std::string mangle_identifier(std::string_view s);

}  // namespace ocs::text
