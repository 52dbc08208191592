#pragma once

#include <string>
#include <string_view>

#include "morphocat/error.hpp"

namespace morphocat {

// Character cursor over UTF-8 text with line/column tracking. Columns count
// code points, starting at 1. "//" starts a comment running to end of line.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // Peek without skipping whitespace first.
  char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool starts_with(std::string_view s) {
    skip_ws();
    return text_.substr(pos_, s.size()) == s;
  }

  bool consume(std::string_view s) {
    if (!starts_with(s)) return false;
    for (std::size_t i = 0; i < s.size(); ++i) advance();
    return true;
  }

  void expect(std::string_view s) {
    if (!consume(s)) fail("expected '" + std::string(s) + "'");
  }

  // Identifier-like run: ASCII letters, digits, the extra characters given,
  // and any non-ASCII code point.
  std::string name(std::string_view extra = "_") {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_], extra)) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  // Run of characters up to (not including) whitespace or any of `stops`.
  std::string word(std::string_view stops) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) &&
           stops.find(text_[pos_]) == std::string_view::npos)
      advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  // "..." with \" and \\ escapes.
  std::string quoted() {
    skip_ws();
    if (peek_raw() != '"') fail("expected quoted string");
    advance();
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
      out.push_back(text_[pos_]);
      advance();
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    advance();
    return out;
  }

  [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, line_, column_); }

  int line() {
    skip_ws();
    return line_;
  }
  int column() {
    skip_ws();
    return column_;
  }

  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  static bool is_name_char(char c, std::string_view extra) {
    auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || extra.find(c) != std::string_view::npos;
  }

 private:
  void advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++column_;
    }
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      if (is_space(text_[pos_])) {
        advance();
      } else if (text_.substr(pos_, 2) == "//") {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace morphocat
