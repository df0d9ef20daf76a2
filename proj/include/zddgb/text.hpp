// Small expression reader shared by the Boolean and Z/m polynomial formats.
#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zddgb {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(msg), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// True for characters allowed inside identifiers after the first one.
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '[' ||
         c == ']' || c == '.';
}

inline bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

/// Identifiers in order of first occurrence.
inline std::vector<std::string> scan_identifiers(std::string_view text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size();) {
    if (ident_start(text[i])) {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.emplace_back(text.substr(i, j - i));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    } else {
      ++i;
    }
  }
  return out;
}

/// Recursive-descent reader for sums of products with `^k` powers and
/// parentheses.  `Builder` supplies the arithmetic:
///   T constant(std::int64_t), std::optional<T> variable(std::string_view),
///   T add(T, T), T sub(T, T), T mul(T, T), T neg(T), T power(T, unsigned).
template <typename Builder>
class ExprReader {
 public:
  using Value = decltype(std::declval<Builder&>().constant(0));

  ExprReader(std::string_view text, Builder& b, std::size_t line = 1)
      : text_(text), b_(b), line_(line) {}

  Value read() {
    Value v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, pos_ + 1);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value expr() {
    Value acc;
    if (eat('-')) {
      acc = b_.neg(term());
    } else {
      eat('+');
      acc = term();
    }
    for (;;) {
      if (eat('+')) {
        acc = b_.add(std::move(acc), term());
      } else if (eat('-')) {
        acc = b_.sub(std::move(acc), term());
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = factor();
    while (eat('*')) acc = b_.mul(std::move(acc), factor());
    return acc;
  }

  Value factor() {
    Value base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent after '^'");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      base = b_.power(std::move(base), static_cast<unsigned>(e));
    }
    return base;
  }

  Value atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 18) fail("integer constant too large");
      return b_.constant(std::stoll(digits));
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      auto name = text_.substr(start, pos_ - start);
      auto v = b_.variable(name);
      if (!v) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return std::move(*v);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  Builder& b_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace zddgb
