#pragma once

// Parser for reflection words: whitespace-separated tokens r[+1;a1,...,anu],
// each optionally followed by ^-1 (reflections are involutions, so it is a no-op).

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "semilattice.hpp"

namespace eawg {

namespace detail {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : s_(text) {}

  std::vector<Root> parse() {
    std::vector<Root> out;
    skip_ws();
    while (pos_ < s_.size()) {
      out.push_back(token());
      skip_ws();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_), static_cast<std::int64_t>(pos_));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::int64_t integer() {
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) neg = s_[pos_++] == '-';
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected digit");
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = checked_add(checked_mul(v, 10), s_[pos_] - '0');
      ++pos_;
    }
    return neg ? -v : v;
  }
  Root token() {
    expect('r');
    expect('[');
    const auto sign_pos = pos_;
    const auto sign = integer();
    if (sign != 1 && sign != -1) {
      pos_ = sign_pos;
      fail("sign must be +1 or -1");
    }
    expect(';');
    Root a{static_cast<int>(sign), {}};
    a.coeffs.push_back(integer());
    while (pos_ < s_.size() && s_[pos_] == ',') {
      ++pos_;
      a.coeffs.push_back(integer());
    }
    expect(']');
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      expect('-');
      expect('1');
    }
    if (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_]))) fail("expected whitespace");
    return a;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<Root> parse_word(std::string_view text) { return detail::WordParser(text).parse(); }

/// Parses and checks every token against ctx.
inline std::vector<Root> parse_word(const SemilatticeContext& ctx, std::string_view text) {
  auto word = parse_word(text);
  for (const auto& a : word) {
    if (static_cast<int>(a.coeffs.size()) != ctx.rank())
      throw Error(ErrorKind::RankMismatch, to_string(a) + " has " + std::to_string(a.coeffs.size()) + " coordinates");
    require_root(ctx, a);
  }
  return word;
}

inline std::string to_string(const std::vector<Root>& word) {
  std::string s;
  for (const auto& a : word) s += (s.empty() ? "" : " ") + to_string(a);
  return s;
}

}  // namespace eawg
