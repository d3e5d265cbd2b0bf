#pragma once

// Text forms of IntPolynomial: a low-to-high coefficient list "c0,c1,...,cn"
// or a symbolic sum over one variable such as "z^4+z^3-z-1".

#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "equidist/errors.hpp"
#include "equidist/intpoly.hpp"

namespace equidist {

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  IntPolynomial parse() {
    skip_ws();
    if (at_end()) fail("empty polynomial");
    return text_.find(',') != std::string_view::npos ? parse_list() : parse_symbolic();
  }

 private:
  IntPolynomial parse_list() {
    std::vector<BigInt> coeffs;
    for (;;) {
      skip_ws();
      coeffs.push_back(parse_signed_integer());
      skip_ws();
      if (at_end()) break;
      if (peek() != ',') fail("expected ','");
      ++pos_;
    }
    return IntPolynomial(std::move(coeffs));
  }

  IntPolynomial parse_symbolic() {
    std::map<std::size_t, BigInt> terms;
    bool first = true;
    for (;;) {
      skip_ws();
      if (at_end()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      BigInt coeff = 1;
      bool have_coeff = false;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = parse_unsigned_integer();
        have_coeff = true;
        skip_ws();
        if (!at_end() && peek() == '*') {
          ++pos_;
          skip_ws();
          if (at_end() || !is_var(peek())) fail("expected variable after '*'");
        }
      }
      std::size_t power = 0;
      if (!at_end() && is_var(peek())) {
        take_var();
        power = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
          const BigInt e = parse_unsigned_integer();
          if (!e.fits_ulong_p() || e > 100000000) fail("exponent out of range");
          power = e.get_ui();
        }
      } else if (!have_coeff) {
        fail("expected coefficient or variable");
      }
      terms[power] += sign * coeff;
    }
    if (terms.empty()) fail("empty polynomial");
    std::vector<BigInt> coeffs(terms.rbegin()->first + 1);
    for (auto& [k, c] : terms) coeffs[k] = c;
    return IntPolynomial(std::move(coeffs));
  }

  bool is_var(char c) const { return c == 'z' || c == 'x'; }

  void take_var() {
    const char c = peek();
    if (var_ != '\0' && var_ != c) fail("mixed variables");
    var_ = c;
    ++pos_;
  }

  BigInt parse_signed_integer() {
    int sign = 1;
    if (!at_end() && (peek() == '+' || peek() == '-')) {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    return sign * parse_unsigned_integer();
  }

  BigInt parse_unsigned_integer() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected integer");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

  std::string_view text_;
  std::size_t pos_ = 0;
  char var_ = '\0';
};

}  // namespace detail

/// Parses either text form. Throws ParseError with the 1-based column.
inline IntPolynomial parse_polynomial(std::string_view text) {
  return detail::PolyParser(text).parse();
}

/// "c0,c1,...,cn"; the zero polynomial prints as "0".
inline std::string format_coefficients(const IntPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = 0; k <= p.degree(); ++k) {
    if (k) out += ',';
    out += p.coeff(k).get_str();
  }
  return out;
}

/// Symbolic form, highest power first, e.g. "2*z^3-z+7".
inline std::string format_symbolic(const IntPolynomial& p, char var = 'z') {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const BigInt& c = p.coeff(k);
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (c < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    if (k == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) {
      out += mag.get_str();
      out += '*';
    }
    out += var;
    if (k > 1) out += '^' + std::to_string(k);
  }
  return out;
}

}  // namespace equidist
