#pragma once

// Text format for polynomial systems:
//
//   # comment
//   vars x, y, z
//   x^2 + y + z - 1
//   (x + y)*z^2 + 3/4*z + 1
//
// The `vars` line fixes the variable order x_1 < x_2 < ... left to right.
// One polynomial per line; explicit `*`; `p/q` only between integer literals.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mzd/errors.hpp"
#include "mzd/polyring.hpp"

namespace mzd {

struct SystemFile {
  VarOrderPtr order;
  std::vector<Polynomial> polys;
  std::string source_text;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t line, std::size_t col0, const VarOrderPtr& order)
      : s_(text), line_(line), col0_(col0), order_(order) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + pos_ + 1); }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc *= unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      Integer e = integer_literal();
      if (!e.fits_uint_p()) {
        pos_ = start;
        fail("exponent too large");
      }
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer integer_literal() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of line");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = integer_literal();
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip_ws();
        const std::size_t at = pos_;
        Integer den = integer_literal();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
        Rational q(num, den);
        q.canonicalize();
        return Polynomial::constant(order_, q);
      }
      return Polynomial::constant(order_, Rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      auto idx = order_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("undeclared variable '" + name + "'");
      }
      return Polynomial::variable(order_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col0_;
  const VarOrderPtr& order_;
};

inline std::string_view strip_comment(std::string_view line) {
  if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline bool blank(std::string_view s) {
  for (char c : s)
    if (c != ' ' && c != '\t' && c != '\r') return false;
  return true;
}

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace detail

/// Parses one polynomial under an existing variable order.
inline Polynomial parse_polynomial(std::string_view text, const VarOrderPtr& order,
                                   std::size_t line = 1) {
  return detail::ExprParser(text, line, 0, order).parse();
}

inline SystemFile parse_system(std::string_view text) {
  SystemFile sys;
  sys.source_text = std::string(text);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string_view line = detail::strip_comment(raw);
    if (detail::blank(line)) continue;

    if (!sys.order) {
      std::size_t i = 0;
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (line.substr(i, 4) != "vars" || (i + 4 < line.size() && !std::isspace(static_cast<unsigned char>(line[i + 4]))))
        throw ParseError("expected 'vars' declaration", line_no, i + 1);
      i += 4;
      std::vector<std::string> names;
      for (;;) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const std::size_t start = i;
        if (i >= line.size() || !detail::is_ident_start(line[i]))
          throw ParseError("expected variable name", line_no, i + 1);
        while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) ++i;
        std::string name(line.substr(start, i - start));
        for (const auto& n : names)
          if (n == name) throw ParseError("duplicate variable '" + name + "'", line_no, start + 1);
        names.push_back(std::move(name));
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        if (line[i] != ',') throw ParseError("expected ','", line_no, i + 1);
        ++i;
      }
      sys.order = VarOrder::make(std::move(names));
      continue;
    }
    sys.polys.push_back(detail::ExprParser(line, line_no, 0, sys.order).parse());
  }
  if (!sys.order) throw ParseError("missing 'vars' declaration", line_no, 1);
  if (sys.polys.empty()) throw ParseError("system has no polynomials", line_no, 1);
  return sys;
}

}  // namespace mzd
