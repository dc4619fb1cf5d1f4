#pragma once

// Sparse multivariate polynomials over Q with a fixed variable order,
// pseudo-division and successive pseudo-remainders.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mzd/errors.hpp"

namespace mzd {

using Integer = mpz_class;
using Rational = mpq_class;

/// Variables x_1 < x_2 < ... < x_n. Index 0 is the lowest variable.
class VarOrder {
 public:
  explicit VarOrder(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw UsageError("variable order must not be empty");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
      if (n.empty()) throw UsageError("empty variable name");
      if (!seen.insert(n).second) throw UsageError("duplicate variable '" + n + "'");
    }
  }

  static std::shared_ptr<const VarOrder> make(std::vector<std::string> names) {
    return std::make_shared<const VarOrder>(std::move(names));
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> index_of(std::string_view n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return i;
    return std::nullopt;
  }

  bool operator==(const VarOrder&) const = default;

 private:
  std::vector<std::string> names_;
};

using VarOrderPtr = std::shared_ptr<const VarOrder>;

using Exponents = std::vector<std::uint32_t>;

namespace detail {

// Lexicographic with the highest-index variable most significant.
inline int lex_compare(const Exponents& a, const Exponents& b) noexcept {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

inline Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace detail

struct Term {
  Exponents exp;
  Rational coeff;
};

/// Canonical sparse polynomial: terms sorted strictly descending in lex order
/// (x_n most significant), no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(VarOrderPtr order) : order_(std::move(order)) { require_order(); }

  static Polynomial zero(VarOrderPtr order) { return Polynomial(std::move(order)); }

  static Polynomial constant(VarOrderPtr order, const Rational& c) {
    Polynomial p(std::move(order));
    if (c != 0) p.terms_.push_back({Exponents(p.nvars(), 0), canonical(c)});
    return p;
  }

  static Polynomial variable(VarOrderPtr order, std::size_t index, std::uint32_t power = 1) {
    Polynomial p(std::move(order));
    if (index >= p.nvars()) throw UsageError("variable index out of range");
    Exponents e(p.nvars(), 0);
    e[index] = power;
    p.terms_.push_back({std::move(e), Rational(1)});
    return p;
  }

  static Polynomial monomial(VarOrderPtr order, Exponents exp, const Rational& c) {
    Polynomial p(std::move(order));
    if (exp.size() != p.nvars()) throw UsageError("exponent vector length mismatch");
    if (c != 0) p.terms_.push_back({std::move(exp), canonical(c)});
    return p;
  }

  /// Builds a canonical polynomial from arbitrary (unsorted, repeated) terms.
  static Polynomial from_terms(VarOrderPtr order, std::vector<Term> terms) {
    Polynomial p(std::move(order));
    for (auto& t : terms) {
      if (t.exp.size() != p.nvars()) throw UsageError("exponent vector length mismatch");
      t.coeff.canonicalize();
    }
    p.terms_ = canonicalize(std::move(terms));
    return p;
  }

  const VarOrderPtr& order() const noexcept { return order_; }
  std::size_t nvars() const noexcept { return order_ ? order_->size() : 0; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t nterms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && is_unit_exponent(terms_.front().exp));
  }

  /// Value of a constant polynomial.
  Rational constant_value() const {
    if (!is_constant()) throw UsageError("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_.front().coeff;
  }

  /// Index of the main variable, -1 for constants (including zero).
  int cls() const noexcept {
    if (terms_.empty()) return -1;
    const auto& e = terms_.front().exp;
    for (std::size_t i = e.size(); i-- > 0;)
      if (e[i] != 0) return static_cast<int>(i);
    return -1;
  }

  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exp.at(var));
    return d;
  }

  std::uint32_t total_degree() const {
    if (is_zero()) throw DegenerateInputError("total degree of the zero polynomial");
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, std::accumulate(t.exp.begin(), t.exp.end(), 0u));
    return d;
  }

  /// Leading coefficient in the canonical term order.
  const Rational& leading_coeff() const {
    if (is_zero()) throw DegenerateInputError("leading coefficient of the zero polynomial");
    return terms_.front().coeff;
  }

  /// Flags of the variables that actually occur.
  std::vector<bool> occurring() const {
    std::vector<bool> occ(nvars(), false);
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < t.exp.size(); ++i)
        if (t.exp[i] != 0) occ[i] = true;
    return occ;
  }

  /// The single occurring variable, or nullopt when constant or multivariate.
  std::optional<std::size_t> univariate_var() const {
    auto occ = occurring();
    std::optional<std::size_t> v;
    for (std::size_t i = 0; i < occ.size(); ++i) {
      if (!occ[i]) continue;
      if (v) return std::nullopt;
      v = i;
    }
    return v;
  }

  /// Coefficient of var^deg, as a polynomial free of var.
  Polynomial coefficient_in(std::size_t var, std::uint32_t deg) const {
    Polynomial out(order_);
    for (const auto& t : terms_) {
      if (t.exp.at(var) != deg) continue;
      Term c = t;
      c.exp[var] = 0;
      out.terms_.push_back(std::move(c));
    }
    // Zeroing one exponent of a lex-sorted list keeps it sorted only when
    // all retained terms shared that exponent, which they do.
    return out;
  }

  /// Dense coefficient list in var: result[d] is the coefficient of var^d.
  std::vector<Polynomial> coefficients_in(std::size_t var) const {
    std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
    for (const auto& t : terms_) {
      Term c = t;
      c.exp[var] = 0;
      buckets[t.exp[var]].push_back(std::move(c));
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
      Polynomial p(order_);
      p.terms_ = canonicalize(std::move(b));
      out.push_back(std::move(p));
    }
    return out;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return add(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return add(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same_order(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.order_);
    if (a.terms_.size() == 1) return b.times_term(a.terms_.front());
    if (b.terms_.size() == 1) return a.times_term(b.terms_.front());
    const Polynomial& small = a.terms_.size() <= b.terms_.size() ? a : b;
    const Polynomial& large = &small == &a ? b : a;
    std::vector<Term> prods;
    prods.reserve(small.terms_.size() * large.terms_.size());
    const std::size_t n = a.nvars();
    for (const auto& s : small.terms_) {
      for (const auto& l : large.terms_) {
        Term t{Exponents(n), s.coeff * l.coeff};
        for (std::size_t i = 0; i < n; ++i) t.exp[i] = s.exp[i] + l.exp[i];
        prods.push_back(std::move(t));
      }
    }
    Polynomial r(a.order_);
    r.terms_ = canonicalize(std::move(prods));
    return r;
  }

  friend Polynomial operator*(const Rational& c, const Polynomial& p) { return p.scaled(c); }
  friend Polynomial operator*(const Polynomial& p, const Rational& c) { return p.scaled(c); }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    check_same_order(a, b);
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].exp != b.terms_[i].exp) return false;
    }
    return true;
  }

  Polynomial scaled(const Rational& c) const {
    if (c == 0) return Polynomial(order_);
    const Rational k = canonical(c);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff *= k;
    return r;
  }

  /// this * var^e.
  Polynomial shifted(std::size_t var, std::uint32_t e) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.exp.at(var) += e;
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(order_, 1);
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e > 0) base = base * base;
    }
    return result;
  }

  Rational evaluate(std::span<const Rational> raw) const {
    if (raw.size() != nvars()) throw UsageError("point dimension mismatch");
    std::vector<Rational> point(raw.begin(), raw.end());
    for (auto& q : point) q.canonicalize();
    Rational sum = 0;
    for (const auto& t : terms_) {
      Rational v = t.coeff;
      for (std::size_t i = 0; i < t.exp.size(); ++i) {
        if (t.exp[i] == 0) continue;
        Rational p;
        mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), t.exp[i]);
        mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), t.exp[i]);
        v *= p;
      }
      sum += v;
    }
    return sum;
  }

  /// Replaces var by a rational value; the variable stays in the order with exponent 0.
  Polynomial substitute(std::size_t var, const Rational& raw) const {
    const Rational value = canonical(raw);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Term c = t;
      if (c.exp.at(var) != 0) {
        Rational p;
        mpz_pow_ui(p.get_num_mpz_t(), value.get_num_mpz_t(), c.exp[var]);
        mpz_pow_ui(p.get_den_mpz_t(), value.get_den_mpz_t(), c.exp[var]);
        c.coeff *= p;
        c.exp[var] = 0;
      }
      if (c.coeff != 0) out.push_back(std::move(c));
    }
    Polynomial r(order_);
    r.terms_ = canonicalize(std::move(out));
    return r;
  }

  /// f(X + shift), computed exactly by binomial expansion of every term.
  Polynomial taylor_shift(std::span<const Rational> raw) const {
    if (raw.size() != nvars()) throw UsageError("shift dimension mismatch");
    std::vector<Rational> shift(raw.begin(), raw.end());
    for (auto& q : shift) q.canonicalize();
    Polynomial r = *this;
    for (std::size_t var = 0; var < nvars(); ++var) {
      if (shift[var] == 0) continue;
      std::vector<Term> out;
      for (const auto& t : r.terms_) {
        const std::uint32_t e = t.exp[var];
        Rational power = 1;  // shift^(e-k), built from k = e downward
        for (std::uint32_t k = e + 1; k-- > 0;) {
          Term c = t;
          c.exp[var] = k;
          c.coeff *= Rational(detail::binomial(e, k)) * power;
          out.push_back(std::move(c));
          power *= shift[var];
        }
      }
      r.terms_ = canonicalize(std::move(out));
    }
    return r;
  }

  Polynomial derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.exp.at(var) == 0) continue;
      Term c = t;
      c.coeff *= t.exp[var];
      c.exp[var] -= 1;
      out.push_back(std::move(c));
    }
    Polynomial r(order_);
    r.terms_ = canonicalize(std::move(out));
    return r;
  }

  /// Integer-primitive associate with positive leading coefficient (0 stays 0).
  Polynomial primitive() const {
    if (is_zero()) return *this;
    Integer lcm_den = 1;
    for (const auto& t : terms_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), t.coeff.get_den_mpz_t());
    Integer g = 0;
    for (const auto& t : terms_) {
      Integer num = t.coeff.get_num() * (lcm_den / t.coeff.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    }
    Rational factor(lcm_den, g);
    factor.canonicalize();
    if (terms_.front().coeff < 0) factor = -factor;
    return scaled(factor);
  }

  /// Canonical text: terms in descending order, e.g. "2*y + x^2 - 1/3".
  std::string to_string() const {
    if (!order_) return "0";
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      const bool neg = t.coeff < 0;
      Rational mag = neg ? Rational(-t.coeff) : t.coeff;
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < t.exp.size(); ++i) {
        if (t.exp[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += order_->name(i);
        if (t.exp[i] > 1) mono += "^" + std::to_string(t.exp[i]);
      }
      if (mono.empty()) {
        out += mag.get_str();
      } else if (mag == 1) {
        out += mono;
      } else {
        out += mag.get_str() + "*" + mono;
      }
    }
    return out;
  }

  static void check_same_order(const Polynomial& a, const Polynomial& b) {
    if (!a.order_ || !b.order_) throw UsageError("polynomial has no variable order");
    if (a.order_ != b.order_ && !(*a.order_ == *b.order_))
      throw UsageError("polynomials use different variable orders");
  }

 private:
  void require_order() const {
    if (!order_) throw UsageError("polynomial needs a variable order");
  }

  static bool is_unit_exponent(const Exponents& e) noexcept {
    return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
  }

  // GMP arithmetic expects reduced fractions; mpq_class(num, den) does not reduce.
  static Rational canonical(Rational c) {
    c.canonicalize();
    return c;
  }

  static std::vector<Term> canonicalize(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return detail::lex_compare(a.exp, b.exp) > 0; });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
      if (!out.empty() && out.back().exp == t.exp) {
        out.back().coeff += t.coeff;
      } else {
        if (!out.empty() && out.back().coeff == 0) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().coeff == 0) out.pop_back();
    return out;
  }

  Polynomial times_term(const Term& m) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) {
      t.coeff *= m.coeff;
      for (std::size_t i = 0; i < t.exp.size(); ++i) t.exp[i] += m.exp[i];
    }
    return r;
  }

  static Polynomial add(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_same_order(a, b);
    Polynomial r(a.order_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size()) c = -1;
      else if (j == b.terms_.size()) c = 1;
      else c = detail::lex_compare(a.terms_[i].exp, b.terms_[j].exp);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        Term t = b.terms_[j++];
        if (subtract) t.coeff = -t.coeff;
        r.terms_.push_back(std::move(t));
      } else {
        Rational s = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                              : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
        if (s != 0) r.terms_.push_back({a.terms_[i].exp, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  VarOrderPtr order_;
  std::vector<Term> terms_;
};

/// Deterministic total order on polynomials: fewer terms first, then canonical text.
inline bool canonical_less(const Polynomial& a, const Polynomial& b) {
  if (a.nterms() != b.nterms()) return a.nterms() < b.nterms();
  return a.to_string() < b.to_string();
}

// ---------------------------------------------------------------------------
// Main-variable view

struct MainVarView {
  int cls = -1;  // index of the main variable
  std::uint32_t ldeg = 0;
  Polynomial initial;
  Polynomial reductum;
};

inline MainVarView main_var_view(const Polynomial& f) {
  if (f.is_zero()) throw DegenerateInputError("main variable of the zero polynomial");
  const int c = f.cls();
  if (c < 0) throw DegenerateInputError("main variable of a constant: " + f.to_string());
  const auto var = static_cast<std::size_t>(c);
  MainVarView v;
  v.cls = c;
  v.ldeg = f.degree_in(var);
  v.initial = f.coefficient_in(var, v.ldeg);
  v.reductum = f - v.initial.shifted(var, v.ldeg);
  return v;
}

inline Polynomial initial_of(const Polynomial& f) { return main_var_view(f).initial; }

// ---------------------------------------------------------------------------
// Exact multivariate division

/// Quotient of b / a when a divides b exactly, nullopt otherwise.
inline std::optional<Polynomial> exact_quotient(const Polynomial& b, const Polynomial& a) {
  Polynomial::check_same_order(a, b);
  if (a.is_zero()) throw DegenerateInputError("division by the zero polynomial");
  Polynomial rem = b;
  Polynomial quot = Polynomial::zero(b.order());
  const Term& lead = a.terms().front();
  while (!rem.is_zero()) {
    const Term& r = rem.terms().front();
    Exponents e(r.exp.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (r.exp[i] < lead.exp[i]) return std::nullopt;
      e[i] = r.exp[i] - lead.exp[i];
    }
    Polynomial t = Polynomial::monomial(b.order(), std::move(e), r.coeff / lead.coeff);
    quot += t;
    rem -= t * a;
  }
  return quot;
}

inline bool divides(const Polynomial& a, const Polynomial& b) { return exact_quotient(b, a).has_value(); }

// ---------------------------------------------------------------------------
// Pseudo-division

/// multiplier * f = quotient * g + remainder with deg(remainder, x) < deg(g, x).
/// The multiplier divides initial(g)^exponent; it equals it when no step
/// shared a monomial factor between the initial and the leading coefficient.
struct PremCertificate {
  unsigned exponent = 0;
  Polynomial multiplier;
  Polynomial quotient;
  Polynomial remainder;
};

namespace detail {

// Largest monomial dividing every term of both a and b (coefficient 1).
inline Exponents common_monomial(const Polynomial& a, const Polynomial& b) {
  Exponents e = a.terms().front().exp;
  for (const auto* p : {&a, &b})
    for (const auto& t : p->terms())
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], t.exp[i]);
  return e;
}

inline Polynomial divide_monomial(const Polynomial& p, const Exponents& m) {
  std::vector<Term> terms = p.terms();
  for (auto& t : terms)
    for (std::size_t i = 0; i < m.size(); ++i) t.exp[i] -= m[i];
  return Polynomial::from_terms(p.order(), std::move(terms));
}

}  // namespace detail

/// Pseudo-remainder of f by g w.r.t. variable `var`. Each elimination step
/// multiplies by the initial divided by its common monomial factor with the
/// current leading coefficient, so no step introduces a spurious monomial.
inline PremCertificate prem(const Polynomial& f, const Polynomial& g, std::size_t var) {
  Polynomial::check_same_order(f, g);
  const std::uint32_t d = g.degree_in(var);
  if (d == 0) throw UsageError("prem: divisor is constant in " + g.order()->name(var));
  const Polynomial init = g.coefficient_in(var, d);
  const Polynomial tail = g - init.shifted(var, d);

  PremCertificate cert{0, Polynomial::constant(f.order(), 1), Polynomial::zero(f.order()), f};
  while (!cert.remainder.is_zero()) {
    const std::uint32_t e = cert.remainder.degree_in(var);
    if (e < d) break;
    Polynomial lc = cert.remainder.coefficient_in(var, e);
    const Polynomial rest = cert.remainder - lc.shifted(var, e);
    Polynomial step_init = init;
    const Exponents common = detail::common_monomial(init, lc);
    if (std::any_of(common.begin(), common.end(), [](std::uint32_t x) { return x != 0; })) {
      step_init = detail::divide_monomial(init, common);
      lc = detail::divide_monomial(lc, common);
    }
    const Polynomial t = lc.shifted(var, e - d);
    // step_init * r - t * g: the var^e terms cancel.
    cert.remainder = step_init * rest - t * tail;
    cert.quotient = step_init * cert.quotient + t;
    cert.multiplier = step_init * cert.multiplier;
    ++cert.exponent;
  }
  return cert;
}

struct PremStep {
  std::size_t chain_index;  // which element of the chain was used
  PremCertificate certificate;
};

struct PremSeqResult {
  Polynomial remainder;
  std::vector<PremStep> steps;  // highest main variable first
};

/// Successive pseudo-remainder of f w.r.t. a chain with strictly increasing
/// main variables, reducing from the top element downward.
inline PremSeqResult prem_seq(const Polynomial& f, std::span<const Polynomial> chain) {
  PremSeqResult out{f, {}};
  for (std::size_t j = chain.size(); j-- > 0;) {
    if (out.remainder.is_zero()) break;
    const int c = chain[j].cls();
    if (c < 0) {
      // A nonzero constant generates the unit ideal.
      if (!chain[j].is_zero()) {
        PremCertificate cert{0, Polynomial::constant(f.order(), 1),
                             out.remainder.scaled(1 / chain[j].constant_value()),
                             Polynomial::zero(f.order())};
        out.steps.push_back({j, std::move(cert)});
        out.remainder = Polynomial::zero(f.order());
      }
      break;
    }
    auto cert = prem(out.remainder, chain[j], static_cast<std::size_t>(c));
    out.remainder = cert.remainder;
    out.steps.push_back({j, std::move(cert)});
  }
  return out;
}

inline Polynomial prem_seq_remainder(const Polynomial& f, std::span<const Polynomial> chain) {
  return prem_seq(f, chain).remainder;
}

/// Product of total degrees; the Bezout-type bound on the number of zeros.
inline Integer bezout_product(std::span<const Polynomial> system) {
  Integer b = 1;
  for (const auto& f : system) {
    if (f.is_zero() || f.is_constant()) throw UsageError("Bezout bound of a constant polynomial");
    b *= f.total_degree();
  }
  return b;
}

}  // namespace mzd
