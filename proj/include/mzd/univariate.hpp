#pragma once

// Univariate helpers over Q: Euclidean gcd, Yun squarefree decomposition,
// rational roots by the rational root theorem and coprime factor bases.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mzd/errors.hpp"
#include "mzd/polyring.hpp"

namespace mzd {

/// Dense univariate polynomial, coeffs[d] multiplies x^d; trailing zeros trimmed.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

  static UPoly from(const Polynomial& f, std::size_t var) {
    std::vector<Rational> c(f.is_zero() ? 0 : f.degree_in(var) + 1);
    for (const auto& t : f.terms()) {
      for (std::size_t i = 0; i < t.exp.size(); ++i)
        if (i != var && t.exp[i] != 0) throw UnsupportedInputError("polynomial is not univariate");
      c[t.exp[var]] += t.coeff;
    }
    return UPoly(std::move(c));
  }

  Polynomial to_poly(const VarOrderPtr& order, std::size_t var) const {
    std::vector<Term> terms;
    for (std::size_t d = 0; d < c_.size(); ++d) {
      if (c_[d] == 0) continue;
      Exponents e(order->size(), 0);
      e[var] = static_cast<std::uint32_t>(d);
      terms.push_back({std::move(e), c_[d]});
    }
    return Polynomial::from_terms(order, std::move(terms));
  }

  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  const Rational& lc() const { return c_.back(); }

  UPoly monic() const {
    if (is_zero()) return *this;
    UPoly r = *this;
    const Rational l = lc();
    for (auto& x : r.c_) x /= l;
    return r;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return UPoly(std::move(d));
  }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }

  /// Euclidean division; returns {quotient, remainder}.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DegenerateInputError("division by zero polynomial");
    std::vector<Rational> rem = a.c_;
    if (a.degree() < b.degree()) return {UPoly{}, a};
    std::vector<Rational> q(a.c_.size() - b.c_.size() + 1);
    const Rational inv = 1 / b.lc();
    for (std::size_t k = q.size(); k-- > 0;) {
      const Rational f = rem[k + b.c_.size() - 1] * inv;
      q[k] = f;
      if (f == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= f * b.c_[j];
    }
    rem.resize(b.c_.size() - 1);
    return {UPoly(std::move(q)), UPoly(std::move(rem))};
  }

  friend bool operator==(const UPoly&, const UPoly&) = default;

  Rational evaluate(const Rational& x) const {
    Rational v = 0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Monic gcd (zero only when both inputs are zero).
inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

inline UPoly exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("inexact univariate division");
  return q;
}

/// Yun's algorithm: f = lc * prod a_k^k with a_k monic, squarefree, pairwise coprime.
/// Returns (a_k, k) for the nonconstant a_k only.
inline std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& f) {
  std::vector<std::pair<UPoly, unsigned>> out;
  if (f.degree() <= 0) return out;
  UPoly df = f.derivative();
  UPoly a0 = gcd(f, df);
  UPoly b = exact_div(f, a0);
  UPoly c = exact_div(df, a0);
  UPoly d = c;
  {
    auto bd = b.derivative();
    std::vector<Rational> diff(std::max(c.coeffs().size(), bd.coeffs().size()));
    for (std::size_t i = 0; i < c.coeffs().size(); ++i) diff[i] += c.coeffs()[i];
    for (std::size_t i = 0; i < bd.coeffs().size(); ++i) diff[i] -= bd.coeffs()[i];
    d = UPoly(std::move(diff));
  }
  for (unsigned k = 1; b.degree() > 0; ++k) {
    UPoly a = gcd(b, d);
    if (a.degree() > 0) out.emplace_back(a, k);
    b = exact_div(b, a);
    c = exact_div(d, a);
    auto bd = b.derivative();
    std::vector<Rational> diff(std::max(c.coeffs().size(), bd.coeffs().size()));
    for (std::size_t i = 0; i < c.coeffs().size(); ++i) diff[i] += c.coeffs()[i];
    for (std::size_t i = 0; i < bd.coeffs().size(); ++i) diff[i] -= bd.coeffs()[i];
    d = UPoly(std::move(diff));
  }
  return out;
}

inline UPoly squarefree_part(const UPoly& f) {
  if (f.degree() <= 0) return UPoly({Rational(1)});
  return exact_div(f, gcd(f, f.derivative())).monic();
}

namespace detail {

inline Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Pollard rho (Brent variant is not needed at these sizes).
inline Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer& v) {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      Integer diff = abs_int(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

inline void factor_into(Integer n, std::map<Integer, unsigned>& out) {
  if (n <= 1) return;
  for (unsigned long p = 2; p < 1000; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        n /= p;
        ++out[Integer(p)];
      }
    }
    if (n == 1) return;
  }
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    ++out[n];
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

/// Positive divisors of |n| (n != 0).
inline std::vector<Integer> divisors(const Integer& n) {
  std::map<Integer, unsigned> fac;
  factor_into(abs_int(n), fac);
  std::vector<Integer> divs{Integer(1)};
  for (const auto& [p, e] : fac) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

/// Integer-primitive coefficient vector of a nonzero UPoly.
inline std::vector<Integer> integer_coeffs(const UPoly& f) {
  Integer l = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : f.coeffs()) {
    out.push_back(c.get_num() * (l / c.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  for (auto& c : out) c /= g;
  return out;
}

}  // namespace detail

/// All distinct rational roots, ascending. Candidates p/q come from the
/// divisors of the trailing and leading integer coefficients.
inline std::vector<Rational> rational_roots(const UPoly& f) {
  if (f.is_zero()) throw DegenerateInputError("rational roots of the zero polynomial");
  std::vector<Rational> roots;
  // Work on the squarefree part: smaller coefficients, same roots.
  UPoly g = squarefree_part(f);
  if (g.degree() <= 0) return roots;
  if (g.coeffs().front() == 0) {
    roots.emplace_back(0);
    g = exact_div(g, UPoly({Rational(0), Rational(1)}));
  }
  while (g.degree() > 0) {
    auto ic = detail::integer_coeffs(g);
    const Integer& a0 = ic.front();
    const Integer& an = ic.back();
    // Cauchy bound on |root|.
    Rational bound = 0;
    for (std::size_t i = 0; i + 1 < ic.size(); ++i) {
      Rational r(detail::abs_int(ic[i]), detail::abs_int(an));
      r.canonicalize();
      if (r > bound) bound = r;
    }
    bound += 1;
    const auto ps = detail::divisors(a0);
    const auto qs = detail::divisors(an);
    std::optional<Rational> found;
    for (const auto& q : qs) {
      for (const auto& p : ps) {
        Rational cand(p, q);
        cand.canonicalize();
        if (cand.get_den() != q) continue;  // seen with a smaller q
        if (cand > bound) break;
        for (int s : {1, -1}) {
          Rational x = s > 0 ? cand : Rational(-cand);
          if (g.evaluate(x) == 0) {
            found = x;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
    roots.push_back(*found);
    g = exact_div(g, UPoly({Rational(-*found), Rational(1)}));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Primitive integer associate with positive leading coefficient.
inline Polynomial normalized(const Polynomial& f) { return f.primitive(); }

/// Rational-linear factors of a univariate squarefree polynomial plus the
/// remaining cofactor (nonlinear part without rational roots, or 1).
struct LinearSplit {
  std::vector<UPoly> linear;
  UPoly rest;
};

inline LinearSplit split_linear(const UPoly& squarefree) {
  LinearSplit out;
  out.rest = squarefree;
  for (const auto& r : rational_roots(squarefree)) {
    UPoly lin({Rational(-r), Rational(1)});
    out.linear.push_back(lin);
    out.rest = exact_div(out.rest, lin);
  }
  return out;
}

namespace detail {

inline bool univariate_less(const Polynomial& a, const Polynomial& b) {
  auto da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  return canonical_less(a, b);
}

// Refines `basis` (pairwise coprime, squarefree) with a new squarefree h.
inline void insert_coprime(std::vector<UPoly>& basis, UPoly h) {
  std::vector<UPoly> added;
  for (auto& l : basis) {
    if (h.degree() <= 0) break;
    UPoly d = gcd(l, h);
    if (d.degree() <= 0) continue;
    l = exact_div(l, d);
    h = exact_div(h, d);
    added.push_back(d);
  }
  std::erase_if(basis, [](const UPoly& p) { return p.degree() <= 0; });
  for (auto& a : added) basis.push_back(std::move(a));
  if (h.degree() > 0) basis.push_back(std::move(h));
}

}  // namespace detail

/// Pairwise coprime, squarefree, primitive polynomials whose roots are exactly
/// the roots of the product of `gs`, with every rational root split off as a
/// linear factor. Constants are ignored. All inputs must be univariate in one
/// common variable.
inline std::vector<Polynomial> coprime_split(std::span<const Polynomial> gs) {
  std::optional<std::size_t> var;
  VarOrderPtr order;
  std::vector<UPoly> basis;
  for (const auto& g : gs) {
    if (g.is_constant()) continue;
    auto v = g.univariate_var();
    if (!v) throw UnsupportedInputError("coprime_split: multivariate input " + g.to_string());
    if (var && *var != *v) throw UnsupportedInputError("coprime_split: inputs in different variables");
    var = v;
    order = g.order();
    detail::insert_coprime(basis, squarefree_part(UPoly::from(g, *v)));
  }
  std::vector<Polynomial> out;
  if (!var) return out;
  for (const auto& b : basis) {
    auto sp = split_linear(b);
    for (const auto& l : sp.linear) out.push_back(l.to_poly(order, *var).primitive());
    if (sp.rest.degree() > 0) out.push_back(sp.rest.to_poly(order, *var).primitive());
  }
  std::sort(out.begin(), out.end(), detail::univariate_less);
  return out;
}

/// Factors of a univariate f as (g, e) with f = c * prod g^e, the g pairwise
/// coprime, squarefree and primitive, rational-linear factors split off.
inline std::vector<std::pair<Polynomial, unsigned>> factor_with_multiplicity(const Polynomial& f) {
  std::vector<std::pair<Polynomial, unsigned>> out;
  if (f.is_constant()) return out;
  auto var = f.univariate_var();
  if (!var) throw UnsupportedInputError("factor_with_multiplicity: multivariate input " + f.to_string());
  for (const auto& [a, k] : squarefree_decomposition(UPoly::from(f, *var))) {
    auto sp = split_linear(a);
    for (const auto& l : sp.linear) out.emplace_back(l.to_poly(f.order(), *var).primitive(), k);
    if (sp.rest.degree() > 0) out.emplace_back(sp.rest.to_poly(f.order(), *var).primitive(), k);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return detail::univariate_less(a.first, b.first); });
  return out;
}

/// Whether univariate f and g (same variable, or constants) share a root.
inline bool share_root(const Polynomial& f, const Polynomial& g) {
  if (f.is_constant() || g.is_constant()) return f.is_zero() || g.is_zero();
  auto vf = f.univariate_var(), vg = g.univariate_var();
  if (!vf || !vg) throw UnsupportedInputError("share_root: multivariate input");
  if (*vf != *vg) return true;  // a common zero always exists in distinct variables
  return gcd(UPoly::from(f, *vf), UPoly::from(g, *vg)).degree() > 0;
}

}  // namespace mzd
