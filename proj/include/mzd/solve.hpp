#pragma once

// Exact enumeration of rational zeros: back-substitution through triangular
// components, and a charset-driven variable-by-variable search for general systems.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "mzd/errors.hpp"
#include "mzd/mzdecomp.hpp"
#include "mzd/polyring.hpp"
#include "mzd/univariate.hpp"
#include "mzd/wucharset.hpp"

namespace mzd {

using Point = std::vector<Rational>;

struct RationalZeroSet {
  std::vector<Point> points;  // sorted lexicographically by coordinate x_1, x_2, ...
  bool complete = true;       // false when some level had a root outside Q
};

namespace detail {

inline bool point_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline Polynomial substitute_prefix(Polynomial f, const Point& prefix) {
  for (std::size_t v = 0; v < prefix.size(); ++v) f = f.substitute(v, prefix[v]);
  return f;
}

// Rational roots of a polynomial in x_var alone; clears `complete` if an irrational factor remains.
inline std::vector<Rational> level_roots(const Polynomial& u, std::size_t var, bool& complete) {
  const UPoly p = UPoly::from(u, var);
  const UPoly sf = squarefree_part(p);
  auto roots = rational_roots(sf);
  if (static_cast<int>(roots.size()) < sf.degree()) complete = false;
  return roots;
}

inline void back_substitute(std::span<const Polynomial> t, const Polynomial& sat, std::size_t level, Point& prefix,
                            bool& complete, std::vector<Point>& out) {
  if (level == t.size()) {
    out.push_back(prefix);
    return;
  }
  const Polynomial u = substitute_prefix(t[level], prefix);
  if (u.is_zero() && substitute_prefix(sat, prefix).is_zero()) return;
  if (u.is_zero())
    throw NotZeroDimensionalError("element " + std::to_string(level + 1) + " vanishes identically at a partial zero");
  if (u.is_constant()) return;
  for (const auto& r : level_roots(u, level, complete)) {
    prefix.push_back(r);
    back_substitute(t, sat, level + 1, prefix, complete, out);
    prefix.pop_back();
  }
}

inline void search(std::span<const Polynomial> system, std::size_t var, Point& prefix, bool& complete,
                   std::vector<Point>& out) {
  const std::size_t n = system.front().nvars();
  if (var == n) {
    out.push_back(prefix);
    return;
  }
  std::vector<Polynomial> reduced;
  for (const auto& f : system) {
    Polynomial g = substitute_prefix(f, prefix);
    if (g.is_zero()) continue;
    if (g.is_constant()) return;
    reduced.push_back(std::move(g));
  }
  if (reduced.empty()) throw NotZeroDimensionalError("variable " + std::to_string(var + 1) + " is free");
  const CharsetOutcome cs = wu_charset(reduced);
  if (cs.inconsistent) return;
  const Polynomial& c1 = cs.charset[0];
  if (c1.cls() != static_cast<int>(var))
    throw NotZeroDimensionalError("variable " + std::to_string(var + 1) + " is free");
  for (const auto& r : level_roots(c1, var, complete)) {
    prefix.push_back(r);
    search(reduced, var + 1, prefix, complete, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// Rational zeros of a triangular component [C_1(x_1), ..., C_n(x_1..x_n)] with P != 0.
inline RationalZeroSet rational_zeros(const Component& comp) {
  if (comp.kind != ComponentKind::triangular) throw UsageError("back-substitution needs a triangular component");
  for (std::size_t i = 0; i < comp.polys.size(); ++i)
    if (comp.polys[i].cls() != static_cast<int>(i))
      throw NotZeroDimensionalError("component is not a triangular set in x_1, ..., x_n");
  if (comp.polys.empty() || comp.polys.size() != comp.polys.front().nvars())
    throw NotZeroDimensionalError("component is not a triangular set in x_1, ..., x_n");
  RationalZeroSet out;
  Point prefix;
  std::vector<Point> pts;
  detail::back_substitute(comp.polys, comp.saturation, 0, prefix, out.complete, pts);
  for (auto& p : pts)
    if (comp.saturation.evaluate(p) != 0) out.points.push_back(std::move(p));
  std::sort(out.points.begin(), out.points.end(), detail::point_less);
  return out;
}

/// Every rational zero of `system` where `saturation` does not vanish.
inline RationalZeroSet rational_zeros_of_system(std::span<const Polynomial> system, const Polynomial& saturation) {
  if (system.empty()) throw UsageError("empty system");
  RationalZeroSet out;
  Point prefix;
  std::vector<Point> pts;
  detail::search(system, 0, prefix, out.complete, pts);
  for (auto& p : pts)
    if (saturation.evaluate(p) != 0) out.points.push_back(std::move(p));
  std::sort(out.points.begin(), out.points.end(), detail::point_less);
  return out;
}

inline RationalZeroSet rational_zeros_of_system(std::span<const Polynomial> system) {
  return rational_zeros_of_system(system, Polynomial::constant(system.front().order(), 1));
}

/// Rational zeros of any component: back-substitution when triangular, search otherwise.
inline RationalZeroSet component_zeros(const Component& comp) {
  if (comp.kind == ComponentKind::triangular) return rational_zeros(comp);
  return rational_zeros_of_system(comp.polys, comp.saturation);
}

/// T(xi) = 0 and P(xi) != 0.
inline bool component_contains(const Component& comp, std::span<const Rational> xi) {
  for (const auto& f : comp.polys)
    if (f.evaluate(xi) != 0) return false;
  return comp.saturation.evaluate(xi) != 0;
}

}  // namespace mzd
