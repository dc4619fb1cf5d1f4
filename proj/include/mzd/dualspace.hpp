#pragma once

// Local multiplicity at a rational point via the dual space of differential
// functionals, computed from exact order-bounded constraint matrices.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mzd/errors.hpp"
#include "mzd/polyring.hpp"

namespace mzd {

/// Multi-index j of the scaled operator d_j = 1/(j_1!...j_n!) d^|j| / dx^j.
struct DiffIndex {
  Exponents j;

  std::uint32_t order() const {
    std::uint32_t s = 0;
    for (auto e : j) s += e;
    return s;
  }
  auto operator<=>(const DiffIndex&) const = default;
};

/// v = sum_j coeffs[j] * d_j[point].
struct Functional {
  std::vector<Rational> point;
  std::map<DiffIndex, Rational> coeffs;

  std::uint32_t order() const {
    std::uint32_t s = 0;
    for (const auto& [j, c] : coeffs) s = std::max(s, j.order());
    return s;
  }
};

struct DualBasis {
  std::uint32_t order = 0;  // sigma: highest order among basis functionals
  std::vector<Functional> basis;
  std::size_t dimension = 0;
  std::vector<std::size_t> dims_by_order;  // dim D^0, D^1, ..., up to stabilization
};

namespace detail {

inline Rational coefficient_at(const Polynomial& local, const Exponents& j) {
  for (const auto& t : local.terms())
    if (t.exp == j) return t.coeff;
  return 0;
}

inline void monomials_up_to(std::size_t n, std::uint32_t alpha, Exponents& cur, std::size_t var,
                            std::uint32_t used, std::vector<Exponents>& out) {
  if (var == n) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t e = 0; used + e <= alpha; ++e) {
    cur[var] = e;
    monomials_up_to(n, alpha, cur, var + 1, used + e, out);
  }
  cur[var] = 0;
}

inline std::vector<Exponents> monomials_up_to(std::size_t n, std::uint32_t alpha) {
  std::vector<Exponents> out;
  Exponents cur(n, 0);
  monomials_up_to(n, alpha, cur, 0, 0, out);
  std::sort(out.begin(), out.end(), [](const Exponents& a, const Exponents& b) {
    std::uint32_t sa = 0, sb = 0;
    for (auto e : a) sa += e;
    for (auto e : b) sb += e;
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return out;
}

inline std::uint32_t exp_order(const Exponents& e) {
  std::uint32_t s = 0;
  for (auto x : e) s += x;
  return s;
}

/// Shifts F to local coordinates at xi after checking that xi is a common zero.
inline std::vector<Polynomial> localize(std::span<const Polynomial> F, std::span<const Rational> xi) {
  if (F.empty()) throw UsageError("dual space of an empty system");
  std::vector<Polynomial> local;
  for (const auto& f : F) {
    if (f.nvars() != xi.size()) throw UsageError("point dimension mismatch");
    if (f.is_zero()) continue;
    if (f.evaluate(xi) != 0) throw UsageError("point is not a zero of " + f.to_string());
    local.push_back(f.taylor_shift(xi));
  }
  return local;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    const Rational inv = 1 / m[row][c];
    for (std::size_t k = c; k < cols; ++k)
      if (m[row][k] != 0) m[row][k] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = c; k < cols; ++k)
        if (m[row][k] != 0) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  m.resize(row);
  return pivots;
}

struct OrderSpace {
  std::vector<Exponents> unknowns;
  std::vector<std::vector<Rational>> rref;
  std::vector<std::size_t> pivots;
  std::size_t dim() const { return unknowns.size() - pivots.size(); }
};

inline OrderSpace order_space(std::span<const Polynomial> local, std::size_t n, std::uint32_t alpha) {
  OrderSpace s;
  s.unknowns = monomials_up_to(n, alpha);
  std::map<Exponents, std::size_t> col;
  for (std::size_t i = 0; i < s.unknowns.size(); ++i) col.emplace(s.unknowns[i], i);

  std::vector<std::vector<Rational>> rows;
  for (const auto& g : local) {
    for (const auto& beta : s.unknowns) {
      std::vector<Rational> row(s.unknowns.size());
      bool any = false;
      for (const auto& t : g.terms()) {
        Exponents e = t.exp;
        for (std::size_t v = 0; v < n; ++v) e[v] += beta[v];
        if (exp_order(e) > alpha) continue;
        row[col.at(e)] += t.coeff;
        any = true;
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  s.pivots = rref(rows, s.unknowns.size());
  s.rref = std::move(rows);
  return s;
}

inline std::vector<Functional> nullspace_basis(const OrderSpace& s, std::span<const Rational> xi) {
  std::vector<bool> is_pivot(s.unknowns.size(), false);
  for (auto p : s.pivots) is_pivot[p] = true;
  std::vector<Functional> out;
  for (std::size_t free = 0; free < s.unknowns.size(); ++free) {
    if (is_pivot[free]) continue;
    Functional f;
    f.point.assign(xi.begin(), xi.end());
    f.coeffs[DiffIndex{s.unknowns[free]}] = 1;
    for (std::size_t r = 0; r < s.rref.size(); ++r) {
      const Rational& c = s.rref[r][free];
      if (c != 0) f.coeffs[DiffIndex{s.unknowns[s.pivots[r]]}] = -c;
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace detail

/// d_j[xi](f): the coefficient of (X - xi)^j in the Taylor expansion of f at xi.
inline Rational apply_functional(const DiffIndex& j, std::span<const Rational> xi, const Polynomial& f) {
  if (j.j.size() != f.nvars() || xi.size() != f.nvars()) throw UsageError("dimension mismatch");
  return detail::coefficient_at(f.taylor_shift(xi), j.j);
}

inline Rational apply_functional(const Functional& v, const Polynomial& f) {
  const Polynomial local = f.taylor_shift(v.point);
  Rational s = 0;
  for (const auto& [j, c] : v.coeffs) s += c * detail::coefficient_at(local, j.j);
  return s;
}

/// dim of the order-alpha part of the dual space of <F> at xi.
inline std::size_t dual_dim_at_order(std::span<const Polynomial> F, std::span<const Rational> xi,
                                     std::uint32_t alpha) {
  const auto local = detail::localize(F, xi);
  return detail::order_space(local, xi.size(), alpha).dim();
}

/// Iterates alpha until dim stabilizes. Throws CapExceededError when alpha
/// passes `cap` (default: Bezout bound of F) without stabilizing.
inline DualBasis multiplicity(std::span<const Polynomial> F, std::span<const Rational> xi,
                              std::optional<std::uint64_t> cap = std::nullopt) {
  const auto local = detail::localize(F, xi);
  std::uint64_t limit = 0;
  if (cap) {
    limit = *cap;
  } else {
    Integer b = 1;
    for (const auto& f : F)
      if (!f.is_zero()) b *= f.total_degree();
    limit = b.fits_ulong_p() ? b.get_ui() : UINT64_MAX;
  }
  if (local.empty()) throw CapExceededError("every polynomial is zero; the point is not isolated");

  DualBasis out;
  detail::OrderSpace prev = detail::order_space(local, xi.size(), 0);
  out.dims_by_order.push_back(prev.dim());
  for (std::uint32_t alpha = 0;; ++alpha) {
    if (alpha + 1 > limit)
      throw CapExceededError("dual space did not stabilize by order " + std::to_string(limit));
    detail::OrderSpace next = detail::order_space(local, xi.size(), alpha + 1);
    out.dims_by_order.push_back(next.dim());
    if (next.dim() == prev.dim()) {
      out.basis = detail::nullspace_basis(prev, xi);
      out.dimension = out.basis.size();
      for (const auto& v : out.basis) out.order = std::max(out.order, v.order());
      return out;
    }
    prev = std::move(next);
  }
}

/// True when every basis functional of the dual space kills h * g^l.
inline bool annihilates_power(std::span<const Polynomial> F, std::span<const Rational> xi, const Polynomial& g,
                         const Polynomial& h, unsigned l) {
  if (g.evaluate(xi) != 0) throw UsageError("g does not vanish at the point");
  const DualBasis d = multiplicity(F, xi);
  const Polynomial target = h * g.pow(l);
  return std::all_of(d.basis.begin(), d.basis.end(),
                     [&](const Functional& v) { return apply_functional(v, target) == 0; });
}

}  // namespace mzd
