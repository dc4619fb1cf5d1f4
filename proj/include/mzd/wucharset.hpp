#pragma once

// Wu ranks, ascending sets, basic sets and the characteristic-set loop.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mzd/errors.hpp"
#include "mzd/polyring.hpp"

namespace mzd {

/// Wu rank of a polynomial: main variable index first, then leading degree.
/// Nonzero constants have cls == -1 and rank below every nonconstant.
struct Rank {
  int cls = -1;
  std::uint32_t ldeg = 0;

  auto operator<=>(const Rank&) const = default;
};

inline Rank rank_of(const Polynomial& f) {
  if (f.is_zero()) throw DegenerateInputError("rank of the zero polynomial");
  const int c = f.cls();
  if (c < 0) return {};
  return {c, f.degree_in(static_cast<std::size_t>(c))};
}

inline std::strong_ordering rank_compare(const Polynomial& f, const Polynomial& g) {
  return rank_of(f) <=> rank_of(g);
}

/// f is reduced w.r.t. g when its degree in g's main variable is below ldeg(g).
inline bool is_reduced_wrt(const Polynomial& f, const Polynomial& g) {
  const Rank rg = rank_of(g);
  if (rg.cls < 0) return false;
  return f.degree_in(static_cast<std::size_t>(rg.cls)) < rg.ldeg;
}

/// [C_1, ..., C_r] with strictly increasing main variables, each element reduced
/// w.r.t. its predecessors; or the contradictory set [c] for a nonzero constant c.
class AscendingSet {
 public:
  AscendingSet() = default;

  /// Validates the ascending shape.
  explicit AscendingSet(std::vector<Polynomial> polys) : polys_(std::move(polys)) {
    if (polys_.size() == 1 && polys_.front().is_constant() && !polys_.front().is_zero()) return;
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if (polys_[i].is_constant()) throw UsageError("ascending set element is constant");
      if (i > 0 && polys_[i].cls() <= polys_[i - 1].cls())
        throw UsageError("ascending set main variables must increase");
      for (std::size_t j = 0; j < i; ++j)
        if (!is_reduced_wrt(polys_[i], polys_[j]))
          throw UsageError("ascending set element " + polys_[i].to_string() + " is not reduced");
    }
  }

  const std::vector<Polynomial>& polys() const noexcept { return polys_; }
  std::span<const Polynomial> span() const noexcept { return polys_; }
  std::size_t size() const noexcept { return polys_.size(); }
  bool empty() const noexcept { return polys_.empty(); }
  const Polynomial& operator[](std::size_t i) const { return polys_.at(i); }

  bool contradictory() const noexcept { return polys_.size() == 1 && polys_.front().is_constant(); }

  std::vector<Rank> ranks() const {
    std::vector<Rank> r;
    for (const auto& p : polys_) r.push_back(rank_of(p));
    return r;
  }

 private:
  std::vector<Polynomial> polys_;
};

/// Wu order on ascending sets: compare element ranks left to right; when one
/// is a prefix of the other, the longer set is lower.
inline std::strong_ordering ascending_rank_compare(std::span<const Rank> a, std::span<const Rank> b) {
  const std::size_t k = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < k; ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  if (a.size() == b.size()) return std::strong_ordering::equal;
  return a.size() > b.size() ? std::strong_ordering::less : std::strong_ordering::greater;
}

namespace detail {

// Rank, then rank of the initial, then fewest terms, then canonical text.
inline bool basic_set_less(const Polynomial& a, const Polynomial& b) {
  const Rank ra = rank_of(a), rb = rank_of(b);
  if (ra != rb) return ra < rb;
  if (ra.cls >= 0) {
    const Rank ia = rank_of(initial_of(a)), ib = rank_of(initial_of(b));
    if (ia != ib) return ia < ib;
  }
  return canonical_less(a, b);
}

inline void insert_unique(std::vector<Polynomial>& set, Polynomial p) {
  for (const auto& q : set)
    if (q == p) return;
  set.push_back(std::move(p));
}

}  // namespace detail

/// Greedy lowest-rank ascending subset of `s`.
inline AscendingSet basic_set(std::span<const Polynomial> s) {
  std::vector<Polynomial> sorted;
  for (const auto& f : s) {
    if (f.is_zero()) continue;
    if (f.is_constant()) return AscendingSet({f});
    sorted.push_back(f);
  }
  std::sort(sorted.begin(), sorted.end(), detail::basic_set_less);
  std::vector<Polynomial> chosen;
  for (auto& f : sorted) {
    if (!chosen.empty() && f.cls() <= chosen.back().cls()) continue;
    const bool reduced = std::all_of(chosen.begin(), chosen.end(),
                                     [&](const Polynomial& c) { return is_reduced_wrt(f, c); });
    if (reduced) chosen.push_back(f);
  }
  return AscendingSet(std::move(chosen));
}

/// Result of the characteristic-set computation.
struct CharsetOutcome {
  AscendingSet charset;
  std::vector<Polynomial> initials;         // I_1 ... I_r
  std::vector<Polynomial> partial_products;  // J(1) ... J(r)
  bool inconsistent = false;
  std::vector<Polynomial> final_set;            // input plus every adjoined remainder
  std::vector<std::vector<Rank>> basic_set_ranks;  // one entry per outer iteration
};

/// Wu's characteristic-set algorithm. Remainders are normalized to primitive
/// integer form before being adjoined.
inline CharsetOutcome wu_charset(std::span<const Polynomial> input, bool restart_from_input = true) {
  if (input.empty()) throw UsageError("characteristic set of an empty system");
  std::vector<Polynomial> s;
  for (const auto& f : input) {
    if (f.is_zero()) throw UsageError("characteristic set input contains the zero polynomial");
    detail::insert_unique(s, f.primitive());
  }
  const std::vector<Polynomial> normalized_input = s;

  CharsetOutcome out;
  for (;;) {
    AscendingSet b = basic_set(s);
    out.basic_set_ranks.push_back(b.ranks());
    if (b.contradictory()) {
      out.charset = std::move(b);
      out.inconsistent = true;
      break;
    }
    std::vector<Polynomial> remainders;
    for (const auto& f : s) {
      if (std::find(b.polys().begin(), b.polys().end(), f) != b.polys().end()) continue;
      Polynomial r = prem_seq_remainder(f, b.span());
      if (!r.is_zero()) detail::insert_unique(remainders, r.primitive());
    }
    if (remainders.empty()) {
      out.charset = std::move(b);
      break;
    }
    if (!restart_from_input) {
      for (auto& r : remainders) detail::insert_unique(s, std::move(r));
    } else {
      std::vector<Polynomial> next = normalized_input;
      for (const auto& p : b.polys()) detail::insert_unique(next, p);
      for (auto& r : remainders) detail::insert_unique(next, std::move(r));
      s = std::move(next);
    }
  }

  out.final_set = std::move(s);
  if (!out.inconsistent) {
    Polynomial j = Polynomial::constant(input.front().order(), 1);
    for (const auto& c : out.charset.polys()) {
      out.initials.push_back(initial_of(c));
      j = j * out.initials.back();
      out.partial_products.push_back(j);
    }
  }
  return out;
}

}  // namespace mzd
