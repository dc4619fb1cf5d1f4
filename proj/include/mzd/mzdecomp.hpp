#pragma once

// Zero decomposition with multiplicity: a worklist over [S, P] tasks where each
// task contributes its characteristic-set component [C, P*J(n)] and branches on
// the initials of C. Every zero of the input lands in exactly one component, with
// its local multiplicity unchanged.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mzd/errors.hpp"
#include "mzd/polyring.hpp"
#include "mzd/univariate.hpp"
#include "mzd/wucharset.hpp"

namespace mzd {

struct StrategyFlags {
  bool prop3_fallback = true;    // retry with the reductum when prem(I_i^m, C) = 0
  bool factor_initials = false;  // branch on coprime factors of univariate initials
  bool update_bound = false;     // shrink m by exact counts of emitted components
  bool split_components = false;  // split triangular components along factors of C_1
  unsigned threads = 1;
};

enum class BoundMode { fixed, updating };

struct BoundState {
  std::uint64_t m = 1;
  BoundMode mode = BoundMode::fixed;
};

enum class ComponentKind { triangular, unresolved };

inline const char* to_string(ComponentKind k) {
  return k == ComponentKind::triangular ? "triangular" : "unresolved";
}

/// [T, P]: the zeros of T where P does not vanish, with multiplicity.
struct Component {
  ComponentKind kind = ComponentKind::triangular;
  std::vector<Polynomial> polys;
  Polynomial saturation;
  std::vector<int> path;  // branch codes from the root task; the sort key
  std::vector<std::string> provenance;
};

struct Task {
  std::vector<Polynomial> system;
  Polynomial saturation;
  std::vector<int> path;
  std::vector<std::string> provenance;
  std::vector<Rank> parent_rank;  // charset rank of the task that pushed this one
};

/// Charset ranks of a task and of the task that spawned it.
struct RankStep {
  std::vector<int> path;
  std::vector<Rank> parent;
  std::vector<Rank> child;
};

struct DecompositionResult {
  VarOrderPtr order;
  std::vector<Component> set2;
  std::vector<Component> set3;
  std::uint64_t bound_used = 0;
  std::uint64_t bound_final = 0;
  StrategyFlags flags;
  std::vector<RankStep> rank_steps;
  std::vector<std::string> log;
};

/// Product of the total degrees of the system.
inline std::uint64_t bezout_bound(std::span<const Polynomial> system) {
  if (system.empty()) throw UsageError("Bezout bound of an empty system");
  Integer b = bezout_product(system);
  if (!b.fits_ulong_p()) throw UsageError("Bezout bound too large");
  return b.get_ui();
}

namespace detail {

inline std::string path_string(const std::vector<int>& path) {
  std::string s = "#";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) s += ".";
    s += std::to_string(path[i]);
  }
  return path.empty() ? "#root" : s;
}

inline std::string list_string(std::span<const Polynomial> ps) {
  std::string s = "[";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i > 0) s += ", ";
    s += ps[i].to_string();
  }
  return s + "]";
}

inline std::vector<Polynomial> union_of(std::span<const Polynomial> a, std::span<const Polynomial> b) {
  std::vector<Polynomial> out;
  for (const auto* src : {&a, &b})
    for (const auto& p : *src) insert_unique(out, p.primitive());
  return out;
}

/// Every zero of `g` is a zero of `sat`: g | sat, or g univariate with its
/// squarefree part dividing sat.
inline bool zeros_contained_in(const Polynomial& g, const Polynomial& sat) {
  if (g.is_constant()) return !g.is_zero();
  if (divides(g, sat)) return true;
  if (auto v = g.univariate_var()) {
    Polynomial sq = squarefree_part(UPoly::from(g, *v)).to_poly(g.order(), *v);
    return divides(sq, sat);
  }
  return false;
}

inline std::uint64_t saturating_sub(std::uint64_t m, std::uint64_t by) { return by >= m ? 1 : std::max<std::uint64_t>(1, m - by); }

struct TaskOutput {
  std::optional<Component> triangular;
  std::vector<Component> unresolved;
  std::vector<Task> children;
  std::optional<RankStep> rank_step;
  std::vector<std::string> log;
};

}  // namespace detail

/// Zeros of a triangular component counted with multiplicity, when every
/// initial and the saturation are provably nonzero on its zeros (constant, or
/// univariate in x_1 and coprime to C_1). The count is then the product of
/// the leading degrees.
inline std::optional<std::uint64_t> exact_zero_count(const Component& comp, bool constant_initials_only = false) {
  if (comp.kind != ComponentKind::triangular || comp.polys.empty()) return std::nullopt;
  const Polynomial& c1 = comp.polys.front();
  if (c1.cls() != 0) return std::nullopt;
  auto nonvanishing = [&](const Polynomial& q) {
    if (q.is_constant()) return !q.is_zero();
    auto v = q.univariate_var();
    return v && *v == 0 && !share_root(q, c1);
  };
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < comp.polys.size(); ++i) {
    const auto view = main_var_view(comp.polys[i]);
    if (i > 0) {
      if (constant_initials_only ? !view.initial.is_constant() : !nonvanishing(view.initial)) return std::nullopt;
    }
    count *= view.ldeg;
  }
  if (!nonvanishing(comp.saturation)) return std::nullopt;
  return count;
}

/// New bound after emitting `emitted`: subtract its certified zero count when
/// all its initials are constant, otherwise leave m unchanged. m floors at 1.
inline BoundState update_bound(BoundState state, const Component& emitted) {
  if (state.mode != BoundMode::updating) return state;
  if (auto n = exact_zero_count(emitted, /*constant_initials_only=*/true)) state.m = detail::saturating_sub(state.m, *n);
  return state;
}

/// Alternative system for branch i when prem(I_i^m, C) = 0: with C̄_i the
/// reductum of C_i, returns prem(C̄_i^m, C) when both are nonzero.
inline std::optional<Polynomial> reductum_fallback(const AscendingSet& c, std::size_t i, std::uint64_t m) {
  const Polynomial reductum = main_var_view(c[i]).reductum;
  if (reductum.is_zero()) return std::nullopt;
  Polynomial r = prem_seq_remainder(reductum.pow(static_cast<unsigned>(m)), c.span());
  if (r.is_zero()) return std::nullopt;
  return r.primitive();
}

/// Tasks for the factor-initials strategy: with g_1 .. g_k the coprime factors
/// of the nonconstant initials, branch k holds PS with g_k^m adjoined and
/// saturation P * g_1 ... g_{k-1}. Throws UnsupportedInputError when an
/// initial is not univariate in x_1.
inline std::vector<Polynomial> initial_factors(const CharsetOutcome& cs) {
  std::vector<Polynomial> nonconstant;
  for (std::size_t i = 1; i < cs.initials.size(); ++i) {
    const auto& init = cs.initials[i];
    if (init.is_constant()) continue;
    auto v = init.univariate_var();
    if (!v || *v != 0) throw UnsupportedInputError("initial " + init.to_string() + " is not univariate in the lowest variable");
    nonconstant.push_back(init);
  }
  return coprime_split(nonconstant);
}

struct FactorTask {
  Polynomial factor;
  std::vector<Polynomial> system;  // PS ∪ {factor^m}
  Polynomial saturation;           // P * earlier factors
};

inline std::vector<FactorTask> factor_initials_strategy(std::span<const Polynomial> ps, const CharsetOutcome& cs,
                                                        const Polynomial& p, std::uint64_t m) {
  std::vector<FactorTask> tasks;
  Polynomial sat = p;
  for (const auto& g : initial_factors(cs)) {
    std::vector<Polynomial> sys(ps.begin(), ps.end());
    sys.push_back(g.pow(static_cast<unsigned>(m)));
    tasks.push_back({g, std::move(sys), sat.primitive()});
    sat = sat * g;
  }
  return tasks;
}

namespace detail {

inline TaskOutput process_task(const Task& task, std::uint64_t m, const StrategyFlags& flags) {
  TaskOutput out;
  const auto& order = task.saturation.order();
  const std::string id = path_string(task.path);
  const CharsetOutcome cs = wu_charset(task.system);
  if (cs.inconsistent) {
    out.log.push_back(id + ": inconsistent, discarded");
    return out;
  }
  const AscendingSet& c = cs.charset;
  const std::size_t n = order->size();
  if (c.size() < n)
    throw NotZeroDimensionalError("characteristic set " + list_string(c.span()) + " has fewer than " +
                                  std::to_string(n) + " elements");
  out.rank_step = RankStep{task.path, task.parent_rank, c.ranks()};

  std::vector<std::string> base = task.provenance;
  base.push_back(id + ": charset C = " + list_string(c.span()));
  const std::vector<Polynomial> s_and_c = union_of(task.system, c.span());

  Component main;
  main.kind = ComponentKind::triangular;
  main.polys = c.polys();
  main.path = task.path;
  main.path.push_back(0);
  bool main_alive = true;

  auto push_child = [&](const Polynomial& r, const Polynomial& sat, int code, const std::string& why) {
    Task child;
    child.system = s_and_c;
    insert_unique(child.system, r.primitive());
    child.saturation = sat.primitive();
    child.path = task.path;
    child.path.push_back(code);
    child.provenance = base;
    child.provenance.push_back(why);
    child.parent_rank = c.ranks();
    out.children.push_back(std::move(child));
  };
  auto record_unresolved = [&](const Polynomial& sat, int code, const std::string& why) {
    Component u;
    u.kind = ComponentKind::unresolved;
    u.polys = s_and_c;
    u.saturation = sat.primitive();
    u.path = task.path;
    u.path.push_back(code);
    u.provenance = base;
    u.provenance.push_back(why);
    out.unresolved.push_back(std::move(u));
  };
  auto remove_main = [&](const std::string& why) {
    if (!main_alive) return;
    main_alive = false;
    out.log.push_back(id + ": component [C, P*J(n)] removed as empty (" + why + ")");
  };
  const unsigned em = static_cast<unsigned>(m);

  std::optional<std::vector<Polynomial>> factors;
  if (flags.factor_initials) {
    try {
      factors = initial_factors(cs);
      if (factors->empty()) factors.reset();
    } catch (const UnsupportedInputError& e) {
      out.log.push_back(id + ": factor-initials skipped: " + e.what());
    }
  }

  if (factors) {
    Polynomial sat = task.saturation;
    for (std::size_t k = 0; k < factors->size(); ++k) {
      const Polynomial& g = (*factors)[k];
      const int code = static_cast<int>(n + 1 + k);
      const std::string label = "factor " + g.to_string();
      if (zeros_contained_in(g, sat)) {
        out.log.push_back(id + ": " + label + " pruned, its zeros violate the saturation");
      } else {
        Polynomial r = prem_seq_remainder(g.pow(em), c.span());
        if (!r.is_zero()) {
          push_child(r, sat, code, label + ": r = prem(g^" + std::to_string(m) + ", C) = " + r.primitive().to_string());
        } else {
          remove_main(label + ": prem(g^m, C) = 0");
          bool handled = false;
          if (flags.prop3_fallback) {
            for (std::size_t i = 1; i < n && !handled; ++i) {
              if (!divides(g, cs.initials[i])) continue;
              if (auto rr = reductum_fallback(c, i, m)) {
                push_child(*rr, sat, code,
                           label + ": prem(g^m, C) = 0, reductum of C_" + std::to_string(i + 1) + " gives r' = " + rr->to_string());
                handled = true;
              }
            }
          }
          if (!handled) record_unresolved(sat, code, label + ": prem(g^m, C) = 0, no further decomposition");
        }
      }
      sat = sat * g;
    }
    main.saturation = sat.primitive();
  } else {
    main.saturation = (task.saturation * cs.partial_products.back()).primitive();
    for (std::size_t i = 1; i < n; ++i) {
      const Polynomial& init = cs.initials[i];
      if (init.is_constant()) continue;
      const Polynomial sat = task.saturation * cs.partial_products[i - 1];
      const int code = static_cast<int>(i + 1);
      const std::string label = "branch " + std::to_string(i + 1);
      if (zeros_contained_in(init, sat)) {
        out.log.push_back(id + ": " + label + " pruned, I_" + std::to_string(i + 1) + " = " + init.to_string() +
                          " vanishes only where P*J(" + std::to_string(i) + ") does");
        continue;
      }
      Polynomial r = prem_seq_remainder(init.pow(em), c.span());
      if (!r.is_zero()) {
        push_child(r, sat, code,
                   label + ": r = prem(I_" + std::to_string(i + 1) + "^" + std::to_string(m) + ", C) = " + r.primitive().to_string());
        continue;
      }
      remove_main(label + ": prem(I_" + std::to_string(i + 1) + "^m, C) = 0");
      if (flags.prop3_fallback) {
        if (auto rr = reductum_fallback(c, i, m)) {
          push_child(*rr, sat, code,
                     label + ": prem(I^m, C) = 0, reductum fallback r' = " + rr->to_string());
          continue;
        }
      }
      record_unresolved(sat, code, label + ": prem(I_" + std::to_string(i + 1) + "^m, C) = 0, no further decomposition");
    }
  }

  if (main_alive && c[0].cls() == 0 && zeros_contained_in(c[0], main.saturation)) {
    remove_main("every root of C_1 makes the saturation vanish");
  }
  if (main_alive) {
    main.provenance = base;
    main.provenance.push_back("component [C, " + main.saturation.to_string() + "]");
    out.triangular = std::move(main);
  }
  return out;
}

inline bool path_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

/// Splits a triangular component along the factors of C_1, keeping each
/// factor's multiplicity. Factors whose roots all violate P != 0 are dropped,
/// and in each branch the factors of later elements' contents that have no
/// root in common with the branch factor are divided out.
inline std::vector<Component> split_triangular_component(const Component& comp) {
  if (comp.kind != ComponentKind::triangular || comp.polys.empty()) return {comp};
  const Polynomial& c1 = comp.polys.front();
  auto var = c1.univariate_var();
  if (!var || *var != 0) return {comp};

  std::vector<Component> out;
  const auto factors = factor_with_multiplicity(c1);
  int k = 0;
  for (const auto& [g, e] : factors) {
    ++k;
    if (divides(g, comp.saturation)) continue;
    Component branch;
    branch.kind = ComponentKind::triangular;
    branch.saturation = comp.saturation;
    branch.path = comp.path;
    branch.path.push_back(k);
    branch.provenance = comp.provenance;
    branch.provenance.push_back("split on factor (" + g.to_string() + ")^" + std::to_string(e) + " of C_1");
    branch.polys.push_back(g.pow(e).primitive());
    for (std::size_t i = 1; i < comp.polys.size(); ++i) {
      Polynomial ci = comp.polys[i];
      const auto cls = static_cast<std::size_t>(ci.cls());
      std::optional<UPoly> content;
      bool univariate_content = true;
      for (const auto& coeff : ci.coefficients_in(cls)) {
        if (coeff.is_zero()) continue;
        auto v = coeff.univariate_var();
        if (!coeff.is_constant() && (!v || *v != 0)) {
          univariate_content = false;
          break;
        }
        UPoly u = UPoly::from(coeff, 0);
        content = content ? gcd(*content, u) : u.monic();
      }
      if (univariate_content && content && content->degree() > 0) {
        const Polynomial cont = content->to_poly(ci.order(), 0);
        for (const auto& [h, mult] : factor_with_multiplicity(cont)) {
          if (share_root(h, g)) continue;
          ci = *exact_quotient(ci, h.pow(mult));
        }
      }
      branch.polys.push_back(ci.primitive());
    }
    out.push_back(std::move(branch));
  }
  if (out.size() == 1 && out.front().polys == comp.polys) return {comp};
  return out;
}

/// ZeroDecompMulti. Processes the worklist level by level so that the result
/// does not depend on scheduling; bound updating forces sequential order.
inline DecompositionResult zero_decomp_multi(std::span<const Polynomial> ps, BoundState bound, StrategyFlags flags = {}) {
  if (ps.empty()) throw UsageError("empty input system");
  if (bound.m < 1) throw UsageError("bound m must be at least 1");
  if (flags.update_bound) bound.mode = BoundMode::updating;
  if (bound.mode == BoundMode::updating) flags.update_bound = true;

  DecompositionResult result;
  result.order = ps.front().order();
  result.flags = flags;
  result.bound_used = bound.m;

  Task root;
  for (const auto& f : ps) {
    if (f.is_zero()) throw UsageError("input system contains the zero polynomial");
    Polynomial::check_same_order(f, ps.front());
    root.system.push_back(f);
  }
  root.saturation = Polynomial::constant(result.order, 1);

  std::vector<Task> frontier{std::move(root)};
  const bool parallel = flags.threads > 1 && bound.mode == BoundMode::fixed;
  while (!frontier.empty()) {
    std::vector<detail::TaskOutput> outputs;
    outputs.reserve(frontier.size());
    if (parallel) {
      const std::uint64_t m = bound.m;
      for (std::size_t begin = 0; begin < frontier.size(); begin += flags.threads) {
        const std::size_t end = std::min(frontier.size(), begin + flags.threads);
        std::vector<std::future<detail::TaskOutput>> futs;
        for (std::size_t i = begin; i < end; ++i)
          futs.push_back(std::async(std::launch::async, [&, i] { return detail::process_task(frontier[i], m, flags); }));
        for (auto& f : futs) outputs.push_back(f.get());
      }
    } else {
      for (const auto& t : frontier) {
        outputs.push_back(detail::process_task(t, bound.m, flags));
        if (outputs.back().triangular) bound = update_bound(bound, *outputs.back().triangular);
      }
    }
    std::vector<Task> next;
    for (auto& o : outputs) {
      if (o.triangular) result.set2.push_back(std::move(*o.triangular));
      for (auto& u : o.unresolved) result.set3.push_back(std::move(u));
      for (auto& ch : o.children) next.push_back(std::move(ch));
      if (o.rank_step) result.rank_steps.push_back(std::move(*o.rank_step));
      for (auto& l : o.log) result.log.push_back(std::move(l));
    }
    frontier = std::move(next);
  }

  if (flags.split_components) {
    std::vector<Component> split;
    for (const auto& comp : result.set2)
      for (auto& piece : split_triangular_component(comp)) split.push_back(std::move(piece));
    result.set2 = std::move(split);
  }
  auto by_path = [](const Component& a, const Component& b) { return detail::path_less(a.path, b.path); };
  std::sort(result.set2.begin(), result.set2.end(), by_path);
  std::sort(result.set3.begin(), result.set3.end(), by_path);
  result.bound_final = bound.m;
  return result;
}

}  // namespace mzd
