#pragma once

// Decomposition reports: rational zeros per component, oracle certification
// against the input system, conservation accounting, JSON and text output.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mzd/dualspace.hpp"
#include "mzd/errors.hpp"
#include "mzd/mzdecomp.hpp"
#include "mzd/parser.hpp"
#include "mzd/solve.hpp"

namespace mzd {

struct ZeroReport {
  Point point;
  std::optional<std::uint64_t> multiplicity;            // w.r.t. the input system
  std::optional<std::uint64_t> component_multiplicity;  // w.r.t. the component's polynomials
  bool certified = false;

  bool operator==(const ZeroReport&) const = default;
};

struct ComponentReport {
  ComponentKind kind = ComponentKind::triangular;
  std::vector<std::string> polys;
  std::string saturation;
  std::vector<std::string> provenance;
  std::vector<ZeroReport> zeros;
  bool zeros_complete = false;
  std::optional<std::uint64_t> degree_count;  // exact count with multiplicity, when certifiable by degrees

  bool operator==(const ComponentReport&) const = default;
};

struct Report {
  std::vector<std::string> vars;
  std::uint64_t bound = 0;
  StrategyFlags strategy;
  std::vector<ComponentReport> components;
  std::size_t certified_count = 0;
  bool completeness = false;

  // Filled only by verification; not part of the JSON document.
  std::optional<std::uint64_t> accounted;  // zeros with multiplicity over all components, if every count is known
  std::uint64_t bezout = 0;
  bool disjoint = true;
  std::vector<std::string> problems;
  std::vector<std::string> log;
};

inline bool operator==(const StrategyFlags& a, const StrategyFlags& b) {
  return a.prop3_fallback == b.prop3_fallback && a.factor_initials == b.factor_initials &&
         a.update_bound == b.update_bound && a.split_components == b.split_components;
}

inline std::string rational_string(const Rational& q) { return q.get_str(); }

inline std::string point_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + rational_string(p[i]);
  return s + ")";
}

inline std::vector<std::string> poly_strings(std::span<const Polynomial> ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

namespace detail {

inline std::vector<std::string> component_provenance(const Component& c) {
  std::vector<std::string> out{path_string(c.path)};
  out.insert(out.end(), c.provenance.begin(), c.provenance.end());
  return out;
}

inline std::vector<Component> all_components(const DecompositionResult& r) {
  std::vector<Component> all = r.set2;
  all.insert(all.end(), r.set3.begin(), r.set3.end());
  return all;
}

}  // namespace detail

/// Report without oracle work: rational zeros are listed but not certified.
inline Report summarize(const DecompositionResult& r) {
  Report rep;
  rep.vars = r.order->names();
  rep.bound = r.bound_used;
  rep.strategy = r.flags;
  rep.log = r.log;
  rep.completeness = true;
  for (const auto& c : detail::all_components(r)) {
    ComponentReport cr;
    cr.kind = c.kind;
    cr.polys = poly_strings(c.polys);
    cr.saturation = c.saturation.to_string();
    cr.provenance = detail::component_provenance(c);
    cr.degree_count = exact_zero_count(c);
    try {
      const RationalZeroSet zs = component_zeros(c);
      for (const auto& p : zs.points) cr.zeros.push_back({p, std::nullopt, std::nullopt, false});
      cr.zeros_complete = zs.complete;
    } catch (const NotZeroDimensionalError&) {
      cr.zeros_complete = false;
    }
    rep.completeness = rep.completeness && cr.zeros_complete;
    rep.components.push_back(std::move(cr));
  }
  return rep;
}

/// Certifies every rational zero of every component with the dual-space
/// oracle against both the component and the original system, checks that
/// each rational zero of the system lies in exactly one component, and
/// accounts for the total zero count.
inline Report verify(std::span<const Polynomial> ps, const DecompositionResult& r) {
  Report rep = summarize(r);
  rep.bezout = bezout_bound(ps);
  const auto comps = detail::all_components(r);

  std::uint64_t total = 0;
  bool all_known = true;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const Component& c = comps[k];
    ComponentReport& cr = rep.components[k];
    std::uint64_t sum = 0;
    for (auto& z : cr.zeros) {
      z.multiplicity = multiplicity(ps, z.point).dimension;
      z.component_multiplicity = multiplicity(c.polys, z.point).dimension;
      z.certified = z.multiplicity == z.component_multiplicity;
      if (z.certified) ++rep.certified_count;
      else rep.problems.push_back(cr.provenance.front() + ": multiplicity mismatch at " + point_string(z.point));
      sum += *z.multiplicity;
    }
    std::optional<std::uint64_t> count = cr.degree_count;
    if (cr.zeros_complete) {
      if (count && *count != sum)
        rep.problems.push_back(cr.provenance.front() + ": degree count " + std::to_string(*count) +
                               " differs from certified sum " + std::to_string(sum));
      count = sum;
    }
    if (count) total += *count;
    else all_known = false;
  }
  if (all_known) rep.accounted = total;

  const RationalZeroSet sys = rational_zeros_of_system(ps);
  for (const auto& p : sys.points) {
    std::size_t hits = 0;
    for (const auto& c : comps) hits += component_contains(c, p) ? 1 : 0;
    if (hits != 1) {
      rep.disjoint = false;
      rep.problems.push_back("zero " + point_string(p) + " lies in " + std::to_string(hits) + " components");
    }
  }
  return rep;
}

// JSON

inline nlohmann::json to_json(const Report& rep) {
  using nlohmann::json;
  json comps = json::array();
  for (const auto& c : rep.components) {
    json zeros = json::array();
    for (const auto& z : c.zeros) {
      json pt = json::array();
      for (const auto& q : z.point) pt.push_back(rational_string(q));
      zeros.push_back({{"point", pt},
                       {"multiplicity", z.multiplicity ? json(*z.multiplicity) : json(nullptr)},
                       {"certified", z.certified}});
    }
    comps.push_back({{"kind", to_string(c.kind)},
                     {"polys", c.polys},
                     {"saturation", c.saturation},
                     {"provenance", c.provenance},
                     {"rationalZeros", zeros}});
  }
  return {{"vars", rep.vars},
          {"bound", rep.bound},
          {"strategy",
           {{"prop3Fallback", rep.strategy.prop3_fallback},
            {"factorInitials", rep.strategy.factor_initials},
            {"updateBound", rep.strategy.update_bound},
            {"splitComponents", rep.strategy.split_components}}},
          {"components", comps},
          {"summary", {{"certifiedCount", rep.certified_count}, {"completeness", rep.completeness}}}};
}

/// Inverse of to_json on the fields the document carries. Throws ParseError on schema violations.
inline Report report_from_json(const nlohmann::json& j) {
  try {
    Report rep;
    rep.vars = j.at("vars").get<std::vector<std::string>>();
    rep.bound = j.at("bound").get<std::uint64_t>();
    const auto& s = j.at("strategy");
    rep.strategy.prop3_fallback = s.at("prop3Fallback").get<bool>();
    rep.strategy.factor_initials = s.at("factorInitials").get<bool>();
    rep.strategy.update_bound = s.at("updateBound").get<bool>();
    rep.strategy.split_components = s.at("splitComponents").get<bool>();
    auto order = VarOrder::make(rep.vars);
    for (const auto& jc : j.at("components")) {
      ComponentReport c;
      const auto kind = jc.at("kind").get<std::string>();
      if (kind == "triangular") c.kind = ComponentKind::triangular;
      else if (kind == "unresolved") c.kind = ComponentKind::unresolved;
      else throw ParseError("unknown component kind '" + kind + "'", 1, 1);
      c.polys = jc.at("polys").get<std::vector<std::string>>();
      for (const auto& p : c.polys) parse_polynomial(p, order);
      c.saturation = jc.at("saturation").get<std::string>();
      parse_polynomial(c.saturation, order);
      c.provenance = jc.at("provenance").get<std::vector<std::string>>();
      for (const auto& jz : jc.at("rationalZeros")) {
        ZeroReport z;
        for (const auto& q : jz.at("point")) {
          Rational v(q.get<std::string>());
          v.canonicalize();
          z.point.push_back(v);
        }
        if (!jz.at("multiplicity").is_null()) z.multiplicity = jz.at("multiplicity").get<std::uint64_t>();
        z.certified = jz.at("certified").get<bool>();
        c.zeros.push_back(std::move(z));
      }
      rep.components.push_back(std::move(c));
    }
    rep.certified_count = j.at("summary").at("certifiedCount").get<std::size_t>();
    rep.completeness = j.at("summary").at("completeness").get<bool>();
    return rep;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report schema: ") + e.what(), 1, 1);
  }
}

// Text

inline std::string to_text(const Report& rep, bool certification) {
  std::ostringstream os;
  os << "vars " ;
  for (std::size_t i = 0; i < rep.vars.size(); ++i) os << (i ? ", " : "") << rep.vars[i];
  os << "\nbound " << rep.bound << "\n";
  std::size_t tri = 0, unres = 0;
  for (const auto& c : rep.components) (c.kind == ComponentKind::triangular ? tri : unres)++;
  os << "components " << rep.components.size() << " (" << tri << " triangular, " << unres << " unresolved)\n";
  for (const auto& c : rep.components) {
    os << "\n" << c.provenance.front() << " " << to_string(c.kind) << "\n";
    for (const auto& p : c.polys) os << "  " << p << "\n";
    os << "  saturation " << c.saturation << "\n";
    if (c.degree_count) os << "  degree count " << *c.degree_count << "\n";
    for (std::size_t i = 1; i < c.provenance.size(); ++i) os << "  | " << c.provenance[i] << "\n";
    for (const auto& z : c.zeros) {
      os << "  zero " << point_string(z.point);
      if (certification) {
        os << "  mult " << (z.multiplicity ? std::to_string(*z.multiplicity) : "?") << " / component "
           << (z.component_multiplicity ? std::to_string(*z.component_multiplicity) : "?")
           << (z.certified ? "  certified" : "  MISMATCH");
      }
      os << "\n";
    }
    if (!c.zeros_complete) os << "  (some zeros are not rational)\n";
  }
  if (!rep.log.empty()) {
    os << "\nlog\n";
    for (const auto& l : rep.log) os << "  " << l << "\n";
  }
  os << "\ncertified " << rep.certified_count << ", completeness " << (rep.completeness ? "yes" : "no") << "\n";
  if (certification) {
    os << "disjoint " << (rep.disjoint ? "yes" : "no") << "\n";
    if (rep.accounted)
      os << "accounted " << *rep.accounted << " of Bezout bound " << rep.bezout
         << (*rep.accounted == rep.bezout ? " (equal)" : "") << "\n";
    else
      os << "accounted: unknown (some component count is not certifiable)\n";
    for (const auto& p : rep.problems) os << "problem: " << p << "\n";
  }
  return os.str();
}

inline std::string charset_text(const CharsetOutcome& cs) {
  std::ostringstream os;
  if (cs.inconsistent) {
    os << "inconsistent: " << cs.charset[0].to_string() << "\n";
    return os.str();
  }
  os << "charset\n";
  for (const auto& c : cs.charset.polys()) os << "  " << c.to_string() << "\n";
  os << "initials\n";
  for (const auto& i : cs.initials) os << "  " << i.to_string() << "\n";
  os << "partial products\n";
  for (const auto& j : cs.partial_products) os << "  " << j.to_string() << "\n";
  return os.str();
}

inline nlohmann::json charset_json(const SystemFile& sys, const CharsetOutcome& cs) {
  return {{"vars", sys.order->names()},
          {"charset", poly_strings(cs.charset.span())},
          {"initials", poly_strings(cs.initials)},
          {"partialProducts", poly_strings(cs.partial_products)},
          {"inconsistent", cs.inconsistent}};
}

}  // namespace mzd
