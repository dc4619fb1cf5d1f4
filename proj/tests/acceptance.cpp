// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mzd/dualspace.hpp"
#include "mzd/mzdecomp.hpp"
#include "mzd/parser.hpp"
#include "mzd/report.hpp"
#include "mzd/solve.hpp"
#include "mzd/wucharset.hpp"
#include "support.hpp"

using namespace mzd;
using mzd::test::P;

namespace {

constexpr double kTimeLimitSeconds = 60.0;

using Pt = std::vector<Rational>;

struct Check {
  std::ostringstream notes;
  bool ok = true;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [failed: " << what << "]";
    }
  }
};

bool contains_match(const std::vector<Component>& cs, const std::vector<Polynomial>& polys) {
  for (const auto& c : cs)
    if (test::lists_match_up_to_scalar(c.polys, polys)) return true;
  return false;
}

void criterion1(Check& c) {
  const auto sys = parse_system(test::kQuadrics);
  const auto cs = wu_charset(sys.polys);
  c.require(test::lists_match_up_to_scalar(cs.charset.polys(),
                                           test::Ps(sys.order, {"x^2*(x^2 + 2*x - 1)*(x - 1)^2", "x^2*(x^2 + 2*y - 1)",
                                                                "x^2*(x^2 - 1 + 2*z)"})),
            "charset differs from the expected set");
  const auto& p = cs.charset.polys();
  for (std::size_t i = 1; i < p.size(); ++i) {
    c.require(p[i - 1].cls() < p[i].cls(), "main variables not increasing");
    for (std::size_t j = 0; j < i; ++j) c.require(is_reduced_wrt(p[i], p[j]), "element not reduced");
  }
  for (const auto& f : sys.polys) c.require(prem_seq_remainder(f, p).is_zero(), "nonzero remainder of an input");
  c.notes << " charset " << detail::list_string(p);
}

void criterion2(Check& c) {
  const auto sys = parse_system(test::kQuadrics);
  StrategyFlags f;
  f.split_components = true;
  const auto r = zero_decomp_multi(sys.polys, BoundState{bezout_bound(sys.polys)}, f);
  auto o = sys.order;
  c.require(r.set2.size() == 3, "expected 3 triangular components, got " + std::to_string(r.set2.size()));
  c.require(r.set3.empty(), "unresolved set not empty");
  c.require(contains_match(r.set2, test::Ps(o, {"x^2 + 2*x - 1", "x^2 + 2*y - 1", "x^2 - 1 + 2*z"})), "T_1 missing");
  c.require(contains_match(r.set2, test::Ps(o, {"(x - 1)^2", "x^2 + 2*y - 1", "x^2 - 1 + 2*z"})), "T_2 missing");
  c.require(contains_match(r.set2, test::Ps(o, {"x^2", "y - x - y^2", "1 - z - y"})), "T_3 missing");
  c.notes << " components " << r.set2.size() << " triangular, " << r.set3.size() << " unresolved";
}

void criterion3(Check& c) {
  const auto sys = parse_system(test::kQuadrics);
  StrategyFlags f;
  f.split_components = true;
  const auto r = zero_decomp_multi(sys.polys, BoundState{8}, f);
  std::uint64_t rational_sum = 0, degree_only = 0;
  for (const Pt& pt : {Pt{1, 0, 0}, Pt{0, 1, 0}, Pt{0, 0, 1}}) {
    const auto m = multiplicity(sys.polys, pt).dimension;
    c.require(m == 2, "multiplicity " + std::to_string(m) + " at " + point_string(pt));
    int owners = 0;
    for (const auto& comp : r.set2)
      if (component_contains(comp, pt)) {
        ++owners;
        c.require(multiplicity(comp.polys, pt).dimension == m, "component multiplicity differs at " + point_string(pt));
      }
    c.require(owners == 1, "zero " + point_string(pt) + " owned by " + std::to_string(owners) + " components");
    rational_sum += m;
  }
  for (const auto& comp : r.set2) {
    const auto zs = rational_zeros(comp);
    if (!zs.points.empty()) continue;
    const auto n = exact_zero_count(comp);
    c.require(n.has_value() && !zs.complete, "irrational branch without a degree count");
    if (n) degree_only += *n;
  }
  c.require(rational_sum == 6, "rational sum " + std::to_string(rational_sum));
  c.require(degree_only == 2, "irrational branch count " + std::to_string(degree_only));
  c.require(rational_sum + degree_only == bezout_bound(sys.polys), "total differs from the Bezout bound");
  c.notes << " rational " << rational_sum << " + irrational " << degree_only << " = " << rational_sum + degree_only
          << " of " << bezout_bound(sys.polys);
}

void criterion4(Check& c) {
  const auto sys = parse_system(test::kCubics);
  auto o = sys.order;
  const auto cs = wu_charset(sys.polys);
  c.require(prem_seq_remainder(P(o, "x^4 - x^8").pow(27), cs.charset.span()).is_zero(), "prem not zero");
  Component main;
  main.polys = cs.charset.polys();
  main.saturation = cs.partial_products.back();
  const auto zs = rational_zeros(main);
  c.require(zs.points.empty(), "charset component has a rational zero with J != 0");
  const auto r = zero_decomp_multi(sys.polys, BoundState{27}, {});
  c.require(r.set2.empty(), "triangular set not empty");
  c.require(r.set3.size() == 1, "expected one unresolved component");
  bool logged = false;
  for (const auto& l : r.log) logged = logged || l.find("removed as empty") != std::string::npos;
  c.require(logged, "removal not recorded");
  c.notes << " set2 " << r.set2.size() << ", set3 " << r.set3.size();
}

void criterion5(Check& c) {
  const auto sys = parse_system(test::kCubics);
  auto o = sys.order;
  StrategyFlags f;
  f.factor_initials = true;
  const auto r = zero_decomp_multi(sys.polys, BoundState{27}, f);
  c.require(r.set2.size() == 3, "expected 3 triangular components, got " + std::to_string(r.set2.size()));
  c.require(contains_match(r.set2, test::Ps(o, {"1 - x", "-y^4 + 1", "-y^3 + z"})), "[1 - x, ...] missing");
  c.require(contains_match(r.set2, test::Ps(o, {"x + 1", "y^4 - 1", "-y^3 - z"})), "[x + 1, ...] missing");
  c.require(contains_match(r.set2, test::Ps(o, {"1 + x^2", "y^4 - 1", "y^3 - x*z"})), "[1 + x^2, ...] missing");
  c.require(r.set3.size() == 1, "expected one unresolved component");
  const Pt origin{0, 0, 0};
  if (r.set3.size() == 1) {
    c.require(component_contains(r.set3.front(), origin), "unresolved component misses the origin");
    c.require(rational_zeros_of_system(r.set3.front().polys, r.set3.front().saturation).points == std::vector<Pt>{origin},
              "unresolved component has zeros other than the origin");
  }
  const auto m = multiplicity(sys.polys, origin).dimension;
  c.require(m == 11, "origin multiplicity " + std::to_string(m));
  std::uint64_t simple = 0;
  for (const auto& comp : r.set2) {
    const auto n = exact_zero_count(comp);
    c.require(n.has_value(), "no degree count for " + detail::list_string(comp.polys));
    if (n) simple += *n;
    for (const auto& pt : rational_zeros(comp).points)
      c.require(multiplicity(sys.polys, pt).dimension == 1, "non-simple zero " + point_string(pt));
  }
  c.require(simple == 16, "triangular branches carry " + std::to_string(simple) + " zeros");
  c.require(m + simple == 27 && bezout_bound(sys.polys) == 27, "11 + 16 != 27");
  c.notes << " origin " << m << " + branches " << simple << " = " << m + simple;
}

void criterion6(Check& c) {
  const auto sys = parse_system(test::kMixed);
  auto o = sys.order;
  const auto cs = wu_charset(sys.polys);
  c.require(prem_seq_remainder(P(o, "x - x^2").pow(12), cs.charset.span()) == P(o, "512*x^3"), "prem differs");
  const auto on = zero_decomp_multi(sys.polys, BoundState{12}, {});
  c.require(contains_match(on.set2, test::Ps(o, {"x^3", "x^2 + y", "(-1 + 22*x - 232*x^2)*z - 1 + 21*x - 211*x^2"})),
            "C_2 missing with the fallback");
  c.require(on.set3.empty(), "fallback run left unresolved components");
  StrategyFlags off;
  off.prop3_fallback = false;
  const auto r = zero_decomp_multi(sys.polys, BoundState{12}, off);
  c.require(!r.set3.empty(), "no unresolved component without the fallback");
  for (const auto& u : r.set3) c.require(u.kind == ComponentKind::unresolved, "SET3 entry marked triangular");
  c.notes << " with fallback " << on.set2.size() << " triangular; without " << r.set3.size() << " unresolved";
}

void criterion7(Check& c) {
  const std::string cmd = std::string(MZD_PROPERTY_TEST) + " --gtest_brief=1 > property_acceptance.log 2>&1";
  const int status = std::system(cmd.c_str());
  c.require(status == 0, "property suite failed, see property_acceptance.log");
  c.notes << " property suite exit " << status;
}

void criterion8(Check& c) {
  const auto sys = parse_system("vars x, y\nx^2\ny^2\n");
  const Pt o{0, 0};
  std::vector<std::size_t> dims;
  for (std::uint32_t a = 0; a < 4; ++a) dims.push_back(dual_dim_at_order(sys.polys, o, a));
  c.require(dims == std::vector<std::size_t>{1, 3, 4, 4}, "dimension sequence");
  const auto d = multiplicity(sys.polys, o);
  c.require(d.dimension == 4, "multiplicity " + std::to_string(d.dimension));
  c.notes << " dims " << dims[0] << "," << dims[1] << "," << dims[2] << "," << dims[3] << " mult " << d.dimension;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"1 quadrics charset", criterion1},
      {"2 quadrics decomposition", criterion2},
      {"3 quadrics certification", criterion3},
      {"4 cubics base behavior", criterion4},
      {"5 cubics factor-initials", criterion5},
      {"6 mixed fallback", criterion6},
      {"7 property suites", criterion7},
      {"8 dual-space unit", criterion8},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < kTimeLimitSeconds, "over the time limit");
    std::cout << (c.ok ? "PASS" : "FAIL") << "  criterion " << name << "  (" << secs << " s)" << c.notes.str() << "\n";
    failures += c.ok ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures;
}
