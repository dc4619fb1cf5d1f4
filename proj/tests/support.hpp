#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "mzd/parser.hpp"
#include "mzd/polyring.hpp"

namespace mzd {

inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << p.to_string(); }

}  // namespace mzd

namespace mzd::test {

inline const char* const kQuadrics = "vars x, y, z\nx^2 + y + z - 1\nx + y^2 + z - 1\nx + y + z^2 - 1\n";
inline const char* const kCubics = "vars x, y, z\nx^3 - y*z\ny^3 - x*z\nz^3 - x*y\n";
inline const char* const kMixed = "vars x, y, z\nx^2 + y\n4*x*y + 2*y^2\n(x + y)*z^2 + z + 1\n";

inline VarOrderPtr xyz() { return VarOrder::make({"x", "y", "z"}); }

inline Polynomial P(const VarOrderPtr& o, const std::string& s) { return parse_polynomial(s, o); }

inline std::vector<Polynomial> Ps(const VarOrderPtr& o, std::initializer_list<const char*> ss) {
  std::vector<Polynomial> out;
  for (const auto* s : ss) out.push_back(P(o, s));
  return out;
}

inline bool same_up_to_scalar(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.primitive() == b.primitive();
}

inline bool lists_match_up_to_scalar(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_up_to_scalar(a[i], b[i])) return false;
  return true;
}

}  // namespace mzd::test
