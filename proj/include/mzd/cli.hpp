#pragma once

// Command-line front end: charset, decompose, multiplicity, verify.
// Exit status: 0 ok, 1 input or usage error, 2 algorithmic failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mzd/dualspace.hpp"
#include "mzd/errors.hpp"
#include "mzd/mzdecomp.hpp"
#include "mzd/parser.hpp"
#include "mzd/report.hpp"
#include "mzd/wucharset.hpp"

namespace mzd {

enum ExitCode : int { exit_ok = 0, exit_input = 1, exit_algorithm = 2 };

inline SystemFile read_system_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str());
}

/// "1,-2,3/4" -> point; each coordinate is a rational literal.
inline Point parse_point(const std::string& text, const VarOrderPtr& order) {
  Point p;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::optional<Polynomial> c;
    try {
      c = parse_polynomial(item, order);
    } catch (const ParseError&) {
    }
    if (!c || !c->is_constant()) throw UsageError("point coordinate '" + item + "' is not a rational number");
    p.push_back(c->constant_value());
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (p.size() != order->size())
    throw UsageError("point has " + std::to_string(p.size()) + " coordinates, expected " +
                     std::to_string(order->size()));
  return p;
}

/// "bezout" or a positive integer.
inline BoundState parse_bound(const std::string& text, std::span<const Polynomial> ps, bool updating) {
  BoundState b;
  b.mode = updating ? BoundMode::updating : BoundMode::fixed;
  if (text == "bezout") {
    b.m = bezout_bound(ps);
    return b;
  }
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("--bound expects 'bezout' or a positive integer, got '" + text + "'");
  Integer v(text);
  if (v < 1 || !v.fits_ulong_p()) throw UsageError("--bound out of range: " + text);
  b.m = v.get_ui();
  return b;
}

struct CliOptions {
  std::string file;
  std::string bound = "bezout";
  bool no_prop3 = false;
  bool factor_initials = false;
  bool update_bound = false;
  bool split_components = false;
  std::string format = "text";
  std::string point;
  std::optional<std::uint64_t> cap;
  unsigned threads = 1;
};

inline StrategyFlags strategy_from(const CliOptions& o) {
  StrategyFlags f;
  f.prop3_fallback = !o.no_prop3;
  f.factor_initials = o.factor_initials;
  f.update_bound = o.update_bound;
  f.split_components = o.split_components;
  f.threads = o.threads;
  return f;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplicity-preserving triangular decomposition of zero-dimensional polynomial systems"};
  app.require_subcommand(1);
  CliOptions o;

  auto add_file = [&](CLI::App* sub) { sub->add_option("FILE", o.file, "polynomial system (.poly)")->required(); };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_strategy = [&](CLI::App* sub) {
    sub->add_option("--bound", o.bound, "bezout or a positive integer");
    sub->add_flag("--no-prop3", o.no_prop3, "disable the reductum fallback when prem(I_i^m, C) = 0");
    sub->add_flag("--factor-initials", o.factor_initials, "branch on coprime factors of univariate initials");
    sub->add_flag("--update-bound", o.update_bound, "shrink the bound by exact counts of emitted components");
    sub->add_flag("--split-components", o.split_components, "split triangular components along factors of C_1");
    sub->add_option("--threads", o.threads, "worker threads for independent tasks")->check(CLI::Range(1u, 256u));
  };

  auto* charset = app.add_subcommand("charset", "characteristic set of the system");
  add_file(charset);
  add_format(charset);

  auto* decompose = app.add_subcommand("decompose", "run the decomposition");
  add_file(decompose);
  add_strategy(decompose);
  add_format(decompose);

  auto* mult = app.add_subcommand("multiplicity", "local multiplicity at a rational point");
  add_file(mult);
  mult->add_option("--point", o.point, "comma-separated rational coordinates")->required();
  mult->add_option("--cap", o.cap, "largest order to try (default: Bezout bound)");
  add_format(mult);

  auto* verify_cmd = app.add_subcommand("verify", "decompose and certify multiplicities at rational zeros");
  add_file(verify_cmd);
  add_strategy(verify_cmd);
  add_format(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  }

  const bool json_out = o.format == "json";
  try {
    const SystemFile sys = read_system_file(o.file);
    if (charset->parsed()) {
      const CharsetOutcome cs = wu_charset(sys.polys);
      if (json_out) out << charset_json(sys, cs).dump(2) << "\n";
      else out << charset_text(cs);
    } else if (mult->parsed()) {
      const Point xi = parse_point(o.point, sys.order);
      const DualBasis d = multiplicity(sys.polys, xi, o.cap);
      if (json_out) {
        nlohmann::json pt = nlohmann::json::array();
        for (const auto& q : xi) pt.push_back(rational_string(q));
        out << nlohmann::json{{"vars", sys.order->names()},
                              {"point", pt},
                              {"multiplicity", d.dimension},
                              {"order", d.order},
                              {"dimensions", d.dims_by_order}}
                   .dump(2)
            << "\n";
      } else {
        out << d.dimension << "\n";
        out << "order " << d.order << "\n";
        out << "dimensions";
        for (auto x : d.dims_by_order) out << " " << x;
        out << "\n";
      }
    } else {
      const BoundState bound = parse_bound(o.bound, sys.polys, o.update_bound);
      const DecompositionResult r = zero_decomp_multi(sys.polys, bound, strategy_from(o));
      const bool certify = verify_cmd->parsed();
      const Report rep = certify ? verify(sys.polys, r) : summarize(r);
      if (json_out) out << to_json(rep).dump(2) << "\n";
      else out << to_text(rep, certify);
    }
  } catch (const ParseError& e) {
    err << o.file << ":" << e.what() << "\n";
    return exit_input;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_algorithm;
  }
  return exit_ok;
}

}  // namespace mzd
