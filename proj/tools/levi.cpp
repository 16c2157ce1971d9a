#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "levi/double_series.hpp"
#include "levi/error.hpp"
#include "levi/expr.hpp"
#include "levi/power_series.hpp"
#include "levi/scenario.hpp"

using namespace levi;
using nlohmann::json;

namespace {

struct Common {
  std::int64_t precision = 32;
  bool json = false;
  std::uint64_t window = 64;
  std::uint64_t seed = 1;
  bool timing = false;
};

SumOptions sum_options(const Common& c) {
  SumOptions o;
  o.window = c.window;
  return o;
}

// Non-exact values print as their expansion below the tail.
std::string show(const ApproxElement& a) {
  if (a.is_exact() || !a.tail.is_finite()) return a.head.to_string();
  return a.head.expand(a.tail.value()).to_string();
}

json verdict_json(const ConvergenceVerdict& v) {
  json j{{"verdict", v.kind()}, {"description", v.describe()}};
  if (v.converges()) {
    j["value"] = v.value().head.to_string();
    j["tail"] = v.value().tail.to_string();
  }
  return j;
}

void emit(const Common& c, const json& j, const std::string& text) {
  if (c.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text << "\n";
  }
}

TermStream stream_from(const std::string& term, const std::string& bound,
                       const std::string& var) {
  TermStream s;
  s.term = index_function(parse_expression(term), var, {});
  if (!bound.empty()) {
    auto f = index_function(parse_expression(bound), var, {});
    s.tail_bound = [f](std::uint64_t n) { return Valuation(to_integer(f(n))); };
  }
  return s;
}

PowerSeries series_from(const std::string& coeff, const std::string& bound) {
  PowerSeries p;
  p.coeff = index_function(parse_expression(coeff), "j", {});
  if (!bound.empty()) {
    auto f = index_function(parse_expression(bound), "j", {});
    const std::int64_t offset = to_integer(f(0));
    p.bound = AffineBound{to_integer(f(1)) - offset, offset};
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic and certified series over the Levi-Civita field Q((e))"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--precision", c.precision, "Target precision P (work modulo e^P)")
      ->capture_default_str();
  app.add_flag("--json", c.json, "Machine-readable output");
  app.add_option("--window", c.window, "Sampling window for divergence checks")
      ->capture_default_str();
  app.add_option("--seed", c.seed, "Seed for randomized checks")->capture_default_str();
  app.add_flag("--timing", c.timing, "Report wall time");

  std::string expr;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an expression in e and w");
  eval_cmd->add_option("expr", expr, "e.g. \"(2*e)/(1-e)\"")->required();

  std::string term, bound, ratio;
  std::uint64_t from = 0;
  auto* sum_cmd = app.add_subcommand("series-sum", "Sum a series given its n-th term");
  sum_cmd->add_option("term", term, "term in n, e.g. \"e^n\"")->required();
  sum_cmd->add_option("--bound", bound, "tail bound in n");
  sum_cmd->add_option("--geometric-from", from, "index where a geometric tail starts");
  sum_cmd->add_option("--ratio", ratio, "geometric ratio");

  std::string entry;
  auto* dbl_cmd = app.add_subcommand("double-sum", "Sum a double series by every route");
  dbl_cmd->add_option("entry", entry, "entry in i and j")->required();
  dbl_cmd->add_option("--bound", bound, "joint bound in n: v(a_ij) >= bound(i + j)")->required();

  std::string outer, outer_bound, inner, inner_bound, at;
  auto* comp_cmd = app.add_subcommand("compose", "Substitution criterion for T(S(x))");
  comp_cmd->add_option("--outer", outer, "coefficient of T in j")->required();
  comp_cmd->add_option("--outer-bound", outer_bound, "affine valuation bound in j")->required();
  comp_cmd->add_option("--inner", inner, "coefficient of S in j")->required();
  comp_cmd->add_option("--inner-bound", inner_bound, "affine valuation bound in j")->required();
  comp_cmd->add_option("--at", at, "point x")->required();

  auto* scen_cmd = app.add_subcommand("scenario", "Scenario files and built-ins");
  scen_cmd->require_subcommand(1);
  std::string scenario;
  auto* run_cmd = scen_cmd->add_subcommand("run", "Run a built-in scenario or a file");
  run_cmd->add_option("scenario", scenario, "built-in name or path")->required();
  auto* list_cmd = scen_cmd->add_subcommand("list-builtin", "List built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };
  const SumOptions so = sum_options(c);

  try {
    if (eval_cmd->parsed()) {
      const FieldElement x = parse_element(expr);
      const Expansion ex = x.expand(c.precision);
      json j{{"input", expr},
             {"value", x.to_string()},
             {"valuation", x.valuation().to_string()},
             {"expansion", ex.to_string()}};
      emit(c, j, ex.to_string());
      return 0;
    }
    if (sum_cmd->parsed()) {
      TermStream s = stream_from(term, bound, "n");
      if (!ratio.empty()) s.geometric = GeometricTail{from, parse_element(ratio)};
      const ConvergenceVerdict v = sum(s, c.precision, so);
      json j = verdict_json(v);
      if (c.timing) j["wall_time_ms"] = elapsed_ms();
      emit(c, j, v.describe());
      return 0;
    }
    if (dbl_cmd->parsed()) {
      const ExprPtr e = parse_expression(entry);
      DoubleArray d;
      d.entry = [e](std::uint64_t i, std::uint64_t jj) {
        Bindings b{{"i", FieldElement(static_cast<std::int64_t>(i))},
                   {"j", FieldElement(static_cast<std::int64_t>(jj))}};
        return evaluate(*e, b);
      };
      auto f = index_function(parse_expression(bound), "n", {});
      d.joint_bound = [f](std::uint64_t n) { return Valuation(to_integer(f(n))); };
      const FubiniTriple t = fubini_sum(d, c.precision, so);
      const bool agree = equal_at(t.linearized, t.by_rows, c.precision) &&
                         equal_at(t.linearized, t.by_columns, c.precision);
      json j{{"linearized", show(t.linearized)},
             {"by_rows", show(t.by_rows)},
             {"by_columns", show(t.by_columns)},
             {"agree", agree}};
      if (c.timing) j["wall_time_ms"] = elapsed_ms();
      std::ostringstream os;
      os << "linearized: " << show(t.linearized) << "\nby rows:    "
         << show(t.by_rows) << "\nby columns: " << show(t.by_columns)
         << "\nagree mod e^" << c.precision << ": " << (agree ? "yes" : "no");
      emit(c, j, os.str());
      return agree ? 0 : 1;
    }
    if (comp_cmd->parsed()) {
      const PowerSeries t = series_from(outer, outer_bound);
      const PowerSeries s = series_from(inner, inner_bound);
      const auto r = substitution_criterion(t, s, parse_element(at), c.precision, so);
      json j{{"outcome", to_string(r.outcome)},
             {"failed_hypothesis", r.failed_hypothesis()},
             {"detail", r.detail}};
      if (r.composite) j["composite"] = show(*r.composite);
      if (r.by_coefficients) j["by_coefficients"] = show(*r.by_coefficients);
      if (c.timing) j["wall_time_ms"] = elapsed_ms();
      std::ostringstream os;
      os << to_string(r.outcome) << ": " << r.detail;
      if (r.composite) os << "\nT(S(x))       = " << show(*r.composite);
      if (r.by_coefficients) os << "\nsum d_j x^j   = " << show(*r.by_coefficients);
      emit(c, j, os.str());
      return 0;
    }
    if (list_cmd->parsed()) {
      const auto names = builtin_scenarios();
      emit(c, json(names), [&] {
        std::string s;
        for (const auto& n : names) s += (s.empty() ? "" : "\n") + n;
        return s;
      }());
      return 0;
    }
    if (run_cmd->parsed()) {
      std::string source;
      if (auto b = builtin_source(scenario)) {
        source = *b;
      } else {
        std::ifstream in(scenario);
        if (!in) {
          std::cerr << "no built-in scenario or file named '" << scenario << "'\n";
          return 2;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        source = ss.str();
      }
      ScenarioOptions so2;
      if (app.get_option("--precision")->count() > 0) so2.precision = c.precision;
      so2.window = c.window;
      so2.seed = c.seed;
      Report r = run_scenario(source, so2);
      if (c.timing) r.wall_time_ms = elapsed_ms();
      if (c.json) {
        std::cout << r.to_json().dump(2) << "\n";
      } else {
        std::cout << r.to_text();
      }
      return r.passed() ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
