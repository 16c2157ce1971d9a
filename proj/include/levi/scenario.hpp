#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace levi {

/// Line-oriented scenario files.
///
///   name <text>
///   precision <P>
///   let x = <expr>
///   series S(j) = <expr> ; bound(j) = <affine expr> ; at 0 = <expr>
///                        ; geometric from <k> ratio <expr> ; degree <d>
///   stream c(n) = <expr> ; bound(n) = <expr> ; at 0 = <expr> ; geometric from <k> ratio <expr>
///   array A(i, j) = <expr> ; bound(n) = <expr> ; at (*, 0) = <expr>
///   series|stream|array X = builtin <name>
///   check <kind> ... [for v in a..b]
///
/// Check kinds: value Q = E, exact Q = E, same Q, Q, diverges Q [floor k],
/// valuation Q = E, fails Q k, holds Q, random product N, random fubini N.
/// Queries Q: sum(c), partial(S, x, N), eval(S, x), abs_eval(S, x), row(A, i),
/// column(A, j), double(A), by_rows(A), by_columns(A), antidiagonal(A),
/// product(c, d), compose(T, S, x), coeff(T, S, j), derivative(T, S, n),
/// substitution(T, S, x), converse(A).
struct CheckResult {
  std::size_t line = 0;
  std::string check;
  bool passed = false;
  std::string value;
  std::string certificate;
  std::string detail;
};

struct Report {
  std::string scenario;
  std::int64_t precision = 32;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::optional<double> wall_time_ms;

  bool passed() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct ScenarioOptions {
  /// Overrides the scenario's own precision line when set.
  std::optional<std::int64_t> precision;
  std::uint64_t window = 64;
  std::uint64_t seed = 1;
};

/// Runs every check in order. Throws ParseError (offset = line number) on
/// malformed statements; failing checks are reported, not thrown.
Report run_scenario(std::string_view source, const ScenarioOptions& opts = {});

std::vector<std::string> builtin_scenarios();
std::optional<std::string> builtin_source(std::string_view name);

}  // namespace levi
