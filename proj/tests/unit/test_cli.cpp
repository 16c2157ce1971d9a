#include "doctest.h"
#include "levi/error.hpp"
#include "levi/expr.hpp"
#include "levi/generators.hpp"
#include "levi/scenario.hpp"
#include "support.hpp"

using namespace levi;
using namespace levi::test;

TEST_CASE("parse_expression: literals and precedence") {
  CHECK(parse_element("(2*e)/(1-e)") == q(2) * e() / (FieldElement(1) - e()));
  CHECK(parse_element("2^3^2") == FieldElement(512));
  CHECK(parse_element("-2^2") == FieldElement(-4));
  CHECK(parse_element("e^-2") == w() * w());
  CHECK(parse_element("3!+1") == FieldElement(7));
  CHECK(parse_element("1 - 2 - 3") == FieldElement(-4));
  CHECK(parse_element("12/8") == q(3, 2));
  CHECK(parse_element("w*e") == FieldElement(1));

  const ExprPtr c = parse_expression("(-1)^j * e^j");
  const auto f = index_function(c, "j", {});
  CHECK(f(0) == FieldElement(1));
  CHECK(f(3) == -e().pow(3));
}

TEST_CASE("parse_expression: errors carry offsets") {
  try {
    parse_expression("1/(1-e");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.offset() == 6);
  }
  CHECK_THROWS_AS(parse_expression("1 +"), ParseError);
  CHECK_THROWS_AS(parse_expression("2 $ 3"), ParseError);
  CHECK_THROWS_AS(parse_expression("(1))"), ParseError);
  CHECK_THROWS_AS(parse_element("x + 1"), EvaluationError);
  CHECK_THROWS_AS(parse_element("e^(1/2)"), EvaluationError);
  CHECK_THROWS_AS(parse_element("1/(e-e)"), DivisionByZero);
}

TEST_CASE("print then parse round-trips") {
  gen::Rng rng(2024);
  for (int k = 0; k < 200; ++k) {
    const FieldElement x = gen::element(rng);
    INFO(x.to_string());
    CHECK(parse_element(x.to_string()) == x);
  }
}

TEST_CASE("built-in scenarios pass and are deterministic") {
  for (const auto& name : builtin_scenarios()) {
    INFO(name);
    const auto src = builtin_source(name);
    REQUIRE(src);
    const Report a = run_scenario(*src);
    const Report b = run_scenario(*src);
    CHECK(a.passed());
    CHECK(a.to_json().dump() == b.to_json().dump());
  }
  CHECK_FALSE(builtin_source("missing"));
}

TEST_CASE("report JSON schema") {
  const Report r = run_scenario(*builtin_source("product-geometric"));
  const auto j = r.to_json();
  CHECK(j["schema"] == "levi-report/1");
  for (const char* key : {"scenario", "precision", "seed", "passed", "checks"}) {
    CHECK(j.contains(key));
  }
  CHECK_FALSE(j.contains("wall_time_ms"));
  for (const auto& c : j["checks"]) {
    for (const char* key : {"line", "check", "passed", "value", "certificate", "detail"}) {
      CHECK(c.contains(key));
    }
  }
}

TEST_CASE("scenario: definitions, loops and failures") {
  const char* src = R"(name custom
precision 12
let r = e/(1+e)
stream s(n) = r^n ; bound(n) = n
series A(j) = (-1)^j * e^j ; bound(j) = j
array D(i, j) = e^(i+j) ; bound(n) = n
check value sum(s) = 1/(1-r)
check value eval(A, 1) = 1/(1+e)
check value double(D) = 1/(1-e)^2
check same by_rows(D), by_columns(D)
check same antidiagonal(D), double(D)
check exact partial(A, 1, k) = (1 - (-e)^(k+1))/(1+e) for k in 0..5
check value sum(s) = 2
)";
  const Report r = run_scenario(src);
  REQUIRE(r.checks.size() == 7);
  for (std::size_t k = 0; k + 1 < r.checks.size(); ++k) {
    INFO(r.checks[k].check << " " << r.checks[k].detail);
    CHECK(r.checks[k].passed);
  }
  CHECK_FALSE(r.checks.back().passed);
  CHECK_FALSE(r.passed());
  CHECK(r.precision == 12);

  ScenarioOptions o;
  o.precision = 5;
  CHECK(run_scenario(src, o).precision == 5);
}

TEST_CASE("scenario: parse errors report the line") {
  try {
    run_scenario("name bad\nlet x = 1/(1-e\n");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.offset() == 2);
  }
  CHECK_THROWS_AS(run_scenario("frobnicate 3\n"), ParseError);
  CHECK_THROWS_AS(run_scenario("check nonsense(1)\n"), ParseError);
  const Report missing = run_scenario("check value sum(nothing) = 0\n");
  CHECK_FALSE(missing.passed());
}
