// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion.
// Usage: levi_acceptance [id ...]   (no ids: run all)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "levi/double_series.hpp"
#include "levi/error.hpp"
#include "levi/expr.hpp"
#include "levi/faa_di_bruno.hpp"
#include "levi/generators.hpp"
#include "levi/power_series.hpp"
#include "levi/scenario.hpp"

using namespace levi;

namespace {

// Tolerances, in powers of eps, and sample counts.
constexpr std::int64_t kExampleP = 32;
constexpr std::int64_t kFubiniP = 32;
constexpr std::int64_t kTripleP = 16;
constexpr std::int64_t kProductP = 16;
constexpr std::int64_t kClosedFormP = 32;
constexpr std::int64_t kSubstitutionP = 16;
constexpr std::int64_t kBlowupP = 32;
constexpr std::int64_t kReorderP = 16;
constexpr int kCounterexampleRows = 64;
constexpr int kArrays = 100;
constexpr int kProductPairs = 50;
constexpr int kPowerSeries = 20;
constexpr int kPowerRows = 5;
constexpr int kPowerColumns = 16;
constexpr int kSubstitutions = 50;
constexpr int kFaaOrder = 8;
constexpr int kBlowupOrder = 8;
constexpr int kStreams = 100;
constexpr int kFieldChecks = 1000;
constexpr int kRoundTrips = 200;

const FieldElement one(1);
const FieldElement eps = FieldElement::epsilon();
const FieldElement omega = FieldElement::omega();

// Collects failed sub-checks of one criterion.
struct Tally {
  int checks = 0;
  int failed = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (++failed <= 5) failures.push_back(what);
  }
  bool ok() const { return failed == 0; }
};

std::string str(std::int64_t n) { return std::to_string(n); }

// ---- 1 ---------------------------------------------------------------

PowerSeries example_inner(bool geometric) {
  PowerSeries s;
  s.coeff = [](std::uint64_t j) { return j == 0 ? eps / (one - eps) : FieldElement(-1); };
  s.bound = AffineBound{0, 0};
  if (geometric) s.geometric = GeometricTail{1, one};
  return s;
}

PowerSeries example_outer() { return PowerSeries::geometric_series(one, omega); }

void criterion1(Tally& t) {
  const std::int64_t P = kExampleP;
  const PowerSeries s = example_inner(true);
  const PowerSeries tt = example_outer();

  const auto at_eps = eval(s, eps, P);
  t.expect(at_eps.converges() && at_eps.value().is_exact() && at_eps.value().head.is_zero(),
           "S(e) exact 0: " + at_eps.describe());
  for (std::int64_t n = 0; n < P; ++n) {
    const FieldElement partial = partial_sum(terms_at(s, eps), static_cast<std::uint64_t>(n));
    t.expect(partial == eps.pow(n + 1) / (one - eps), "partial sum " + str(n));
  }
  // Same sum certified by the tail bound alone.
  const auto tailed = eval(example_inner(false), eps, P);
  t.expect(tailed.converges() && tailed.value().tail >= Valuation(P) &&
               equal_at(tailed.value(), FieldElement(), P),
           "S(e) = 0 by tail bound: " + tailed.describe());

  const auto bar = eval(abs_series(s), eps, P);
  t.expect(bar.converges() && bar.value().is_exact() &&
               bar.value().head == FieldElement(2) * eps / (one - eps),
           "S-bar(e): " + bar.describe());

  const auto d = expected_coefficients(tt, s, 0, P);
  bool flat = true;
  const PowerTable table(s, 0);
  for (std::uint64_t i = 0; i < 64; ++i) {
    flat = flat && (tt(i) * table.at(i, 0)).valuation() == Valuation(0);
  }
  t.expect(d[0].diverges() && d[0].as_diverges().certified &&
               d[0].as_diverges().floor == Valuation(0) && flat,
           "d_0 diverges with valuation-0 witness: " + d[0].describe());

  const auto comp = composite_eval(tt, s, eps, P);
  t.expect(comp.converges() && comp.value().is_exact() && comp.value().head == one,
           "T(S(e)) = 1: " + comp.describe());

  const auto r = substitution_criterion(tt, s, eps, P);
  t.expect(r.failed_hypothesis() == 2, "hypothesis (ii) fails: " + r.detail);
}

// ---- 2 ---------------------------------------------------------------

void criterion2(Tally& t) {
  const std::int64_t P = kFubiniP;
  const DoubleArray a = build_counterexample();
  for (int i = 0; i <= kCounterexampleRows; ++i) {
    const auto row = row_sum(a, static_cast<std::uint64_t>(i), P);
    t.expect(row.converges() && row.value().is_exact() && row.value().head.is_zero(),
             "row " + str(i) + ": " + row.describe());
  }
  const auto k = sum(counterexample_weights(), P);
  t.expect(k.converges() && equal_at(k.value(), one, P), "sum k_i = 1: " + k.describe());
  const auto col = column_sum(a, 0, P);
  t.expect(col.diverges(), "column 0 diverges: " + col.describe());
  const auto conv = converse_criterion(a, P);
  t.expect(conv.failed_hypothesis == 2, "converse fails hypothesis 2: " + conv.detail);
}

// ---- 3 ---------------------------------------------------------------

void criterion3(Tally& t) {
  const std::int64_t P = kTripleP;
  for (int k = 0; k < kArrays; ++k) {
    const auto seed = static_cast<std::uint64_t>(1000 + k);
    const DoubleArray d = gen::certified_array(seed);
    const FubiniTriple f = fubini_sum(d, P);
    const ApproxElement bous = sum(linearize(d, Pairing::boustrophedon()), P).value();
    const ApproxElement anti = partition_sum(d, PartitionOfGrid::antidiagonals(), P);
    const ApproxElement h1 = partition_sum(d, PartitionOfGrid::hashed(seed, 3), P);
    const ApproxElement h2 = partition_sum(d, PartitionOfGrid::hashed(seed * 31 + 7, 5), P);
    bool ok = true;
    for (const ApproxElement* v : {&bous, &f.by_rows, &f.by_columns, &anti, &h1, &h2}) {
      ok = ok && equal_at(f.linearized, *v, P);
    }
    t.expect(ok, "array seed " + str(static_cast<std::int64_t>(seed)));
  }
}

// ---- 4 ---------------------------------------------------------------

void criterion4(Tally& t) {
  const std::int64_t P = kProductP;
  for (int k = 0; k < kProductPairs; ++k) {
    const TermStream b = gen::certified_stream(gen::mix(77, k, 1));
    const TermStream c = gen::certified_stream(gen::mix(77, k, 2));
    const ApproxElement prod = product_series(b, c, P);
    t.expect(equal_at(prod, sum(b, P).value() * sum(c, P).value(), P), "pair " + str(k));
  }
  const TermStream g = geometric_stream(one, eps);
  TermStream n1;
  n1.term = [](std::uint64_t n) {
    return FieldElement(static_cast<std::int64_t>(n + 1)) * eps.pow(static_cast<std::int64_t>(n));
  };
  n1.tail_bound = [](std::uint64_t n) { return Valuation(static_cast<std::int64_t>(n)); };
  const ApproxElement sq = product_series(g, g, kClosedFormP);
  const auto rhs = sum(n1, kClosedFormP);
  t.expect(rhs.converges() && equal_at(sq, rhs.value(), kClosedFormP) &&
               equal_at(sq, one / ((one - eps) * (one - eps)), kClosedFormP),
           "(sum e^n)^2 = sum (n+1) e^n");
}

// ---- 5 ---------------------------------------------------------------

void criterion5(Tally& t) {
  for (int k = 0; k < kPowerSeries; ++k) {
    const auto seed = static_cast<std::uint64_t>(500 + k);
    const std::optional<std::int64_t> constant =
        k % 3 == 0 ? std::nullopt : std::optional<std::int64_t>(k % 3 - 1);
    const PowerSeries s = gen::certified_series(seed, k % 2, 0, constant);
    const PowerTable table = power_table(s, kPowerRows, kPowerColumns);
    PowerSeries iterated = PowerSeries::polynomial({one});
    bool ok = true;
    for (int i = 0; i <= kPowerRows; ++i) {
      for (int j = 0; j <= kPowerColumns; ++j) {
        ok = ok && table.at(i, j) == iterated(j);
      }
      iterated = cauchy_product(iterated, s);
    }
    t.expect(ok, "series seed " + str(static_cast<std::int64_t>(seed)));
  }
}

// ---- 6 ---------------------------------------------------------------

void criterion6(Tally& t) {
  const std::int64_t P = kSubstitutionP;
  int certified = 0;
  int zero_constant = 0;
  for (std::uint64_t seed = 0; certified < kSubstitutions && seed < 4 * kSubstitutions; ++seed) {
    const auto inst = gen::substitution_instance(seed);
    const auto r = substitution_criterion(inst.outer, inst.inner, inst.x, P);
    if (!r.certified()) continue;
    ++certified;
    t.expect(equal_at(*r.by_coefficients, *r.composite, P), "instance " + str(seed));
    if (!inst.zero_constant) continue;
    ++zero_constant;
    const auto d = expected_coefficients(inst.outer, inst.inner, kFaaOrder, P);
    for (int n = 1; n <= kFaaOrder; ++n) {
      const ApproxElement dn = composite_derivative(inst.outer, inst.inner, n, P);
      const bool exact = d[n].converges() && d[n].value().is_exact() && dn.is_exact();
      t.expect(exact && dn.head / FieldElement(factorial(n)) == d[n].value().head,
               "instance " + str(seed) + " d_" + str(n));
    }
  }
  t.expect(certified == kSubstitutions, "certified " + str(certified) + " instances");
  t.expect(zero_constant > 0, "no a0 = 0 instances");
}

// ---- 7 ---------------------------------------------------------------

void criterion7(Tally& t) {
  const auto rows = blowup_example(kBlowupOrder, kBlowupP);
  for (const auto& r : rows) {
    t.expect(r.valuation_certified && r.valuation == Valuation(-r.n),
             "valuation of D^" + str(r.n) + " is " + r.valuation.to_string());
  }
  for (const auto& r : rows) {
    t.expect(r.strictly_dominates(),
             "n = " + str(r.n) + ": singletons term " + r.singletons.to_string() +
                 ", other terms reach " + r.others.to_string() + " (" +
                 str(static_cast<std::int64_t>(r.others_at_minimum)) + " ties)");
  }
}

// ---- 8 ---------------------------------------------------------------

void criterion8(Tally& t) {
  const std::int64_t P = kReorderP;
  const Bijection maps[] = {Bijection::identity(), Bijection::pair_swap(),
                            Bijection::block_reversal(4)};
  for (int k = 0; k < kStreams; ++k) {
    const TermStream s = gen::certified_stream(gen::mix(88, k));
    const auto base = sum(s, P);
    if (!base.converges()) {
      t.expect(false, "stream " + str(k) + " not certified");
      continue;
    }
    bool ok = true;
    for (const auto& f : maps) {
      const auto r = sum(reorder(s, f), P);
      ok = ok && r.converges() && equal_at(r.value(), base.value(), P);
    }
    const auto g = sum(group_pairs(s), P);
    ok = ok && g.converges() && equal_at(g.value(), base.value(), P);
    t.expect(ok, "stream " + str(k));
  }
}

// ---- 9 ---------------------------------------------------------------

// Truncated Laurent expansions as an independent model of the arithmetic.
std::vector<Rat> coeffs(const FieldElement& x, std::int64_t lo, std::int64_t hi) {
  const Expansion e = x.expand(hi);
  std::vector<Rat> out;
  for (std::int64_t k = lo; k < hi; ++k) out.push_back(e.coeff(k));
  return out;
}

void criterion9(Tally& t) {
  gen::Rng rng(99);
  const FieldElement zero;
  for (int k = 0; k < kFieldChecks; ++k) {
    const FieldElement a = gen::element(rng);
    const FieldElement b = gen::element(rng);
    const FieldElement c = gen::element(rng);
    bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) &&
              a * (b + c) == a * b + a * c && a + b == b + a && a * b == b * a &&
              a + zero == a && a * one == a && a - a == zero;
    if (!a.is_zero()) ok = ok && a * a.inverse() == one && (b / a) * a == b;

    const Valuation va = valuation(a), vb = valuation(b);
    ok = ok && valuation(a * b) == va + vb && valuation(a + b) >= min(va, vb);
    if (va != vb) ok = ok && valuation(a + b) == min(va, vb);

    // Order: the sign of a - b is the sign of its leading coefficient.
    const FieldElement diff = a - b;
    if (!diff.is_zero()) {
      const std::int64_t v = diff.valuation().value();
      const int sign = sgn(diff.expand(v + 1).coeff(v));
      ok = ok && (a > b) == (sign > 0);
    }
    if (a < b) ok = ok && a + c < b + c;
    if (a < b && c > zero) ok = ok && a * c < b * c;
    ok = ok && abs(a * b) == abs(a) * abs(b) && abs(a + b) <= abs(a) + abs(b);

    // Expansions: consistent across precisions, additive, multiplicative.
    const std::int64_t lo = std::min({va.is_finite() ? va.value() : 0,
                                      vb.is_finite() ? vb.value() : 0, std::int64_t{0}});
    const std::int64_t hi = lo + 10;
    const auto ea = coeffs(a, lo, hi);
    const auto eb = coeffs(b, lo, hi);
    const auto wide = coeffs(a, lo, hi + 7);
    for (std::size_t m = 0; m < ea.size(); ++m) ok = ok && wide[m] == ea[m];
    const auto es = coeffs(a + b, lo, hi);
    for (std::size_t m = 0; m < es.size(); ++m) ok = ok && es[m] == ea[m] + eb[m];
    const auto ep = coeffs(a * b, 2 * lo, hi + lo);
    for (std::size_t m = 0; m < ep.size(); ++m) {
      Rat acc = 0;
      for (std::size_t i = 0; i <= m; ++i) acc += ea[i] * eb[m - i];
      ok = ok && ep[m] == acc;
    }
    t.expect(ok, "trial " + str(k) + ": a = " + a.to_string() + ", b = " + b.to_string());
  }
}

// ---- 10 --------------------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LEVI_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string cli_output(const std::string& args) {
  const std::string cmd = std::string(LEVI_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  if (FILE* p = popen(cmd.c_str(), "r")) {
    char buf[4096];
    while (std::fgets(buf, sizeof buf, p)) out += buf;
    pclose(p);
  }
  return out;
}

void criterion10(Tally& t) {
  for (const auto& name : builtin_scenarios()) {
    const Report r = run_scenario(*builtin_source(name));
    t.expect(r.passed(), "scenario " + name);
    t.expect(run_cli("scenario run " + name) == 0, "exit code of scenario run " + name);
  }
  t.expect(run_cli("eval \"1/(1-e\"") == 2, "parse error exits with 2");
  t.expect(run_cli("frobnicate") == 2, "usage error exits with 2");
  t.expect(cli_output("eval \"(1)/(1-e)\" --precision 5") ==
               "1 + e + e^2 + e^3 + e^4 + O(e^5)\n",
           "eval expansion");

  const Report bad = run_scenario("name failing\nstream g(n) = e^n ; bound(n) = n\n"
                                  "check value sum(g) = 2\n");
  t.expect(!bad.passed(), "failing check reported");

  // Pinned report schema.
  const auto j = run_scenario(*builtin_source("example-nonsubstitution")).to_json();
  std::set<std::string> keys, check_keys;
  for (const auto& [k, _] : j.items()) keys.insert(k);
  for (const auto& [k, _] : j["checks"][0].items()) check_keys.insert(k);
  t.expect(j["schema"] == "levi-report/1" &&
               keys == std::set<std::string>{"schema", "scenario", "precision", "seed", "passed",
                                             "checks"} &&
               check_keys == std::set<std::string>{"line", "check", "passed", "value",
                                                   "certificate", "detail"},
           "report schema");
  const std::string via_cli = cli_output("scenario run product-geometric --json");
  t.expect(via_cli == run_scenario(*builtin_source("product-geometric")).to_json().dump(2) + "\n",
           "CLI JSON equals library report");

  gen::Rng rng(1010);
  for (int k = 0; k < kRoundTrips; ++k) {
    const FieldElement x = gen::element(rng);
    t.expect(parse_element(x.to_string()) == x, "round trip " + x.to_string());
  }
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Tally&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "example non-substitution", criterion1},
      {2, "Fubini counterexample", criterion2},
      {3, "Fubini triple equality, 100 arrays", criterion3},
      {4, "product corollary", criterion4},
      {5, "power recursion", criterion5},
      {6, "substitution soundness", criterion6},
      {7, "Faa di Bruno blow-up", criterion7},
      {8, "reordering and grouping", criterion8},
      {9, "field kernel", criterion9},
      {10, "CLI", criterion10},
  };
  std::set<int> wanted;
  for (int k = 1; k < argc; ++k) wanted.insert(std::atoi(argv[k]));

  bool all_ok = true;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(t);
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all_ok = all_ok && t.ok();
    std::ostringstream line;
    line << "criterion " << c.id << " [" << (t.ok() ? "PASS" : "FAIL") << "] " << c.title << ": "
         << (t.checks - t.failed) << "/" << t.checks
         << " checks";
    line.precision(2);
    line << std::fixed << " (" << secs << " s)";
    if (!t.ok()) {
      line << "; failed:";
      for (const auto& f : t.failures) line << " " << f << ";";
      if (t.failed > 5) line << " ...";
    }
    std::cout << line.str() << std::endl;
  }
  return all_ok ? 0 : 1;
}
