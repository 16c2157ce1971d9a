#include "doctest.h"
#include "levi/error.hpp"
#include "levi/generators.hpp"
#include "levi/series.hpp"
#include "support.hpp"

using namespace levi;
using namespace levi::test;

namespace {

TermStream powers_of(const FieldElement& r, bool with_bound) {
  TermStream s;
  s.term = [r](std::uint64_t n) { return r.pow(static_cast<std::int64_t>(n)); };
  if (with_bound) {
    const Valuation v = r.valuation();
    s.tail_bound = [v](std::uint64_t n) { return scale(v, static_cast<std::int64_t>(n)); };
  }
  return s;
}

// Terms of S(eps) in the non-substitution example: eps/(1-eps), -eps, -eps^2, ...
TermStream example_s_at_eps() {
  TermStream s;
  s.term = [](std::uint64_t n) {
    if (n == 0) return e() / (FieldElement(1) - e());
    return -e().pow(static_cast<std::int64_t>(n));
  };
  s.tail_bound = [](std::uint64_t n) { return Valuation(std::max<std::int64_t>(1, n)); };
  return s;
}

TermStream alternating() {
  TermStream s;
  s.term = [](std::uint64_t n) {
    return e().pow(static_cast<std::int64_t>(n)) * q(n % 2 ? -1 : 1);
  };
  s.tail_bound = [](std::uint64_t n) { return Valuation(static_cast<std::int64_t>(n)); };
  return s;
}

}  // namespace

TEST_CASE("partial_sum") {
  CHECK(partial_sum(powers_of(e(), true), 2) == FieldElement(1) + e() + e().pow(2));
  for (std::uint64_t n : {1u, 4u, 9u}) {
    const auto N = static_cast<std::int64_t>(n);
    // Oracle: eps/(1-eps) - eps(1 - eps^N)/(1-eps).
    const FieldElement expected =
        e() / (FieldElement(1) - e()) - e() * (FieldElement(1) - e().pow(N)) / (FieldElement(1) - e());
    CHECK(partial_sum(example_s_at_eps(), n) == expected);
    CHECK(expected == e().pow(N + 1) / (FieldElement(1) - e()));
  }
  CHECK(partial_sum(zero_stream(), 17).is_zero());
}

TEST_CASE("sum") {
  SUBCASE("geometric with tail bound") {
    const ConvergenceVerdict v = sum(powers_of(e(), true), 10);
    REQUIRE(v.converges());
    CHECK(v.value().head == (FieldElement(1) - e().pow(10)) / (FieldElement(1) - e()));
    CHECK(v.value().tail >= Valuation(10));
    CHECK(equal_at(v.value(), geo(), 10));
    CHECK_FALSE(equal_at(v.value(), geo(), 11));
  }
  SUBCASE("powers of 1/(1-eps) diverge") {
    const ConvergenceVerdict v = sum(powers_of(geo(), false), 10);
    REQUIRE(v.diverges());
    CHECK(v.as_diverges().floor == Valuation(0));
    CHECK_FALSE(v.as_diverges().certified);
    const ConvergenceVerdict g = sum(geometric_stream(FieldElement(1), geo()), 10);
    REQUIRE(g.diverges());
    CHECK(g.as_diverges().certified);
    CHECK(g.as_diverges().floor == Valuation(0));
    CHECK_THROWS_AS(g.value(), NotCertified);
  }
  SUBCASE("zero stream") {
    const ConvergenceVerdict v = sum(zero_stream(), 10);
    REQUIRE(v.converges());
    CHECK(v.value().is_exact());
    CHECK(v.value().head.is_zero());
  }
  SUBCASE("geometric certificate is exact") {
    const ConvergenceVerdict v = sum(geometric_stream(e(), e()), 10);
    REQUIRE(v.converges());
    CHECK(v.value().is_exact());
    CHECK(v.value().head == e() * geo());
  }
  SUBCASE("example S(eps) partial sums vanish to any precision") {
    const ConvergenceVerdict v = sum(example_s_at_eps(), 32);
    REQUIRE(v.converges());
    CHECK(equal_at(v.value(), FieldElement(), 32));
    CHECK(v.value().head == e().pow(32) / (FieldElement(1) - e()));
  }
  SUBCASE("no certificate and growing valuations") {
    TermStream s = powers_of(e(), false);
    CHECK(sum(s, 10).unknown());
  }
  SUBCASE("violated certificates are reported") {
    TermStream s = powers_of(geo(), false);
    s.tail_bound = [](std::uint64_t n) { return Valuation(static_cast<std::int64_t>(n)); };
    CHECK_THROWS_AS(sum(s, 10), CertificateViolation);
    TermStream g = powers_of(e(), false);
    g.geometric = GeometricTail{0, q(2) * e()};
    CHECK_THROWS_AS(sum(g, 10), CertificateViolation);
  }
  SUBCASE("bound that never reaches the precision") {
    TermStream s = powers_of(e(), false);
    s.tail_bound = [](std::uint64_t) { return Valuation(0); };
    CHECK(sum(s, 5, SumOptions{64, 256}).unknown());
  }
}

TEST_CASE("divergence witness persists as the window grows") {
  const TermStream s = powers_of(geo(), false);
  for (std::uint64_t w : {8u, 16u, 32u, 64u}) {
    const ConvergenceVerdict v = sum(s, 8, SumOptions{w, 1024});
    REQUIRE(v.diverges());
    CHECK(v.as_diverges().floor == Valuation(0));
  }
}

TEST_CASE("split_pm") {
  const auto [plus, minus] = split_pm(alternating());
  for (std::uint64_t n = 0; n < 8; ++n) {
    const FieldElement en = e().pow(static_cast<std::int64_t>(n));
    CHECK(plus(n) == (n % 2 ? FieldElement() : en));
    CHECK(minus(n) == (n % 2 ? en : FieldElement()));
  }
  const auto [p2, m2] = split_pm(powers_of(e(), true));
  for (std::uint64_t n = 0; n < 8; ++n) {
    CHECK(p2(n) == e().pow(static_cast<std::int64_t>(n)));
    CHECK(m2(n).is_zero());
  }
  const auto [p3, m3] = split_pm(finite_stream({q(-1)}));
  CHECK(p3(0).is_zero());
  CHECK(m3(0) == FieldElement(1));
}

TEST_CASE("split_pm sums back") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const TermStream s = gen::certified_stream(seed);
    const auto [plus, minus] = split_pm(s);
    for (std::uint64_t n = 0; n < 20; ++n) {
      CHECK(plus(n) >= FieldElement());
      CHECK(minus(n) >= FieldElement());
      CHECK(plus(n) - minus(n) == s(n));
    }
    const ApproxElement whole = sum(s, 16).value();
    CHECK(equal_at(sum(plus, 16).value() - sum(minus, 16).value(), whole.head, 16));
  }
}

TEST_CASE("reorder") {
  const TermStream s = powers_of(e(), true);
  const ApproxElement base = sum(s, 16).value();
  CHECK(sum(reorder(s, Bijection::identity()), 16).value().head == base.head);
  CHECK(equal_at(sum(reorder(s, Bijection::pair_swap()), 16).value(), base, 16));
  CHECK(equal_at(sum(reorder(s, Bijection::block_reversal(4)), 16).value(), base, 16));

  Bijection broken{[](std::uint64_t n) { return n + 1; }, [](std::uint64_t n) { return n; }, 1};
  CHECK_THROWS_AS(reorder(s, broken), WindowInconsistency);

  // Without a displacement bound the reordered tail cannot be certified.
  Bijection opaque = Bijection::pair_swap();
  opaque.max_displacement.reset();
  CHECK_FALSE(sum(reorder(s, opaque), 16).converges());
}

TEST_CASE("reordering and grouping preserve random sums") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const TermStream s = gen::certified_stream(seed);
    const ApproxElement base = sum(s, 16).value();
    for (const Bijection& f : {Bijection::identity(), Bijection::pair_swap(),
                               Bijection::block_reversal(4), Bijection::block_reversal(7)}) {
      CHECK(equal_at(sum(reorder(s, f), 16).value(), base, 16));
    }
    CHECK(equal_at(sum(group_pairs(s), 16).value(), base, 16));
  }
}

TEST_CASE("dominated_convergence_check") {
  const TermStream a = powers_of(e(), true);
  TermStream b;
  b.term = [](std::uint64_t n) { return e().pow(static_cast<std::int64_t>(n) + 1); };
  const ConvergenceVerdict v = dominated_convergence_check(a, b, 12);
  REQUIRE(v.converges());
  CHECK(equal_at(v.value(), e() * geo(), 12));

  TermStream alt = alternating();
  alt.tail_bound.reset();
  const ConvergenceVerdict va = dominated_convergence_check(a, alt, 12);
  REQUIRE(va.converges());
  CHECK(equal_at(va.value(), FieldElement(1) / (FieldElement(1) + e()), 12));

  TermStream one;
  one.term = [](std::uint64_t) { return FieldElement(1); };
  try {
    dominated_convergence_check(a, one, 12);
    FAIL("expected DominationViolated");
  } catch (const DominationViolated& err) {
    CHECK(err.index() == 1);
  }
}
