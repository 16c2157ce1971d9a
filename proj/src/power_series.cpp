#include "levi/power_series.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "levi/error.hpp"

namespace levi {

namespace {

std::int64_t as_int(std::uint64_t n) { return static_cast<std::int64_t>(n); }

// Smallest n <= limit with bound(n) >= target, scanning upward.
std::optional<std::uint64_t> first_reaching(const TailBound& bound, Valuation target,
                                            std::uint64_t limit) {
  for (std::uint64_t n = 0; n <= limit; ++n) {
    if (bound(n) >= target) return n;
  }
  return std::nullopt;
}

// Extra inner precision so that T(k) keeps precision P when k has error
// of valuation P_in: the perturbation is at least slope + offset + P_in.
std::int64_t inner_precision(const PowerSeries& outer, std::int64_t precision) {
  if (!outer.bound) return precision;
  const std::int64_t drop = outer.bound->slope + outer.bound->offset;
  return precision + std::max<std::int64_t>(0, -drop);
}

// Bound v(a_j x^j) >= slope * j + offset for j >= 1, also valid at j = 0.
// A polynomial gets slope 1 with the offset read off its coefficients.
std::optional<AffineBound> weighted_bound(const PowerSeries& s, const FieldElement& x) {
  const std::int64_t vx = x.valuation().value();
  if (s.degree) {
    Valuation low = s(0).valuation();
    for (std::uint64_t j = 1; j <= *s.degree; ++j) {
      const FieldElement a = s(j);
      if (a.is_zero()) continue;
      low = min(low, a.valuation() + Valuation((vx - 1) * as_int(j)));
    }
    return AffineBound{1, low.is_finite() ? low.value() : 0};
  }
  if (!s.bound) return std::nullopt;
  return AffineBound{s.bound->slope + vx, s.bound->offset};
}

}  // namespace

PowerSeries PowerSeries::polynomial(std::vector<FieldElement> coeffs) {
  if (coeffs.empty()) coeffs.emplace_back();
  auto data = std::make_shared<const std::vector<FieldElement>>(std::move(coeffs));
  PowerSeries out;
  out.coeff = [data](std::uint64_t j) {
    return j < data->size() ? (*data)[j] : FieldElement();
  };
  out.degree = data->size() - 1;
  std::int64_t low = 0;
  bool any = false;
  for (const auto& c : *data) {
    if (c.is_zero()) continue;
    const std::int64_t v = c.valuation().value();
    low = any ? std::min(low, v) : v;
    any = true;
  }
  out.bound = AffineBound{0, low};
  return out;
}

PowerSeries PowerSeries::geometric_series(const FieldElement& first, const FieldElement& ratio) {
  if (first.is_zero() || ratio.is_zero()) return polynomial({first});
  PowerSeries out;
  out.coeff = [first, ratio](std::uint64_t j) { return first * ratio.pow(as_int(j)); };
  out.geometric = GeometricTail{0, ratio};
  out.bound = AffineBound{ratio.valuation().value(), first.valuation().value()};
  return out;
}

TermStream terms_at(const PowerSeries& s, const FieldElement& x) {
  if (x.is_zero()) return finite_stream({s(0)});
  if (s.degree) {
    std::vector<FieldElement> terms;
    terms.reserve(*s.degree + 1);
    FieldElement p(1);
    for (std::uint64_t j = 0; j <= *s.degree; ++j) {
      terms.push_back(s(j) * p);
      p *= x;
    }
    return finite_stream(std::move(terms));
  }
  TermStream out;
  struct Powers {
    std::mutex lock;
    std::vector<FieldElement> p;
  };
  auto powers = std::make_shared<Powers>();
  powers->p.emplace_back(1);
  out.term = [s, x, powers](std::uint64_t j) {
    FieldElement xj;
    {
      std::lock_guard<std::mutex> guard(powers->lock);
      auto& p = powers->p;
      while (p.size() <= j) p.push_back(p.back() * x);
      xj = p[j];
    }
    return s(j) * xj;
  };
  if (s.geometric) out.geometric = GeometricTail{s.geometric->from, s.geometric->ratio * x};
  if (s.bound) {
    const std::int64_t rate = s.bound->slope + x.valuation().value();
    const std::int64_t offset = s.bound->offset;
    if (rate >= 0) {
      out.tail_bound = [rate, offset](std::uint64_t n) {
        return Valuation(rate * as_int(n) + offset);
      };
    }
  }
  return out;
}

ConvergenceVerdict eval(const PowerSeries& s, const FieldElement& x, std::int64_t precision,
                        const SumOptions& opts) {
  return sum(terms_at(s, x), precision, opts);
}

ConvergenceVerdict eval(const PowerSeries& s, const ApproxElement& x, std::int64_t precision,
                        const SumOptions& opts) {
  if (x.is_exact()) return eval(s, x.head, precision, opts);
  // Dropping head terms at or above the tail keeps the point a polynomial
  // without changing what is known about it.
  const FieldElement head = x.head.truncated(x.tail.value());
  ConvergenceVerdict at_head = eval(s, head, precision, opts);
  if (at_head.diverges()) {
    // k = h (1 + u) with v(u) > 0, so every term keeps its valuation.
    if (x.valuation_known()) return at_head;
    return Unknown{{}, "diverges at the head but the point's valuation is not determined"};
  }
  if (!at_head.converges()) return at_head;

  // S(k) - S(h) = sum_(i>=1) a_i (k^i - h^i), v(k^i - h^i) >= t + (i - 1) v_lb.
  const Valuation t = x.tail;
  const Valuation v_lb = x.valuation_lower_bound();
  std::optional<Valuation> perturbation;
  if (s.degree) {
    Valuation e = Valuation::infinity();
    for (std::uint64_t i = 1; i <= *s.degree; ++i) {
      const FieldElement a = s(i);
      if (a.is_zero()) continue;
      e = min(e, a.valuation() + t + scale(v_lb, as_int(i) - 1));
    }
    perturbation = e;
  } else if (s.bound && v_lb.is_finite() && s.bound->slope + v_lb.value() >= 1) {
    perturbation = Valuation(s.bound->slope + s.bound->offset) + t;
  }
  if (!perturbation) {
    return Unknown{{}, "perturbation of the evaluation point is not certified"};
  }
  Converges c = at_head.as_converges();
  c.sum.tail = min(c.sum.tail, *perturbation);
  return c;
}

PowerSeries cauchy_product(const PowerSeries& a, const PowerSeries& b) {
  PowerSeries out;
  out.coeff = [a, b](std::uint64_t k) {
    FieldElement acc;
    for (std::uint64_t i = 0; i <= k; ++i) {
      if (a.degree && i > *a.degree) break;
      if (b.degree && k - i > *b.degree) continue;
      acc += a(i) * b(k - i);
    }
    return acc;
  };
  if (a.bound && b.bound) {
    out.bound = AffineBound{std::min(a.bound->slope, b.bound->slope),
                            a.bound->offset + b.bound->offset};
  }
  if (a.degree && b.degree) out.degree = *a.degree + *b.degree;
  return out;
}

PowerSeries abs_series(const PowerSeries& s) {
  PowerSeries out = s;
  out.coeff = [s](std::uint64_t j) { return abs(s(j)); };
  if (s.geometric) out.geometric = GeometricTail{s.geometric->from, abs(s.geometric->ratio)};
  return out;
}

PowerSeries alternate_signs(const PowerSeries& s) {
  PowerSeries out = s;
  out.coeff = [s](std::uint64_t j) { return j % 2 == 0 ? s(j) : -s(j); };
  if (s.geometric) out.geometric = GeometricTail{s.geometric->from, -s.geometric->ratio};
  return out;
}

PowerSeries formal_derivative(const PowerSeries& s, std::uint64_t n) {
  PowerSeries out;
  out.coeff = [s, n](std::uint64_t j) {
    return FieldElement(factorial(j + n) / factorial(j)) * s(j + n);
  };
  if (s.bound) {
    out.bound = AffineBound{s.bound->slope, s.bound->slope * as_int(n) + s.bound->offset};
  }
  if (s.degree) out.degree = *s.degree >= n ? *s.degree - n : 0;
  return out;
}

struct PowerTable::State {
  PowerSeries series;
  std::uint64_t max_column = 0;
  std::vector<FieldElement> a;
  std::vector<std::vector<FieldElement>> rows;
  std::mutex lock;

  void grow_to(std::uint64_t i) {
    while (rows.size() <= i) {
      const auto& prev = rows.back();
      std::vector<FieldElement> next(max_column + 1);
      for (std::uint64_t j = 0; j <= max_column; ++j) {
        FieldElement acc;
        for (std::uint64_t m = 0; m <= j; ++m) {
          if (prev[m].is_zero() || a[j - m].is_zero()) continue;
          acc += prev[m] * a[j - m];
        }
        next[j] = std::move(acc);
      }
      rows.push_back(std::move(next));
    }
  }
};

PowerTable::PowerTable(const PowerSeries& s, std::uint64_t max_column)
    : state_(std::make_shared<State>()) {
  state_->series = s;
  state_->max_column = max_column;
  state_->a.reserve(max_column + 1);
  for (std::uint64_t j = 0; j <= max_column; ++j) state_->a.push_back(s(j));
  std::vector<FieldElement> first(max_column + 1);
  first[0] = FieldElement(1);
  state_->rows.push_back(std::move(first));
}

FieldElement PowerTable::at(std::uint64_t i, std::uint64_t j) const {
  if (j > state_->max_column) {
    throw RangeError("power table column " + std::to_string(j) + " beyond " +
                     std::to_string(state_->max_column));
  }
  // With a_0 = 0 every factor raises the degree, so c_ij = 0 for i > j.
  if (i > j && state_->a[0].is_zero()) return FieldElement();
  std::lock_guard<std::mutex> guard(state_->lock);
  state_->grow_to(i);
  return state_->rows[i][j];
}

std::vector<FieldElement> PowerTable::row(std::uint64_t i) const {
  std::lock_guard<std::mutex> guard(state_->lock);
  state_->grow_to(i);
  return state_->rows[i];
}

std::uint64_t PowerTable::max_column() const { return state_->max_column; }

PowerTable power_table(const PowerSeries& s, std::uint64_t max_row, std::uint64_t max_column) {
  PowerTable t(s, max_column);
  t.row(max_row);
  return t;
}

bool ExpectedCoefficients::all_converge() const {
  return std::all_of(d.begin(), d.end(), [](const auto& v) { return v.converges(); });
}

ConvergenceVerdict expected_coefficient(const PowerSeries& outer, const PowerSeries& inner,
                                        const PowerTable& table, std::uint64_t j,
                                        std::int64_t precision, const SumOptions& opts) {
  const FieldElement a0 = inner(0);
  if (a0.is_zero() || outer.degree) {
    const std::uint64_t last = a0.is_zero() ? j : *outer.degree;
    const std::uint64_t stop = outer.degree ? std::min(last, *outer.degree) : last;
    FieldElement acc;
    for (std::uint64_t i = 0; i <= stop; ++i) acc += outer(i) * table.at(i, j);
    return Converges{ApproxElement::exact(std::move(acc)), CertificateKind::Finite, stop + 1};
  }

  TermStream s;
  s.term = [outer, table, j](std::uint64_t i) { return outer(i) * table.at(i, j); };
  if (j == 0 && outer.geometric) {
    s.geometric = GeometricTail{outer.geometric->from, outer.geometric->ratio * a0};
  }
  if (outer.bound && inner.bound) {
    // Term i of d_j: b_i times a product of i coefficients, at most
    // min(i, j) of them with positive index.
    const std::int64_t nu0 = a0.valuation().value();
    const std::int64_t rho = outer.bound->slope + nu0;
    const std::int64_t kappa = inner.bound->offset - nu0;
    if (kappa > 0) {
      throw CertificateViolation("inner bound exceeds the valuation of the constant term");
    }
    const std::int64_t beta_t = outer.bound->offset;
    const std::int64_t alpha = inner.bound->slope;
    if (rho >= 0) {
      const std::int64_t jj = as_int(j);
      auto g = [=](std::int64_t i) {
        return rho * i + beta_t + alpha * jj + std::min(i, jj) * kappa;
      };
      s.tail_bound = [=](std::uint64_t n) {
        if (jj == 0) return Valuation(rho * as_int(n) + beta_t);
        const std::int64_t lo = std::max<std::int64_t>(as_int(n), 1);
        return Valuation(std::min(g(lo), g(std::max(lo, jj))));
      };
    }
  }
  return sum(s, precision, opts);
}

ExpectedCoefficients expected_coefficients(const PowerSeries& outer, const PowerSeries& inner,
                                           std::uint64_t max_j, std::int64_t precision,
                                           const SumOptions& opts) {
  const PowerTable table(inner, max_j);
  ExpectedCoefficients out;
  for (std::uint64_t j = 0; j <= max_j; ++j) {
    out.d.push_back(expected_coefficient(outer, inner, table, j, precision, opts));
  }
  return out;
}

ConvergenceVerdict composite_eval(const PowerSeries& outer, const PowerSeries& inner,
                                  const FieldElement& x, std::int64_t precision,
                                  const SumOptions& opts) {
  const ConvergenceVerdict k = eval(inner, x, inner_precision(outer, precision), opts);
  if (!k.converges()) return k;
  return eval(outer, k.value(), precision, opts);
}

int SubstitutionReport::failed_hypothesis() const {
  if (outcome == SubstitutionOutcome::InnerDiverges) return 1;
  if (outcome == SubstitutionOutcome::OuterDiverges) return 2;
  return 0;
}

std::string to_string(SubstitutionOutcome o) {
  switch (o) {
    case SubstitutionOutcome::Certified:
      return "certified";
    case SubstitutionOutcome::InnerDiverges:
      return "hypothesis (i) fails";
    case SubstitutionOutcome::OuterDiverges:
      return "hypothesis (ii) fails";
    case SubstitutionOutcome::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

SubstitutionReport substitution_criterion(const PowerSeries& outer, const PowerSeries& inner,
                                          const FieldElement& x, std::int64_t precision,
                                          const SumOptions& opts) {
  SubstitutionReport r;
  const std::int64_t p_in = inner_precision(outer, precision);

  const ConvergenceVerdict k = eval(inner, x, p_in, opts);
  if (!k.converges()) {
    r.outcome = SubstitutionOutcome::InnerDiverges;
    r.detail = "S(x): " + k.describe();
    return r;
  }
  r.k = k.value();
  const ConvergenceVerdict k_bar = eval(abs_series(inner), abs(x), p_in, opts);
  if (!k_bar.converges()) {
    r.outcome = SubstitutionOutcome::InnerDiverges;
    r.detail = "S-bar(|x|): " + k_bar.describe();
    return r;
  }
  r.k_bar = k_bar.value();
  r.outer_at_k_bar = eval(outer, *r.k_bar, precision, opts);
  if (!r.outer_at_k_bar->converges()) {
    r.outcome = SubstitutionOutcome::OuterDiverges;
    r.detail = "T(k-bar): " + r.outer_at_k_bar->describe();
    return r;
  }
  const ConvergenceVerdict comp = eval(outer, *r.k, precision, opts);
  if (!comp.converges()) {
    r.detail = "T(k): " + comp.describe();
    return r;
  }
  r.composite = comp.value();

  // Number of expected coefficients needed, and the tail beyond them.
  std::uint64_t count = 1;
  Valuation rest = Valuation::infinity();
  if (!x.is_zero()) {
    const auto w = weighted_bound(inner, x);
    if (!outer.bound || !w) {
      r.detail = "expected-coefficient series needs affine bounds on both series";
      return r;
    }
    const std::int64_t at = outer.bound->slope;
    const std::int64_t bt = outer.bound->offset;
    const std::int64_t gamma = w->slope;
    const std::int64_t beta = w->offset;
    const std::int64_t steep = at + beta + gamma;
    const FieldElement a0 = inner(0);
    if (gamma < 1 || steep < 1 || (!a0.is_zero() && at + a0.valuation().value() < 0)) {
      r.detail = "affine bounds do not certify the series of d_j x^j";
      return r;
    }
    // v(d_j x^j) >= min(at + beta + bt + gamma j, steep j + bt) for j >= 1.
    auto b = [=](std::uint64_t n) {
      const std::int64_t j = std::max<std::int64_t>(as_int(n), 1);
      Valuation v(std::min(at + beta + bt + gamma * j, steep * j + bt));
      return n == 0 ? min(v, Valuation(bt)) : v;
    };
    const auto n0 = first_reaching(b, Valuation(precision), opts.max_terms);
    if (!n0) {
      r.detail = "expected-coefficient series needs too many terms";
      return r;
    }
    count = std::max<std::uint64_t>(*n0, 1);
    rest = b(count);
  }

  const PowerTable table(inner, count - 1);
  const std::int64_t vx = x.is_zero() ? 0 : x.valuation().value();
  FieldElement head;
  Valuation tail = rest;
  FieldElement xp(1);
  for (std::uint64_t j = 0; j < count; ++j) {
    const std::int64_t pj = precision + std::max<std::int64_t>(0, -as_int(j) * vx);
    const ConvergenceVerdict d = expected_coefficient(outer, inner, table, j, pj, opts);
    if (!d.converges()) {
      r.detail = "d_" + std::to_string(j) + ": " + d.describe();
      return r;
    }
    const ApproxElement& dj = d.value();
    head += dj.head * xp;
    tail = min(tail, dj.tail + Valuation(as_int(j) * vx));
    xp *= x;
  }
  r.coefficients_used = count;
  r.by_coefficients = ApproxElement{std::move(head), min(tail, Valuation(precision))};
  r.agree = equal_at(*r.by_coefficients, *r.composite, precision);
  if (r.agree) {
    r.outcome = SubstitutionOutcome::Certified;
    r.detail = "T(S(x)) = sum d_j x^j to precision " + std::to_string(precision);
  } else {
    r.detail = "sum d_j x^j disagrees with T(S(x))";
  }
  return r;
}

RadiusReport neighborhood_radius(const PowerSeries& outer, const PowerSeries& inner,
                                 std::int64_t precision, const SumOptions& opts) {
  RadiusReport r;
  if (!outer.bound || !inner.bound) {
    r.detail = "both series need affine valuation bounds";
    return r;
  }
  const std::int64_t at = outer.bound->slope;
  const std::int64_t alpha = inner.bound->slope;
  const std::int64_t beta = inner.bound->offset;
  std::int64_t v = std::max(1 - alpha, 1 - alpha - at - beta);
  const FieldElement a0 = inner(0);
  if (!a0.is_zero()) {
    const std::int64_t nu0 = a0.valuation().value();
    if (at + nu0 < 1) {
      r.detail = "T's bound does not certify convergence at S(0)";
      return r;
    }
    const ConvergenceVerdict t0 = eval(outer, a0, precision, opts);
    if (!t0.converges()) {
      r.detail = "T(S(0)): " + t0.describe();
      return r;
    }
    v = std::max(v, nu0 - alpha - beta + 1);
  }
  r.ok = true;
  r.threshold = v;
  r.detail = "valuation(x) >= " + std::to_string(v);
  return r;
}

}  // namespace levi
