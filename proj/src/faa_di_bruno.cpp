#include "levi/faa_di_bruno.hpp"

#include <string>

#include "levi/error.hpp"

namespace levi {

namespace {

void need(std::size_t have, int n, const char* what) {
  if (have < static_cast<std::size_t>(n) + 1) {
    throw RangeError(std::string("insufficient derivative data for ") + what + ": need " +
                     std::to_string(n + 1) + ", have " + std::to_string(have));
  }
}

template <class V>
std::vector<V> terms(const std::vector<V>& f, const std::vector<V>& g, int n) {
  need(f.size(), n, "f");
  need(g.size(), n, "g");
  std::vector<V> out;
  for (const auto& p : set_partitions(n)) {
    V t = f[p.size()];
    for (const auto& b : p.blocks) t = t * g[b.size()];
    out.push_back(std::move(t));
  }
  return out;
}

// Products of at most n inner derivatives lower the precision of outer
// derivative values by at most this much.
std::int64_t product_slack(const std::vector<ApproxElement>& g, int n) {
  std::int64_t low = 0;
  for (int h = 1; h <= n; ++h) {
    const Valuation v = g[h].head.valuation();
    if (v.is_finite()) low = std::min(low, v.value());
  }
  return -low * n;
}

}  // namespace

std::vector<SetPartition> set_partitions(int n) {
  if (n < 1 || n > 12) throw RangeError("set_partitions needs 1 <= n <= 12");
  std::vector<SetPartition> out;
  // a[k] is the block of element k + 1; a[k] <= 1 + max(a[0..k-1]).
  std::vector<int> a(n, 0);
  std::vector<int> top(n, 0);
  while (true) {
    SetPartition p;
    p.blocks.resize(top[n - 1] + 1);
    for (int k = 0; k < n; ++k) p.blocks[a[k]].push_back(k + 1);
    out.push_back(std::move(p));

    int k = n - 1;
    while (k > 0 && a[k] == top[k - 1] + 1) --k;
    if (k == 0) break;
    ++a[k];
    top[k] = std::max(top[k - 1], a[k]);
    for (int m = k + 1; m < n; ++m) {
      a[m] = 0;
      top[m] = top[k];
    }
  }
  return out;
}

FieldElement faa_di_bruno(const std::vector<FieldElement>& f, const std::vector<FieldElement>& g,
                          int n) {
  FieldElement acc;
  for (const auto& t : terms(f, g, n)) acc += t;
  return acc;
}

ApproxElement faa_di_bruno(const std::vector<ApproxElement>& f,
                           const std::vector<ApproxElement>& g, int n) {
  ApproxElement acc = ApproxElement::exact(FieldElement());
  for (const auto& t : terms(f, g, n)) acc = acc + t;
  return acc;
}

std::vector<ApproxElement> faa_di_bruno_terms(const std::vector<ApproxElement>& f,
                                              const std::vector<ApproxElement>& g, int n) {
  return terms(f, g, n);
}

std::vector<ApproxElement> outer_derivatives(const PowerSeries& outer, const PowerSeries& inner,
                                             int n, std::int64_t precision) {
  const FieldElement at = inner(0);
  std::vector<ApproxElement> out;
  for (int m = 0; m <= n; ++m) {
    const auto v = eval(formal_derivative(outer, static_cast<std::uint64_t>(m)), at, precision);
    out.push_back(v.value());
  }
  return out;
}

std::vector<ApproxElement> inner_derivatives(const PowerSeries& inner, int n) {
  std::vector<ApproxElement> out;
  for (int h = 0; h <= n; ++h) {
    out.push_back(ApproxElement::exact(FieldElement(factorial(h)) * inner(h)));
  }
  return out;
}

ApproxElement composite_derivative(const PowerSeries& outer, const PowerSeries& inner, int n,
                                   std::int64_t precision) {
  const auto g = inner_derivatives(inner, n);
  return faa_di_bruno(outer_derivatives(outer, inner, n, precision + product_slack(g, n)), g, n);
}

PowerSeries blowup_inner() {
  const FieldElement e = FieldElement::epsilon();
  const FieldElement w = FieldElement::omega();
  PowerSeries s;
  s.coeff = [e, w](std::uint64_t j) {
    if (j == 0) return e;
    if (j == 1) return -w;
    if (j == 2) return w * w;
    return e.pow(static_cast<std::int64_t>(j));
  };
  s.bound = AffineBound{0, -2};
  s.geometric = GeometricTail{3, e};
  return s;
}

PowerSeries blowup_outer() {
  return PowerSeries::geometric_series(FieldElement(1), FieldElement(1));
}

std::vector<BlowupRow> blowup_example(int nmax, std::int64_t precision) {
  if (nmax < 1 || nmax > 8) throw RangeError("blowup_example needs 1 <= nmax <= 8");
  const PowerSeries t = blowup_outer();
  const PowerSeries s = blowup_inner();
  const auto g = inner_derivatives(s, nmax);
  const auto f = outer_derivatives(t, s, nmax, precision + product_slack(g, nmax));
  std::vector<BlowupRow> rows;
  for (int n = 1; n <= nmax; ++n) {
    BlowupRow r;
    r.n = n;
    const auto parts = set_partitions(n);
    const auto ts = faa_di_bruno_terms(f, g, n);
    r.derivative = ApproxElement::exact(FieldElement());
    r.others = Valuation::infinity();
    for (std::size_t k = 0; k < ts.size(); ++k) {
      r.derivative = r.derivative + ts[k];
      const Valuation v = ts[k].valuation_lower_bound();
      if (parts[k].size() == static_cast<std::size_t>(n)) {
        r.singletons = v;
      } else {
        r.others = min(r.others, v);
      }
    }
    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (parts[k].size() != static_cast<std::size_t>(n) &&
          ts[k].valuation_lower_bound() == r.singletons) {
        ++r.others_at_minimum;
      }
    }
    r.valuation_certified = r.derivative.valuation_known();
    r.valuation = r.derivative.valuation_lower_bound();
    if (r.valuation_certified) {
      const std::int64_t v = r.valuation.value();
      r.leading = r.derivative.head.expand(v + 1).coeff(v);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace levi
