#include "levi/double_series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "levi/error.hpp"
#include "levi/generators.hpp"

namespace levi {

namespace {

constexpr std::uint64_t kScanLimit = 1u << 20;

std::uint64_t triangle(std::uint64_t n) { return n * (n + 1) / 2; }

// Largest d with d(d+1)/2 <= k.
std::uint64_t diagonal_of(std::uint64_t k) {
  auto d = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(k) + 1.0) - 1.0) / 2.0);
  while (triangle(d + 1) <= k) ++d;
  while (triangle(d) > k) --d;
  return d;
}

std::vector<Cell> triangle_cells(std::uint64_t g) {
  std::vector<Cell> out;
  for (std::uint64_t d = 0; d < g; ++d) {
    for (std::uint64_t j = 0; j <= d; ++j) out.push_back({d - j, j});
  }
  return out;
}

// Smallest g with bound(g) >= P.
std::uint64_t certified_diagonal(const TailBound& bound, std::int64_t precision,
                                 const SumOptions& opts) {
  for (std::uint64_t g = 0; g <= opts.max_terms; ++g) {
    if (bound(g) >= Valuation(precision)) return g;
  }
  throw NotCertified("joint bound does not reach precision " + std::to_string(precision));
}

const TailBound& require_joint(const DoubleArray& d) {
  if (!d.joint_bound) throw NotCertified("double array carries no joint bound");
  return *d.joint_bound;
}

std::optional<Cell> scan_part(const std::function<std::uint64_t(Cell)>& part_of, std::uint64_t r,
                              std::uint64_t t) {
  const Pairing order = Pairing::cantor();
  std::uint64_t seen = 0;
  for (std::uint64_t k = 0; k < kScanLimit; ++k) {
    const Cell c = order.to_pair(k);
    if (part_of(c) != r) continue;
    if (seen++ == t) return c;
  }
  return std::nullopt;
}

void validate_pairing(const Pairing& p, const SumOptions& opts) {
  for (std::uint64_t k = 0; k < opts.window; ++k) {
    if (p.from_pair(p.to_pair(k)) != k) {
      throw WindowInconsistency("pairing inverse fails at index " + std::to_string(k));
    }
    const std::uint64_t g = p.exhaustion(k);
    for (const Cell& c : triangle_cells(g)) {
      if (p.from_pair(c) >= k) {
        throw WindowInconsistency("pairing exhaustion claim fails at index " + std::to_string(k));
      }
    }
  }
}

void validate_partition(const PartitionOfGrid& parts, const SumOptions& opts) {
  const std::uint64_t probe = std::min<std::uint64_t>(opts.window, 64);
  std::set<std::uint64_t> seen;
  for (const Cell& c : triangle_cells(6)) {
    const std::uint64_t r = parts.part_of(c);
    seen.insert(r);
    bool found = false;
    for (std::uint64_t t = 0; t < probe && !found; ++t) {
      const auto e = parts.enumerate_part(r, t);
      if (!e) break;
      found = *e == c;
    }
    if (!found) {
      throw PartitionInvalid("cell (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                             ") not enumerated in its part " + std::to_string(r));
    }
  }
  // Only parts known to be non-empty; probing an empty one scans to the limit.
  for (std::uint64_t r : seen) {
    for (std::uint64_t t = 0; t < 6; ++t) {
      const auto e = parts.enumerate_part(r, t);
      if (!e) break;
      if (parts.part_of(*e) != r) {
        throw PartitionInvalid("part " + std::to_string(r) + " enumerates a foreign cell");
      }
    }
  }
}

DoubleArray absolute(const DoubleArray& d) {
  DoubleArray out = d;
  out.entry = [entry = d.entry](std::uint64_t i, std::uint64_t j) { return abs(entry(i, j)); };
  return out;
}

// Outer series over i of row heads at precision P, with the joint bound as
// its certificate when there is one.
TermStream iterated_rows(const DoubleArray& d, std::int64_t precision, const SumOptions& opts) {
  struct Cache {
    std::mutex mu;
    std::map<std::uint64_t, FieldElement> heads;
  };
  auto cache = std::make_shared<Cache>();
  TermStream outer;
  outer.term = [d, precision, opts, cache](std::uint64_t i) {
    {
      std::lock_guard lock(cache->mu);
      if (auto it = cache->heads.find(i); it != cache->heads.end()) return it->second;
    }
    FieldElement head = row_sum(d, i, precision, opts).value().head;
    std::lock_guard lock(cache->mu);
    cache->heads.emplace(i, head);
    return head;
  };
  outer.tail_bound = d.joint_bound;
  return outer;
}

DoubleArray transpose(const DoubleArray& d) {
  DoubleArray t;
  t.entry = [entry = d.entry](std::uint64_t i, std::uint64_t j) { return entry(j, i); };
  t.joint_bound = d.joint_bound;
  t.row_bound = d.column_bound;
  t.column_bound = d.row_bound;
  t.row_geometric = d.column_geometric;
  t.column_geometric = d.row_geometric;
  return t;
}

}  // namespace

Pairing Pairing::cantor() {
  Pairing p;
  p.to_pair = [](std::uint64_t k) {
    const std::uint64_t d = diagonal_of(k);
    const std::uint64_t j = k - triangle(d);
    return Cell{d - j, j};
  };
  p.from_pair = [](Cell c) { return triangle(c.i + c.j) + c.j; };
  p.exhaustion = [](std::uint64_t k) { return diagonal_of(k); };
  return p;
}

Pairing Pairing::boustrophedon() {
  Pairing p;
  p.to_pair = [](std::uint64_t k) {
    const std::uint64_t d = diagonal_of(k);
    const std::uint64_t t = k - triangle(d);
    return d % 2 == 0 ? Cell{d - t, t} : Cell{t, d - t};
  };
  p.from_pair = [](Cell c) {
    const std::uint64_t d = c.i + c.j;
    return triangle(d) + (d % 2 == 0 ? c.j : c.i);
  };
  p.exhaustion = [](std::uint64_t k) { return diagonal_of(k); };
  return p;
}

GoursatChain GoursatChain::squares() {
  return {[](std::uint64_t n) {
    std::vector<Cell> out;
    for (std::uint64_t i = 0; i <= n; ++i) {
      for (std::uint64_t j = 0; j <= n; ++j) out.push_back({i, j});
    }
    return out;
  }};
}

GoursatChain GoursatChain::triangles() {
  return {[](std::uint64_t n) { return triangle_cells(n + 1); }};
}

GoursatChain GoursatChain::from_pairing(const Pairing& p) {
  return {[p](std::uint64_t n) {
    std::vector<Cell> out;
    for (std::uint64_t k = 0; k <= n; ++k) out.push_back(p.to_pair(k));
    return out;
  }};
}

PartitionOfGrid PartitionOfGrid::rows() {
  return {[](Cell c) { return c.i; },
          [](std::uint64_t r, std::uint64_t t) { return std::optional<Cell>(Cell{r, t}); }};
}

PartitionOfGrid PartitionOfGrid::columns() {
  return {[](Cell c) { return c.j; },
          [](std::uint64_t r, std::uint64_t t) { return std::optional<Cell>(Cell{t, r}); }};
}

PartitionOfGrid PartitionOfGrid::antidiagonals() {
  return {[](Cell c) { return c.i + c.j; },
          [](std::uint64_t r, std::uint64_t t) {
            return t <= r ? std::optional<Cell>(Cell{r - t, t}) : std::nullopt;
          }};
}

PartitionOfGrid PartitionOfGrid::parity() {
  auto part_of = [](Cell c) { return (c.i + c.j) % 2; };
  return {part_of, [part_of](std::uint64_t r, std::uint64_t t) { return scan_part(part_of, r, t); }};
}

PartitionOfGrid PartitionOfGrid::hashed(std::uint64_t seed, std::uint64_t parts) {
  if (parts == 0) throw RangeError("a partition needs at least one part");
  auto part_of = [seed, parts](Cell c) { return gen::mix(seed, c.i, c.j) % parts; };
  return {part_of, [part_of](std::uint64_t r, std::uint64_t t) { return scan_part(part_of, r, t); }};
}

TermStream linearize(const DoubleArray& d, const Pairing& p, const SumOptions& opts) {
  validate_pairing(p, opts);
  TermStream s;
  s.term = [entry = d.entry, to_pair = p.to_pair](std::uint64_t k) {
    const Cell c = to_pair(k);
    return entry(c.i, c.j);
  };
  if (d.joint_bound) {
    s.tail_bound = [jb = *d.joint_bound, g = p.exhaustion](std::uint64_t k) { return jb(g(k)); };
  }
  return s;
}

TermStream row_stream(const DoubleArray& d, std::uint64_t i) {
  TermStream s;
  s.term = [entry = d.entry, i](std::uint64_t j) { return entry(i, j); };
  if (d.row_bound) {
    s.tail_bound = [rb = *d.row_bound, i](std::uint64_t n) { return rb(i, n); };
  } else if (d.joint_bound) {
    s.tail_bound = [jb = *d.joint_bound, i](std::uint64_t n) { return jb(i + n); };
  }
  if (d.row_geometric) s.geometric = (*d.row_geometric)(i);
  return s;
}

TermStream column_stream(const DoubleArray& d, std::uint64_t j) {
  return row_stream(transpose(d), j);
}

ConvergenceVerdict row_sum(const DoubleArray& d, std::uint64_t i, std::int64_t precision,
                           const SumOptions& opts) {
  return sum(row_stream(d, i), precision, opts);
}

ConvergenceVerdict column_sum(const DoubleArray& d, std::uint64_t j, std::int64_t precision,
                              const SumOptions& opts) {
  return sum(column_stream(d, j), precision, opts);
}

ConvergenceVerdict double_sum(const DoubleArray& d, std::int64_t precision,
                              const SumOptions& opts) {
  return sum(linearize(d, Pairing::cantor(), opts), precision, opts);
}

FubiniTriple fubini_sum(const DoubleArray& d, std::int64_t precision, const SumOptions& opts) {
  require_joint(d);
  const ApproxElement linear = double_sum(d, precision, opts).value();
  auto iterated = [&](const DoubleArray& a) {
    const ApproxElement outer = sum(iterated_rows(a, precision, opts), precision, opts).value();
    return ApproxElement{outer.head, min(outer.tail, Valuation(precision))};
  };
  return {linear, iterated(d), iterated(transpose(d))};
}

CriterionReport converse_criterion(const DoubleArray& d, std::int64_t precision,
                                   const SumOptions& opts) {
  for (std::uint64_t i = 0; i < opts.window; ++i) {
    ConvergenceVerdict row = row_sum(d, i, precision, opts);
    if (!row.converges()) {
      return {1, "row " + std::to_string(i) + " " + row.describe(), std::move(row)};
    }
  }
  ConvergenceVerdict outer_abs = sum(iterated_rows(absolute(d), precision, opts), precision, opts);
  if (!outer_abs.converges()) {
    return {2, "iterated absolute row sums " + outer_abs.describe(), std::move(outer_abs)};
  }
  const ApproxElement value = sum(iterated_rows(d, precision, opts), precision, opts).value();
  return {0, "both hypotheses certified",
          Converges{ApproxElement{value.head, min(value.tail, Valuation(precision))},
                    CertificateKind::TailBound, 0}};
}

ApproxElement goursat_sum(const DoubleArray& d, const GoursatChain& chain, std::int64_t precision,
                          const SumOptions& opts) {
  const TailBound& jb = require_joint(d);
  std::set<Cell> prev;
  for (std::uint64_t n = 0; n < opts.window; ++n) {
    std::set<Cell> cur;
    for (const Cell& c : chain.subset(n)) cur.insert(c);
    if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) {
      throw ChainInvalid("I_" + std::to_string(n - 1) + " is not contained in I_" +
                         std::to_string(n));
    }
    prev = std::move(cur);
  }
  for (const Cell& c : triangle_cells(4)) {
    if (!prev.count(c)) throw ChainInvalid("sampled chain does not cover the corner of N^2");
  }

  const std::uint64_t g = certified_diagonal(jb, precision, opts);
  const std::vector<Cell> needed = triangle_cells(g);
  auto covers = [&](std::uint64_t n) {
    const auto sub = chain.subset(n);
    const std::set<Cell> s(sub.begin(), sub.end());
    return std::all_of(needed.begin(), needed.end(), [&](const Cell& c) { return s.count(c) > 0; });
  };
  std::uint64_t hi = 0;
  while (!covers(hi)) {
    hi = hi == 0 ? 1 : 2 * hi;
    if (hi > opts.max_terms) throw ChainInvalid("chain does not exhaust the certified triangle");
  }
  std::uint64_t lo = 0;
  if (hi > 0) {
    lo = hi / 2;
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (covers(mid)) hi = mid;
      else lo = mid;
    }
  }
  FieldElement s;
  for (const Cell& c : chain.subset(hi)) s += d(c.i, c.j);
  return {s, jb(g)};
}

ApproxElement restricted_sum(const DoubleArray& d, const std::function<bool(Cell)>& member,
                             std::int64_t precision, const SumOptions& opts) {
  require_joint(d);
  DoubleArray masked = d;
  masked.entry = [entry = d.entry, member](std::uint64_t i, std::uint64_t j) {
    return member(Cell{i, j}) ? entry(i, j) : FieldElement();
  };
  return double_sum(masked, precision, opts).value();
}

ApproxElement partition_sum(const DoubleArray& d, const PartitionOfGrid& parts,
                            std::int64_t precision, const SumOptions& opts) {
  const TailBound& jb = require_joint(d);
  validate_partition(parts, opts);
  const std::uint64_t g = certified_diagonal(jb, precision, opts);
  std::set<std::uint64_t> touched;
  for (const Cell& c : triangle_cells(g)) touched.insert(parts.part_of(c));

  // Parts that miss the triangle only hold entries of valuation >= P.
  std::vector<FieldElement> heads(touched.empty() ? 0 : *touched.rbegin() + 1);
  Valuation tail = jb(g);
  for (std::uint64_t r : touched) {
    const auto part_of = parts.part_of;
    const ApproxElement part =
        restricted_sum(d, [part_of, r](Cell c) { return part_of(c) == r; }, precision, opts);
    heads[r] = part.head;
    tail = min(tail, part.tail);
  }
  const ApproxElement outer = sum(finite_stream(std::move(heads)), precision, opts).value();
  return {outer.head, min(tail, outer.tail)};
}

DoubleArray product_array(const TermStream& b, const TermStream& c) {
  DoubleArray d;
  d.entry = [tb = b.term, tc = c.term](std::uint64_t i, std::uint64_t j) { return tb(i) * tc(j); };
  const auto bb = certified_tail_bound(b);
  const auto bc = certified_tail_bound(c);
  if (bb && bc) {
    d.joint_bound = [bb = *bb, bc = *bc](std::uint64_t n) {
      Valuation best = Valuation::infinity();
      for (std::uint64_t i = 0; i <= n; ++i) best = min(best, bb(i) + bc(n - i));
      return best;
    };
    d.row_bound = [bb = *bb, bc = *bc](std::uint64_t i, std::uint64_t n) { return bb(i) + bc(n); };
    d.column_bound = [bb = *bb, bc = *bc](std::uint64_t j, std::uint64_t n) {
      return bb(n) + bc(j);
    };
  }
  return d;
}

ApproxElement product_series(const TermStream& b, const TermStream& c, std::int64_t precision,
                             const SumOptions& opts) {
  return double_sum(product_array(b, c), precision, opts).value();
}

TermStream counterexample_weights() {
  TermStream k;
  k.term = [](std::uint64_t i) {
    const FieldElement eps = FieldElement::epsilon();
    if (i == 0) return (FieldElement(1) - FieldElement(2) * eps) / (FieldElement(1) - eps);
    return eps.pow(static_cast<std::int64_t>(i));
  };
  k.tail_bound = [](std::uint64_t n) { return Valuation(static_cast<std::int64_t>(n)); };
  k.geometric = GeometricTail{1, FieldElement::epsilon()};
  return k;
}

DoubleArray build_counterexample() {
  const TermStream k = counterexample_weights();
  DoubleArray d;
  d.entry = [k](std::uint64_t, std::uint64_t j) {
    return j == 0 ? FieldElement(1) - k(0) : -k(j);
  };
  d.row_bound = [](std::uint64_t, std::uint64_t n) {
    return Valuation(std::max<std::int64_t>(1, static_cast<std::int64_t>(n)));
  };
  const FieldElement e = FieldElement::epsilon();
  d.row_geometric = [e](std::uint64_t) { return GeometricTail{1, e}; };
  // Every column is constant down its length.
  d.column_geometric = [](std::uint64_t) { return GeometricTail{0, FieldElement(1)}; };
  return d;
}

}  // namespace levi
