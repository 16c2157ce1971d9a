#include "levi/series.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "levi/error.hpp"

namespace levi {

namespace {

constexpr std::uint64_t kGeometricChecks = 16;

std::string kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::TailBound: return "tail-bound";
    case CertificateKind::Geometric: return "geometric";
    case CertificateKind::Finite: return "finite";
  }
  return "?";
}

ConvergenceVerdict sum_geometric(const TermStream& s, const GeometricTail& g,
                                 const SumOptions& opts) {
  const std::uint64_t checks = std::min(opts.window, kGeometricChecks);
  FieldElement prev = s(g.from);
  for (std::uint64_t m = g.from; m < g.from + checks; ++m) {
    FieldElement next = s(m + 1);
    if (!(next == g.ratio * prev)) {
      throw CertificateViolation("geometric certificate fails at index " + std::to_string(m + 1));
    }
    prev = std::move(next);
  }
  const FieldElement head = g.from == 0 ? FieldElement() : partial_sum(s, g.from - 1);
  const FieldElement first = s(g.from);
  if (first.is_zero()) {
    return Converges{ApproxElement::exact(head), CertificateKind::Finite, g.from};
  }
  if (g.ratio.valuation() >= Valuation(1)) {
    return Converges{ApproxElement::exact(head + first / (FieldElement(1) - g.ratio)),
                     CertificateKind::Geometric, g.from};
  }
  return Diverges{g.from, first.valuation(), true};
}

// Smallest n <= max_terms with bound(n) >= P, if any.
std::optional<std::uint64_t> certified_length(const TailBound& bound, Valuation target,
                                              std::uint64_t max_terms) {
  if (bound(0) >= target) return 0;
  std::uint64_t lo = 0;  // bound(lo) < target
  std::uint64_t hi = 1;
  while (hi < max_terms && bound(hi) < target) {
    lo = hi;
    hi *= 2;
  }
  if (hi >= max_terms) {
    hi = max_terms;
    if (bound(hi) < target) return std::nullopt;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (bound(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ConvergenceVerdict sample_verdict(const TermStream& s, const SumOptions& opts, std::string why) {
  const std::uint64_t w = std::max<std::uint64_t>(opts.window, 2);
  const std::uint64_t half = w / 2;
  std::vector<Valuation> profile;
  profile.reserve(w);
  for (std::uint64_t n = 0; n < w; ++n) profile.push_back(s(n).valuation());

  std::optional<Valuation> first_max;
  std::optional<Valuation> second_max;
  for (std::uint64_t n = 0; n < w; ++n) {
    if (profile[n].is_infinite()) continue;
    auto& slot = n < half ? first_max : second_max;
    slot = slot ? max(*slot, profile[n]) : profile[n];
  }
  if (first_max && second_max && *second_max <= *first_max) {
    return Diverges{half, *second_max, false};
  }
  if (!second_max) why += "; trailing window is zero";
  else why += "; sampled valuations still growing";
  return Unknown{std::move(profile), std::move(why)};
}

}  // namespace

std::optional<TailBound> certified_tail_bound(const TermStream& s) {
  if (s.tail_bound) return s.tail_bound;
  if (!s.geometric) return std::nullopt;
  const GeometricTail g = *s.geometric;
  const Valuation vr = g.ratio.valuation();
  if (vr < Valuation(0)) return std::nullopt;
  const Valuation vt = s(g.from).valuation();
  auto head_min = std::make_shared<std::vector<Valuation>>(g.from + 1, Valuation::infinity());
  (*head_min)[g.from] = vt;
  for (std::uint64_t m = g.from; m-- > 0;) {
    (*head_min)[m] = min((*head_min)[m + 1], s(m).valuation());
  }
  return TailBound([head_min, g, vt, vr](std::uint64_t n) -> Valuation {
    if (n <= g.from) return (*head_min)[n];
    if (vt.is_infinite()) return vt;
    return vt + scale(vr, static_cast<std::int64_t>(n - g.from));
  });
}

const ApproxElement& ConvergenceVerdict::value() const {
  if (!converges()) throw NotCertified("series not certified convergent: " + describe());
  return as_converges().sum;
}

std::string ConvergenceVerdict::kind() const {
  if (converges()) return "converges";
  if (diverges()) return "diverges";
  return "unknown";
}

std::string ConvergenceVerdict::describe() const {
  std::ostringstream os;
  if (converges()) {
    const auto& c = as_converges();
    os << "converges to " << c.sum.to_string() << " [" << kind_name(c.certificate) << ", "
       << c.terms << " terms]";
  } else if (diverges()) {
    const auto& d = as_diverges();
    os << "diverges: terms from " << d.from << " have valuation <= " << d.floor
       << (d.certified ? " [certified]" : " [sampled]");
  } else {
    os << "unknown: " << as_unknown().reason;
  }
  return os.str();
}

FieldElement partial_sum(const TermStream& s, std::uint64_t last) {
  FieldElement acc;
  for (std::uint64_t n = 0; n <= last; ++n) acc += s(n);
  return acc;
}

ConvergenceVerdict sum(const TermStream& s, std::int64_t precision, const SumOptions& opts) {
  if (s.geometric) return sum_geometric(s, *s.geometric, opts);
  if (s.tail_bound) {
    const TailBound& bound = *s.tail_bound;
    const auto n0 = certified_length(bound, Valuation(precision), opts.max_terms);
    if (n0) {
      FieldElement head;
      for (std::uint64_t m = 0; m < *n0; ++m) {
        FieldElement t = s(m);
        if (t.valuation() < bound(m)) {
          throw CertificateViolation("term " + std::to_string(m) + " has valuation " +
                                     t.valuation().to_string() + " below its tail bound " +
                                     bound(m).to_string());
        }
        head += t;
      }
      const Valuation tail = bound(*n0);
      return Converges{ApproxElement{std::move(head), tail},
                       tail.is_infinite() ? CertificateKind::Finite : CertificateKind::TailBound,
                       *n0};
    }
    return sample_verdict(s, opts, "tail bound does not reach the target precision");
  }
  return sample_verdict(s, opts, "no certificate");
}

std::pair<TermStream, TermStream> split_pm(const TermStream& s) {
  auto term = s.term;
  TermStream plus{[term](std::uint64_t n) {
                    const FieldElement c = term(n);
                    return (abs(c) + c) / FieldElement(2);
                  },
                  s.tail_bound, std::nullopt};
  TermStream minus{[term](std::uint64_t n) {
                     const FieldElement c = term(n);
                     return (abs(c) - c) / FieldElement(2);
                   },
                   s.tail_bound, std::nullopt};
  return {std::move(plus), std::move(minus)};
}

Bijection Bijection::identity() {
  auto id = [](std::uint64_t n) { return n; };
  return {id, id, 0};
}

Bijection Bijection::pair_swap() {
  auto f = [](std::uint64_t n) { return n ^ 1u; };
  return {f, f, 1};
}

Bijection Bijection::block_reversal(std::uint64_t block) {
  if (block == 0) throw RangeError("block size must be positive");
  auto f = [block](std::uint64_t n) { return block * (n / block) + (block - 1 - n % block); };
  return {f, f, block - 1};
}

TermStream reorder(const TermStream& s, const Bijection& f, const SumOptions& opts) {
  for (std::uint64_t n = 0; n < opts.window; ++n) {
    if (f.inverse(f.forward(n)) != n || f.forward(f.inverse(n)) != n) {
      throw WindowInconsistency("bijection and inverse disagree at " + std::to_string(n));
    }
    if (f.max_displacement) {
      const std::uint64_t m = f.forward(n);
      const std::uint64_t d = m > n ? m - n : n - m;
      if (d > *f.max_displacement) {
        throw WindowInconsistency("displacement bound exceeded at " + std::to_string(n));
      }
    }
  }
  TermStream out;
  auto term = s.term;
  auto forward = f.forward;
  out.term = [term, forward](std::uint64_t n) { return term(forward(n)); };
  const auto bound = certified_tail_bound(s);
  if (bound && f.max_displacement) {
    const std::uint64_t d = *f.max_displacement;
    out.tail_bound = [b = *bound, d](std::uint64_t n) { return b(n >= d ? n - d : 0); };
  }
  return out;
}

TermStream group_pairs(const TermStream& s) {
  TermStream out;
  auto term = s.term;
  out.term = [term](std::uint64_t n) { return term(2 * n) + term(2 * n + 1); };
  if (const auto bound = certified_tail_bound(s)) {
    out.tail_bound = [b = *bound](std::uint64_t n) { return b(2 * n); };
  }
  return out;
}

ConvergenceVerdict dominated_convergence_check(const TermStream& a, const TermStream& b,
                                               std::int64_t precision,
                                               const SumOptions& opts) {
  for (std::uint64_t n = 0; n < opts.window; ++n) {
    if (abs(b(n)) > abs(a(n))) throw DominationViolated(n);
  }
  const auto bound = certified_tail_bound(a);
  if (!bound) {
    return Unknown{{}, "dominating series carries no certificate"};
  }
  TermStream inherited{b.term, bound, std::nullopt};
  return sum(inherited, precision, opts);
}

TermStream add(const TermStream& a, const TermStream& b) {
  TermStream out;
  out.term = [ta = a.term, tb = b.term](std::uint64_t n) { return ta(n) + tb(n); };
  const auto ba = certified_tail_bound(a);
  const auto bb = certified_tail_bound(b);
  if (ba && bb) {
    out.tail_bound = [ba = *ba, bb = *bb](std::uint64_t n) { return min(ba(n), bb(n)); };
  }
  return out;
}

TermStream negate(const TermStream& s) {
  TermStream out = s;
  out.term = [t = s.term](std::uint64_t n) { return -t(n); };
  return out;
}

TermStream finite_stream(std::vector<FieldElement> terms) {
  auto data = std::make_shared<const std::vector<FieldElement>>(std::move(terms));
  auto suffix = std::make_shared<std::vector<Valuation>>(data->size() + 1, Valuation::infinity());
  for (std::size_t m = data->size(); m-- > 0;) {
    (*suffix)[m] = min((*suffix)[m + 1], (*data)[m].valuation());
  }
  TermStream out;
  out.term = [data](std::uint64_t n) {
    return n < data->size() ? (*data)[n] : FieldElement();
  };
  out.tail_bound = [suffix](std::uint64_t n) {
    return n < suffix->size() ? (*suffix)[n] : Valuation::infinity();
  };
  return out;
}

TermStream geometric_stream(const FieldElement& first, const FieldElement& ratio) {
  TermStream out;
  out.term = [first, ratio](std::uint64_t n) {
    return first * ratio.pow(static_cast<std::int64_t>(n));
  };
  out.geometric = GeometricTail{0, ratio};
  const Valuation vr = ratio.valuation();
  if (vr >= Valuation(0)) {
    const Valuation vf = first.valuation();
    out.tail_bound = [vf, vr](std::uint64_t n) {
      return vf + scale(vr, static_cast<std::int64_t>(n));
    };
  }
  return out;
}

TermStream zero_stream() { return finite_stream({}); }

}  // namespace levi
