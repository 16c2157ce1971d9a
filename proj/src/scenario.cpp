#include "levi/scenario.hpp"

#include <map>
#include <regex>
#include <sstream>

#include "levi/double_series.hpp"
#include "levi/error.hpp"
#include "levi/expr.hpp"
#include "levi/faa_di_bruno.hpp"
#include "levi/generators.hpp"
#include "levi/power_series.hpp"

namespace levi {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

// Splits on `sep` outside parentheses.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '(') ++depth;
    if (s[k] == ')') --depth;
    if (s[k] == sep && depth == 0) {
      out.push_back(trim(s.substr(start, k - start)));
      start = k + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

// Verdicts, reports and values produced by a query, in one shape.
struct QueryResult {
  std::optional<ConvergenceVerdict> verdict;
  std::optional<ApproxElement> value;
  int failed_hypothesis = 0;
  bool has_hypotheses = false;
  std::string text;
};

QueryResult from_verdict(ConvergenceVerdict v) {
  QueryResult r;
  if (v.converges()) r.value = v.value();
  r.text = v.describe();
  r.verdict = std::move(v);
  return r;
}

QueryResult from_value(ApproxElement v) {
  QueryResult r;
  r.text = v.to_string();
  r.value = std::move(v);
  return r;
}

std::string certificate_of(const QueryResult& q) {
  if (!q.verdict || !q.verdict->converges()) return q.verdict ? q.verdict->kind() : "";
  switch (q.verdict->as_converges().certificate) {
    case CertificateKind::Geometric:
      return "geometric";
    case CertificateKind::Finite:
      return "finite";
    case CertificateKind::TailBound:
      return "tail-bound";
  }
  return "";
}

class Runner {
 public:
  explicit Runner(const ScenarioOptions& opts) : opts_(opts) {
    sum_opts_.window = opts.window;
  }

  Report run(std::string_view source) {
    std::vector<std::pair<std::size_t, std::string>> checks;
    std::istringstream in{std::string(source)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const std::string s = trim(raw);
      if (s.empty() || s[0] == '#') continue;
      try {
        if (starts_with(s, "check ")) {
          checks.emplace_back(line, s.substr(6));
        } else {
          statement(s);
        }
      } catch (const Error& e) {
        throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
      }
    }
    report_.precision = opts_.precision.value_or(precision_);
    report_.seed = opts_.seed;
    for (const auto& [ln, text] : checks) run_check(ln, text);
    return report_;
  }

 private:
  void statement(const std::string& s) {
    if (starts_with(s, "name ")) {
      report_.scenario = trim(s.substr(5));
    } else if (starts_with(s, "precision ")) {
      precision_ = to_integer(parse_element(trim(s.substr(10))));
      if (precision_ < 1) throw ParseError("precision must be positive", 0);
    } else if (starts_with(s, "let ")) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ParseError("let needs '='", 0);
      lets_.insert_or_assign(trim(s.substr(4, eq - 4)), parse_element(s.substr(eq + 1), lets_));
    } else if (starts_with(s, "series ") || starts_with(s, "stream ") ||
               starts_with(s, "array ")) {
      definition(s);
    } else {
      throw ParseError("unknown statement '" + s + "'", 0);
    }
  }

  // "S(j) = expr" or "S = builtin name"; returns name, index vars, body.
  struct Header {
    std::string name;
    std::vector<std::string> vars;
    std::string body;
  };

  static Header header(const std::string& h) {
    const auto eq = h.find('=');
    if (eq == std::string::npos) throw ParseError("definition needs '='", 0);
    Header out;
    std::string lhs = trim(h.substr(0, eq));
    out.body = trim(h.substr(eq + 1));
    const auto paren = lhs.find('(');
    if (paren != std::string::npos) {
      if (lhs.back() != ')') throw ParseError("bad index list in '" + lhs + "'", 0);
      for (auto& v : split_top(lhs.substr(paren + 1, lhs.size() - paren - 2), ',')) {
        out.vars.push_back(v);
      }
      lhs = trim(lhs.substr(0, paren));
    }
    out.name = lhs;
    return out;
  }

  // Bound expression in one variable, as an integer-valued function.
  TailBound bound_function(const std::string& text, const std::string& var) const {
    auto f = index_function(parse_expression(text), var, lets_);
    return [f](std::uint64_t n) { return Valuation(to_integer(f(n))); };
  }

  static std::pair<std::string, std::string> clause_eq(const std::string& c) {
    const auto eq = c.find('=');
    if (eq == std::string::npos) throw ParseError("clause needs '=': " + c, 0);
    return {trim(c.substr(0, eq)), trim(c.substr(eq + 1))};
  }

  void definition(const std::string& s) {
    const auto sp = s.find(' ');
    const std::string kind = s.substr(0, sp);
    auto clauses = split_top(s.substr(sp + 1), ';');
    const Header h = header(clauses[0]);
    if (starts_with(h.body, "builtin ")) {
      builtin_object(kind, h.name, trim(h.body.substr(8)));
      return;
    }
    const ExprPtr body = parse_expression(h.body);
    if (kind == "array") {
      define_array(h, body, clauses);
    } else {
      define_sequence(kind, h, body, clauses);
    }
  }

  void define_sequence(const std::string& kind, const Header& h, const ExprPtr& body,
                       const std::vector<std::string>& clauses) {
    if (h.vars.size() != 1) throw ParseError(kind + " needs exactly one index", 0);
    const std::string var = h.vars[0];
    std::map<std::uint64_t, FieldElement> at;
    std::optional<GeometricTail> geometric;
    std::optional<std::string> bound_text;
    std::optional<std::uint64_t> degree;
    for (std::size_t k = 1; k < clauses.size(); ++k) {
      const std::string& c = clauses[k];
      if (starts_with(c, "at ")) {
        auto [lhs, rhs] = clause_eq(c.substr(3));
        at[static_cast<std::uint64_t>(to_integer(parse_element(lhs, lets_)))] =
            parse_element(rhs, lets_);
      } else if (starts_with(c, "bound")) {
        bound_text = clause_eq(c).second;
      } else if (starts_with(c, "geometric ")) {
        static const std::regex re(R"(geometric\s+from\s+(\d+)\s+ratio\s+(.+))");
        std::smatch m;
        if (!std::regex_match(c, m, re)) throw ParseError("bad geometric clause: " + c, 0);
        geometric = GeometricTail{std::stoull(m[1]), parse_element(m[2].str(), lets_)};
      } else if (starts_with(c, "degree ")) {
        degree = static_cast<std::uint64_t>(to_integer(parse_element(c.substr(7), lets_)));
      } else {
        throw ParseError("unknown clause: " + c, 0);
      }
    }
    auto base = index_function(body, var, lets_);
    auto f = [base, at](std::uint64_t n) {
      const auto it = at.find(n);
      return it != at.end() ? it->second : base(n);
    };
    if (kind == "stream") {
      TermStream t;
      t.term = f;
      if (bound_text) t.tail_bound = bound_function(*bound_text, var);
      t.geometric = geometric;
      streams_[h.name] = t;
      return;
    }
    PowerSeries p;
    p.coeff = f;
    p.geometric = geometric;
    p.degree = degree;
    if (bound_text) {
      const TailBound b = bound_function(*bound_text, var);
      const std::int64_t offset = b(0).value();
      const std::int64_t slope = b(1).value() - offset;
      for (std::uint64_t j = 2; j < 6; ++j) {
        if (b(j) != Valuation(slope * static_cast<std::int64_t>(j) + offset)) {
          throw ParseError("series bound must be affine in " + var, 0);
        }
      }
      p.bound = AffineBound{slope, offset};
    }
    series_[h.name] = p;
  }

  void define_array(const Header& h, const ExprPtr& body, const std::vector<std::string>& clauses) {
    if (h.vars.size() != 2) throw ParseError("array needs two indices", 0);
    struct Override {
      std::optional<std::uint64_t> i, j;
      FieldElement value;
    };
    std::vector<Override> at;
    DoubleArray d;
    for (std::size_t k = 1; k < clauses.size(); ++k) {
      const std::string& c = clauses[k];
      if (starts_with(c, "at ")) {
        auto [lhs, rhs] = clause_eq(c.substr(3));
        if (lhs.size() < 2 || lhs.front() != '(' || lhs.back() != ')') {
          throw ParseError("array override needs (i, j)", 0);
        }
        const auto ij = split_top(lhs.substr(1, lhs.size() - 2), ',');
        if (ij.size() != 2) throw ParseError("array override needs (i, j)", 0);
        auto index = [this](const std::string& t) -> std::optional<std::uint64_t> {
          if (t == "*") return std::nullopt;
          return static_cast<std::uint64_t>(to_integer(parse_element(t, lets_)));
        };
        at.push_back({index(ij[0]), index(ij[1]), parse_element(rhs, lets_)});
      } else if (starts_with(c, "bound")) {
        const auto [lhs, rhs] = clause_eq(c);
        const auto paren = lhs.find('(');
        const std::string var = trim(lhs.substr(paren + 1, lhs.find(')') - paren - 1));
        d.joint_bound = bound_function(rhs, var);
      } else {
        throw ParseError("unknown clause: " + c, 0);
      }
    }
    const std::string vi = h.vars[0];
    const std::string vj = h.vars[1];
    Bindings names = lets_;
    d.entry = [body, vi, vj, names, at](std::uint64_t i, std::uint64_t j) {
      for (const auto& o : at) {
        if ((!o.i || *o.i == i) && (!o.j || *o.j == j)) return o.value;
      }
      Bindings local = names;
      local.insert_or_assign(vi, FieldElement(static_cast<std::int64_t>(i)));
      local.insert_or_assign(vj, FieldElement(static_cast<std::int64_t>(j)));
      return evaluate(*body, local);
    };
    arrays_[h.name] = d;
  }

  void builtin_object(const std::string& kind, const std::string& name, const std::string& what) {
    if (kind == "array" && what == "counterexample") {
      arrays_[name] = build_counterexample();
    } else if (kind == "stream" && what == "counterexample_weights") {
      streams_[name] = counterexample_weights();
    } else if (kind == "series" && what == "blowup_inner") {
      series_[name] = blowup_inner();
    } else if (kind == "series" && what == "blowup_outer") {
      series_[name] = blowup_outer();
    } else {
      throw ParseError("unknown builtin " + kind + " '" + what + "'", 0);
    }
  }

  template <class M>
  static const typename M::mapped_type& lookup(const M& m, const std::string& name,
                                               const char* what) {
    const auto it = m.find(name);
    if (it == m.end()) throw EvaluationError(std::string("no ") + what + " named '" + name + "'");
    return it->second;
  }

  std::int64_t integer_arg(const std::string& s, const Bindings& b) const {
    return to_integer(parse_element(s, b));
  }

  QueryResult query(const std::string& text, const Bindings& b) const {
    const auto paren = text.find('(');
    if (paren == std::string::npos || text.back() != ')') {
      throw ParseError("bad query '" + text + "'", 0);
    }
    const std::string q = trim(text.substr(0, paren));
    const auto args = split_top(text.substr(paren + 1, text.size() - paren - 2), ',');
    auto need = [&](std::size_t n) {
      if (args.size() != n) {
        throw ParseError(q + " takes " + std::to_string(n) + " arguments", 0);
      }
    };
    const std::int64_t p = report_.precision;
    const auto& so = sum_opts_;
    auto index = [&](std::size_t k) {
      const std::int64_t v = integer_arg(args[k], b);
      if (v < 0) throw EvaluationError("negative index in " + text);
      return static_cast<std::uint64_t>(v);
    };
    if (q == "sum") {
      need(1);
      return from_verdict(sum(lookup(streams_, args[0], "stream"), p, so));
    }
    if (q == "partial") {
      need(3);
      const auto& s = lookup(series_, args[0], "series");
      return from_value(ApproxElement::exact(
          partial_sum(terms_at(s, parse_element(args[1], b)), index(2))));
    }
    if (q == "eval" || q == "abs_eval") {
      need(2);
      const auto& s = lookup(series_, args[0], "series");
      const FieldElement x = parse_element(args[1], b);
      if (q == "eval") return from_verdict(eval(s, x, p, so));
      return from_verdict(eval(abs_series(s), abs(x), p, so));
    }
    if (q == "row" || q == "column") {
      need(2);
      const auto& d = lookup(arrays_, args[0], "array");
      return from_verdict(q == "row" ? row_sum(d, index(1), p, so) : column_sum(d, index(1), p, so));
    }
    if (q == "double") {
      need(1);
      return from_verdict(double_sum(lookup(arrays_, args[0], "array"), p, so));
    }
    if (q == "by_rows" || q == "by_columns") {
      need(1);
      const auto t = fubini_sum(lookup(arrays_, args[0], "array"), p, so);
      return from_value(q == "by_rows" ? t.by_rows : t.by_columns);
    }
    if (q == "antidiagonal") {
      need(1);
      return from_value(partition_sum(lookup(arrays_, args[0], "array"),
                                      PartitionOfGrid::antidiagonals(), p, so));
    }
    if (q == "product") {
      need(2);
      return from_value(product_series(lookup(streams_, args[0], "stream"),
                                       lookup(streams_, args[1], "stream"), p, so));
    }
    if (q == "compose" || q == "substitution") {
      need(3);
      const auto& t = lookup(series_, args[0], "series");
      const auto& s = lookup(series_, args[1], "series");
      const FieldElement x = parse_element(args[2], b);
      if (q == "compose") return from_verdict(composite_eval(t, s, x, p, so));
      const auto r = substitution_criterion(t, s, x, p, so);
      QueryResult out;
      out.has_hypotheses = true;
      out.failed_hypothesis = r.failed_hypothesis();
      if (r.certified()) out.value = r.composite;
      out.text = to_string(r.outcome) + ": " + r.detail;
      if (r.outcome == SubstitutionOutcome::Inconclusive) out.failed_hypothesis = -1;
      return out;
    }
    if (q == "coeff") {
      need(3);
      const auto& t = lookup(series_, args[0], "series");
      const auto& s = lookup(series_, args[1], "series");
      const std::uint64_t j = index(2);
      return from_verdict(expected_coefficient(t, s, PowerTable(s, j), j, p, so));
    }
    if (q == "derivative") {
      need(3);
      const auto& t = lookup(series_, args[0], "series");
      const auto& s = lookup(series_, args[1], "series");
      return from_value(composite_derivative(t, s, static_cast<int>(index(2)), p));
    }
    if (q == "converse") {
      need(1);
      const auto r = converse_criterion(lookup(arrays_, args[0], "array"), p, so);
      QueryResult out;
      out.has_hypotheses = true;
      out.failed_hypothesis = r.failed_hypothesis;
      if (r.holds() && r.verdict.converges()) out.value = r.verdict.value();
      out.text = r.detail;
      return out;
    }
    throw ParseError("unknown query '" + q + "'", 0);
  }

  static std::string show(const ApproxElement& a) { return a.to_string(); }

  // Evaluates one check under the given bindings; false with a reason on failure.
  bool check_once(const std::string& body, const Bindings& b, CheckResult& out) const {
    const std::int64_t p = report_.precision;
    auto split_eq = [&](const std::string& s) {
      const auto eq = s.rfind('=');
      if (eq == std::string::npos) throw ParseError("check needs '='", 0);
      return std::pair{trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
    };
    auto record = [&](const QueryResult& r) {
      out.value = r.value ? show(*r.value) : r.text;
      out.certificate = certificate_of(r);
      out.detail = r.text;
    };

    if (starts_with(body, "value ") || starts_with(body, "exact ")) {
      const auto [q, e] = split_eq(body.substr(6));
      const QueryResult r = query(q, b);
      record(r);
      if (!r.value) return false;
      const FieldElement want = parse_element(e, b);
      if (starts_with(body, "exact ")) return r.value->is_exact() && r.value->head == want;
      return equal_at(*r.value, want, p);
    }
    if (starts_with(body, "same ")) {
      const auto qs = split_top(body.substr(5), ',');
      if (qs.size() != 2) throw ParseError("same needs two queries", 0);
      const QueryResult a = query(qs[0], b);
      const QueryResult c = query(qs[1], b);
      record(a);
      out.detail = a.text + " | " + c.text;
      return a.value && c.value && equal_at(*a.value, *c.value, p);
    }
    if (starts_with(body, "diverges ")) {
      static const std::regex re(R"((.+\))\s+floor\s+(.+))");
      std::smatch m;
      std::string q = trim(body.substr(9));
      std::optional<std::string> floor;
      if (std::regex_match(q, m, re)) {
        floor = m[2].str();
        q = trim(m[1].str());
      }
      const QueryResult r = query(q, b);
      record(r);
      if (!r.verdict || !r.verdict->diverges()) return false;
      if (!floor) return true;
      return r.verdict->as_diverges().floor == Valuation(integer_arg(*floor, b));
    }
    if (starts_with(body, "valuation ")) {
      const auto [q, e] = split_eq(body.substr(10));
      const QueryResult r = query(q, b);
      record(r);
      return r.value && r.value->valuation_known() &&
             r.value->head.valuation() == Valuation(integer_arg(e, b));
    }
    if (starts_with(body, "fails ")) {
      const std::string rest = trim(body.substr(6));
      const auto sp = rest.rfind(' ');
      const QueryResult r = query(trim(rest.substr(0, sp)), b);
      record(r);
      return r.has_hypotheses && r.failed_hypothesis == integer_arg(rest.substr(sp + 1), b);
    }
    if (starts_with(body, "holds ")) {
      const QueryResult r = query(trim(body.substr(6)), b);
      record(r);
      return r.has_hypotheses && r.failed_hypothesis == 0;
    }
    if (starts_with(body, "random ")) return random_check(trim(body.substr(7)), b, out);
    throw ParseError("unknown check '" + body + "'", 0);
  }

  bool random_check(const std::string& body, const Bindings& b, CheckResult& out) const {
    const std::int64_t p = report_.precision;
    const auto sp = body.find(' ');
    const std::string what = body.substr(0, sp);
    const std::int64_t count = integer_arg(body.substr(sp + 1), b);
    std::int64_t agree = 0;
    for (std::int64_t k = 0; k < count; ++k) {
      const auto u = static_cast<std::uint64_t>(k);
      if (what == "product") {
        const TermStream x = gen::certified_stream(gen::mix(opts_.seed, u, 1));
        const TermStream y = gen::certified_stream(gen::mix(opts_.seed, u, 2));
        const ApproxElement prod = product_series(x, y, p, sum_opts_);
        if (equal_at(prod, sum(x, p, sum_opts_).value() * sum(y, p, sum_opts_).value(), p)) {
          ++agree;
        }
      } else if (what == "fubini") {
        const DoubleArray d = gen::certified_array(gen::mix(opts_.seed, u, 3));
        const FubiniTriple t = fubini_sum(d, p, sum_opts_);
        const ApproxElement anti = partition_sum(d, PartitionOfGrid::antidiagonals(), p, sum_opts_);
        if (equal_at(t.linearized, t.by_rows, p) && equal_at(t.linearized, t.by_columns, p) &&
            equal_at(t.linearized, anti, p)) {
          ++agree;
        }
      } else {
        throw ParseError("unknown random check '" + what + "'", 0);
      }
    }
    out.value = std::to_string(agree) + "/" + std::to_string(count);
    out.detail = "seed " + std::to_string(opts_.seed);
    return agree == count;
  }

  void run_check(std::size_t line, const std::string& text) {
    CheckResult out;
    out.line = line;
    out.check = text;
    static const std::regex loop(R"((.*)\s+for\s+([A-Za-z_]\w*)\s+in\s+(-?\d+)\.\.(-?\d+))");
    std::smatch m;
    try {
      if (std::regex_match(text, m, loop)) {
        const std::string body = trim(m[1].str());
        const std::string var = m[2].str();
        const std::int64_t lo = std::stoll(m[3]);
        const std::int64_t hi = std::stoll(m[4]);
        out.passed = true;
        for (std::int64_t v = lo; v <= hi && out.passed; ++v) {
          Bindings b = lets_;
          b.insert_or_assign(var, FieldElement(v));
          out.passed = check_once(body, b, out);
          if (!out.passed) out.detail = var + " = " + std::to_string(v) + ": " + out.detail;
        }
        if (out.passed) {
          out.value = std::to_string(hi - lo + 1) + " cases";
          out.detail = var + " in " + std::to_string(lo) + ".." + std::to_string(hi);
        }
      } else {
        out.passed = check_once(text, lets_, out);
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
    } catch (const Error& e) {
      out.passed = false;
      out.detail = std::string("error: ") + e.what();
    }
    report_.checks.push_back(std::move(out));
  }

  ScenarioOptions opts_;
  SumOptions sum_opts_;
  Report report_;
  std::int64_t precision_ = 32;
  Bindings lets_;
  std::map<std::string, PowerSeries> series_;
  std::map<std::string, TermStream> streams_;
  std::map<std::string, DoubleArray> arrays_;
};

const std::map<std::string, std::string, std::less<>>& builtins() {
  static const std::map<std::string, std::string, std::less<>> table{
      {"example-nonsubstitution", R"(name example-nonsubstitution
precision 32
# S(X) = eps/(1-eps) - X - X^2 - ...,  T(Y) = sum (Y/eps)^i
series S(j) = -1 ; at 0 = e/(1-e) ; bound(j) = 0 ; geometric from 1 ratio 1
series T(i) = w^i ; bound(i) = -i ; geometric from 0 ratio w
check exact eval(S, e) = 0
check exact partial(S, e, N) = e^(N+1)/(1-e) for N in 0..31
check exact abs_eval(S, e) = 2*e/(1-e)
check diverges coeff(T, S, 0) floor 0
check exact compose(T, S, e) = 1
check fails substitution(T, S, e) 2
check diverges eval(T, 2*e/(1-e))
)"},
      {"fubini-counterexample", R"(name fubini-counterexample
precision 32
# a_i0 = 1 - k_0, a_ij = -k_j with k_0 = (1-2eps)/(1-eps), k_j = eps^j
array A = builtin counterexample
stream k = builtin counterexample_weights
check exact row(A, i) = 0 for i in 0..64
check value sum(k) = 1
check diverges column(A, 0)
check fails converse(A) 2
)"},
      {"faadibruno-blowup", R"(name faadibruno-blowup
precision 32
# S = eps - w X + w^2 X^2 + sum_(n>=3) eps^n X^n,  T = sum X^n
series S = builtin blowup_inner
series T = builtin blowup_outer
check value derivative(T, S, 1) = -w/(1-e)^2
check value derivative(T, S, 2) = 2*w^2/(1-e)^3 + 2*w^2/(1-e)^2
check valuation derivative(T, S, n) = -n for n in 1..8
)"},
      {"product-geometric", R"(name product-geometric
precision 32
stream g(n) = e^n ; bound(n) = n ; geometric from 0 ratio e
stream h(n) = (n+1)*e^n ; bound(n) = n
check value product(g, g) = 1/(1-e)^2
check same product(g, g), sum(h)
check value sum(h) = 1/(1-e)^2
check random product 20
)"},
  };
  return table;
}

}  // namespace

bool Report::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema"] = "levi-report/1";
  j["scenario"] = scenario;
  j["precision"] = precision;
  j["seed"] = seed;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"line", c.line},
                           {"check", c.check},
                           {"passed", c.passed},
                           {"value", c.value},
                           {"certificate", c.certificate},
                           {"detail", c.detail}});
  }
  if (wall_time_ms) j["wall_time_ms"] = *wall_time_ms;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  std::size_t ok = 0;
  for (const auto& c : checks) {
    ok += c.passed ? 1 : 0;
    os << (c.passed ? "PASS" : "FAIL") << "  line " << c.line << ": " << c.check << "\n";
    os << "      -> " << c.value;
    if (!c.certificate.empty()) os << " [" << c.certificate << "]";
    os << "\n";
    if (!c.passed && !c.detail.empty()) os << "      " << c.detail << "\n";
  }
  os << (scenario.empty() ? std::string("scenario") : scenario) << ": " << ok << "/"
     << checks.size() << " checks passed at precision " << precision << "\n";
  if (wall_time_ms) os << "wall time " << *wall_time_ms << " ms\n";
  return os.str();
}

Report run_scenario(std::string_view source, const ScenarioOptions& opts) {
  return Runner(opts).run(source);
}

std::vector<std::string> builtin_scenarios() {
  std::vector<std::string> out;
  for (const auto& [name, _] : builtins()) out.push_back(name);
  return out;
}

std::optional<std::string> builtin_source(std::string_view name) {
  const auto it = builtins().find(name);
  if (it == builtins().end()) return std::nullopt;
  return it->second;
}

}  // namespace levi
