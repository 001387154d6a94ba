// Acceptance suite: one PASS/FAIL line per criterion, with timings.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "esc/measures.hpp"
#include "esc/oracle.hpp"
#include "esc/parser.hpp"
#include "esc/strategy.hpp"
#include "esc/substitution.hpp"

using namespace esc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

Term P(const char* s) { return parse_term(s); }

// ---------------------------------------------------------------------------
// Independent termination measure, from the potential and measure clauses.

class OwnMeasure {
public:
  std::uint64_t measure(const Term& t) {
    switch (t.tag()) {
    case Term::Tag::Var: return 1;
    case Term::Tag::Hole: return 0;
    case Term::Tag::Pair: return measure(t.child(0)) + measure(t.child(1));
    case Term::Tag::Lam:
    case Term::Tag::Bang: return measure(t.body());
    case Term::Tag::Par:
    case Term::Tag::Der: return measure(t.body()) + 1;
    case Term::Tag::Sub: return measure(t.value()) + measure(t.body()) + 1;
    case Term::Tag::Cut: return measure(t.value()) * (pot(t.body(), t.binder()) + 1) + measure(t.body());
    }
    return 0;
  }

  std::uint64_t pot(const Term& t, const Var& x) {
    auto key = std::make_pair(static_cast<const void*>(t.id()), x.name);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::uint64_t r = pot_raw(t, x);
    memo_.emplace(key, r);
    return r;
  }

private:
  std::map<std::pair<const void*, std::string>, std::uint64_t> memo_;

  // Potential of x in a scope that binds `b`: zero when shadowed.
  std::uint64_t under(const Term& body, const Var& b, const Var& x) { return b == x ? 0 : pot(body, x); }

  std::uint64_t pot_raw(const Term& t, const Var& x) {
    switch (t.tag()) {
    case Term::Tag::Var: return t.occ() == x ? 1 : 0;
    case Term::Tag::Hole: return 0;
    case Term::Tag::Pair: return pot(t.child(0), x) + pot(t.child(1), x);
    case Term::Tag::Lam: return under(t.body(), t.binder(), x);
    case Term::Tag::Bang: return pot(t.body(), x);
    case Term::Tag::Par:
      if (t.occ() == x) return 1 + pot(t.body(), t.binder()) + pot(t.body(), t.binder2());
      return (t.binder() == x || t.binder2() == x) ? 0 : pot(t.body(), x);
    case Term::Tag::Sub:
      if (t.occ() == x) return 1;
      return pot(t.value(), x) + under(t.body(), t.binder(), x);
    case Term::Tag::Der:
      if (t.occ() == x) return 1 + under(t.body(), t.binder(), x) + pot(t.body(), t.binder());
      return under(t.body(), t.binder(), x);
    case Term::Tag::Cut: {
      std::uint64_t pv = pot(t.value(), x);
      std::uint64_t pb = under(t.body(), t.binder(), x);
      return pb + (pv ? pv * (pot(t.body(), t.binder()) + 1) : 0);
    }
    }
    return 0;
  }
};

std::uint64_t own_measure(const Term& t) {
  OwnMeasure m;
  return m.measure(t);
}

// ---------------------------------------------------------------------------
// Grammar transcription for good and bad contexts, on the context term itself.

bool has_hole(const Term& t) {
  if (t.tag() == Term::Tag::Hole) return true;
  for (int i = 0; i < t.arity(); ++i)
    if (has_hole(t.child(i))) return true;
  return false;
}

int hole_child(const Term& c) {
  for (int i = 0; i < c.arity(); ++i)
    if (has_hole(c.child(i))) return i;
  return -1;
}

std::set<Var> own_dfv(const Term& c) {
  if (c.tag() == Term::Tag::Hole) return {};
  int i = hole_child(c);
  std::set<Var> d = own_dfv(c.child(i));
  auto conclude = [&](const Var& concl, std::initializer_list<Var> bound) {
    bool hit = false;
    for (auto& b : bound) hit |= d.count(b) > 0;
    if (!hit) return d;
    for (auto& b : bound) d.erase(b);
    d.insert(concl);
    return d;
  };
  switch (c.tag()) {
  case Term::Tag::Pair:
  case Term::Tag::Bang: return d;
  case Term::Tag::Lam: d.erase(c.binder()); return d;
  case Term::Tag::Cut:
    if (i == 0) return d;  // cut{V>x}t
    d.erase(c.binder());
    return d;
  case Term::Tag::Sub:
    if (i == 0) {  // sub{m;V>x}t
      d.insert(c.occ());
      return d;
    }
    return conclude(c.occ(), {c.binder()});
  case Term::Tag::Par: return conclude(c.occ(), {c.binder(), c.binder2()});
  case Term::Tag::Der: return conclude(c.occ(), {c.binder()});
  default: return d;
  }
}

bool grammar_good(const Term& c);

// V_G ::= <> | (G,t) | (t,G) | \x.G | !G
bool grammar_value_good(const Term& c) {
  switch (c.tag()) {
  case Term::Tag::Hole: return true;
  case Term::Tag::Pair:
  case Term::Tag::Lam:
  case Term::Tag::Bang: return grammar_good(c.child(hole_child(c)));
  default: return false;
  }
}

// G ::= V_G | par{m>x,y}G | sub{m;v>x}G | sub{m;V_G>x}t | der{e>x}G | cut{v>x}G if x not in dfv(G)
bool grammar_good(const Term& c) {
  if (grammar_value_good(c)) return true;
  int i = hole_child(c);
  switch (c.tag()) {
  case Term::Tag::Par:
  case Term::Tag::Der: return grammar_good(c.child(i));
  case Term::Tag::Sub: return i == 0 ? grammar_value_good(c.child(0)) : grammar_good(c.child(1));
  case Term::Tag::Cut: return i == 1 && grammar_good(c.child(1)) && own_dfv(c.child(1)).count(c.binder()) == 0;
  default: return false;
  }
}

// B ::= cut{V>x}t | cut{v>x}C if x in dfv(C) | C<B>
bool grammar_bad(const Term& c) {
  if (c.tag() == Term::Tag::Hole) return false;
  int i = hole_child(c);
  if (c.tag() == Term::Tag::Cut) {
    if (i == 0) return true;
    if (own_dfv(c.child(1)).count(c.binder())) return true;
  }
  return grammar_bad(c.child(i));
}

// ---------------------------------------------------------------------------
// Graph helpers

struct PathLengths {
  bool acyclic = true;
  std::size_t shortest = 0, longest = 0;
};

PathLengths own_lengths(const ReductionGraph& g) {
  std::size_t n = g.size();
  std::vector<int> state(n, 0);
  std::vector<std::size_t> lo(n, 0), hi(n, 0);
  PathLengths out;
  std::function<void(std::size_t)> visit = [&](std::size_t u) {
    state[u] = 1;
    bool first = true;
    for (auto e : g.out[u]) {
      std::size_t v = g.edges[e].to;
      if (state[v] == 1) out.acyclic = false;
      if (state[v] == 0) visit(v);
      if (first) lo[u] = lo[v] + 1;
      lo[u] = std::min(lo[u], lo[v] + 1);
      hi[u] = std::max(hi[u], hi[v] + 1);
      first = false;
    }
    state[u] = 2;
  };
  visit(0);
  out.shortest = lo[0];
  out.longest = hi[0];
  return out;
}

std::size_t sinks_of(const ReductionGraph& g) {
  std::size_t n = 0;
  for (std::size_t u = 0; u < g.size(); ++u) n += g.out[u].empty() ? 1 : 0;
  return n;
}

std::string s(std::size_t n) { return std::to_string(n); }

// ---------------------------------------------------------------------------
// Criteria

Outcome omega_cycle() {
  Term o = gen_omega();
  const std::vector seq{RuleKind::Lolli, RuleKind::AxE1, RuleKind::BangDer, RuleKind::Weak, RuleKind::AxM1};
  // All micro paths of length five following the kind sequence.
  std::vector<Term> frontier{o};
  for (std::size_t k = 0; k < seq.size(); ++k) {
    std::vector<Term> next;
    for (auto& t : frontier) {
      for (auto& r : redexes(t, Mode::Micro))
        if (r.kind == seq[k]) next.push_back(apply(t, r));
    }
    if (next.empty()) return fail(std::string("no ") + rule_name(seq[k]) + " step at position " + s(k + 1));
    frontier = std::move(next);
  }
  for (auto& t : frontier)
    if (!alpha_eq(t, o)) return fail("a kind-matching path ends at " + print(t));
  // No shorter return to Ω along any micro path.
  std::vector<Term> layer{o};
  for (int d = 1; d < 5; ++d) {
    std::vector<Term> next;
    for (auto& t : layer)
      for (auto& r : redexes(t, Mode::Micro)) {
        Term u = apply(t, r);
        if (alpha_eq(u, o)) return fail("micro path of length " + std::to_string(d) + " back to the start");
        next.push_back(u);
      }
    layer = std::move(next);
  }
  return {true, s(frontier.size()) + " kind-matching path(s), all alpha-equal to the start"};
}

Outcome lolli_example() {
  Term t = P("cut{\\e. der{e>m} m > n} sub{n; !f>o} o");
  Term want = P("cut{!f>e} der{e>m} cut{m>o} o");
  std::size_t n = 0;
  for (auto& r : redexes(t, Mode::Micro)) {
    if (r.kind != RuleKind::Lolli) continue;
    ++n;
    Term got = apply(t, r);
    if (!alpha_eq(got, want)) return fail("got " + print(got));
  }
  if (n != 1) return fail(s(n) + " lolli redexes");
  return {true, "alpha-exact"};
}

Outcome meta_substitution() {
  Term got = subst_exp(P("der{e>e'}(e',e)"), Var{"e", VarKind::Exponential}, P("!cut{f>g}g"));
  Term want = P("cut{f>g} cut{g>e'} (e', !cut{f>g}g)");
  if (!alpha_eq(got, want)) return fail("got " + print(got));
  return {true, "alpha-exact"};
}

Outcome measure_decrease() {
  std::mt19937_64 rng(2024);
  std::size_t steps = 0, terms = 0, typed_steps = 0;
  auto walk = [&](Term t, bool typed) {
    ++terms;
    for (int depth = 0; depth < 30; ++depth) {
      auto all = redexes(t, Mode::Micro);
      if (all.empty()) break;
      std::uint64_t m = own_measure(t);
      if (m != measure(t)) throw Error("measure disagreement on " + print(t));
      for (auto& r : all) {
        if (r.kind == RuleKind::Lolli) continue;
        Term u = apply(t, r);
        std::uint64_t mu = own_measure(u);
        if (!(mu < m)) throw Error(redex_str(r) + " on " + print(t) + ": " + s(m) + " -> " + s(mu));
        ++steps;
        typed_steps += typed;
      }
      t = apply(t, all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)]);
    }
  };
  try {
    for (std::uint64_t seed = 1; steps < 10000 && seed < 100000; seed += 200) {
      for (auto& t : sample_typed(seed, 100, 30)) walk(t.term, true);
      for (auto& t : sample_untyped(seed, 100, 30)) walk(t, false);
    }
  } catch (const Error& e) {
    return fail(e.what());
  }
  if (steps < 10000) return fail("only " + s(steps) + " steps sampled");
  return {true, s(steps) + " non-lolli steps (" + s(typed_steps) + " typed) from " + s(terms) + " terms"};
}

Outcome local_termination() {
  std::vector<Term> ts;
  for (auto& t : sample_typed(7, 500, 25)) ts.push_back(t.term);
  for (auto& t : sample_untyped(7, 500, 25)) ts.push_back(t);
  std::mt19937_64 rng(5);
  std::size_t total = 0, max_ratio_num = 0, max_ratio_den = 1;
  for (auto& t0 : ts) {
    std::uint64_t bound = own_measure(t0);
    for (int run = 0; run < 2; ++run) {
      Term t = t0;
      std::size_t n = 0;
      for (;;) {
        auto rs = redexes(t, Mode::NonLolliMicro);
        if (rs.empty()) break;
        if (n >= bound) return fail("more than measure = " + s(bound) + " steps on " + print(t0));
        const Redex& r = run == 0 ? rs.front() : rs[std::uniform_int_distribution<std::size_t>(0, rs.size() - 1)(rng)];
        t = apply(t, r);
        ++n;
      }
      total += n;
      if (n * max_ratio_den > max_ratio_num * bound) {
        max_ratio_num = n;
        max_ratio_den = bound;
      }
    }
  }
  return {true, s(ts.size()) + " terms, 2 runs each, " + s(total) + " steps; worst steps/measure " + s(max_ratio_num) +
                    "/" + s(max_ratio_den)};
}

Outcome full_composition() {
  std::vector<Term> ts;
  for (auto& t : sample_typed(11, 250, 20)) ts.push_back(t.term);
  for (auto& t : sample_untyped(11, 250, 20)) ts.push_back(t);
  std::size_t cases = 0;
  for (auto& t : ts) {
    Report r = check_full_composition(t);
    if (!r.ok) return fail(r.detail);
    cases += r.cases;
  }
  if (cases == 0) return fail("no exponential cuts");
  return {true, s(cases) + " exponential cuts in " + s(ts.size()) + " terms"};
}

Outcome subject_reduction() {
  std::size_t steps = 0;
  for (auto& t : sample_typed(13, 500, 25)) {
    Formula a = synth(t.ctx, t.term);
    for (auto& r : redexes(t.term, Mode::Micro)) {
      Term u = apply(t.term, r);
      std::string err;
      auto b = try_synth(t.ctx, u, &err);
      if (!b) return fail(redex_str(r) + " on " + print(t.term) + " breaks typing: " + err);
      if (*b != a) return fail(redex_str(r) + " on " + print(t.term) + " changes " + a.str() + " to " + b->str());
      ++steps;
    }
  }
  return {true, s(steps) + " micro steps from 500 terms"};
}

Outcome diamond_and_descent() {
  std::size_t peaks = 0, nodes = 0, nonlinear = 0;
  for (auto& t : sample_typed(17, 300, 20)) {
    ReductionGraph g = build_good_graph(t.term, {200000, 1000});
    if (g.truncated) return fail("good graph truncated for " + print(t.term));
    nodes += g.size();
    for (std::size_t u = 0; u < g.size(); ++u) {
      std::vector<std::size_t> succ;
      for (auto e : g.out[u]) succ.push_back(g.edges[e].to);
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
      if (succ.size() > 1) ++nonlinear;
      for (std::size_t i = 0; i < succ.size(); ++i)
        for (std::size_t j = i + 1; j < succ.size(); ++j) {
          ++peaks;
          std::set<std::size_t> a;
          for (auto e : g.out[succ[i]]) a.insert(g.edges[e].to);
          bool closes = false;
          for (auto e : g.out[succ[j]]) closes |= a.count(g.edges[e].to) > 0;
          if (!closes) return fail("peak at " + print(g.nodes[u]) + " does not close");
        }
    }
    PathLengths pl = own_lengths(g);
    if (!pl.acyclic) return fail("good graph has a cycle: " + print(t.term));
    if (pl.shortest != pl.longest)
      return fail("maximal good paths of lengths " + s(pl.shortest) + " and " + s(pl.longest) + " from " +
                  print(t.term));
  }
  if (peaks == 0) return fail("no peaks");
  return {true, s(peaks) + " peaks at " + s(nonlinear) + " branching nodes, " + s(nodes) + " graph nodes"};
}

Outcome fullness() {
  std::size_t n = 0, checked = 0;
  for (std::uint64_t seed = 19; n < 500; seed += 1000) {
    for (auto& t : sample_typed(seed, 200, 25)) {
      if (n == 500) break;
      if (is_normal(t.term, Mode::Micro)) continue;
      ++n;
      // Along a good normalization, every non-normal term has a good redex.
      Term cur = t.term;
      while (!is_normal(cur, Mode::Micro)) {
        ++checked;
        auto g = good_redexes(cur);
        if (g.empty()) return fail("no good redex in " + print(cur));
        cur = apply(cur, g.front());
      }
    }
  }
  return {true, s(n) + " non-normal terms, " + s(checked) + " non-normal terms checked along their reductions"};
}

Outcome check_trace(const Term& t, std::size_t& steps, std::size_t& maxdup) {
  Trace tr = normalize(t, Strategy::good(), {100000});
  if (tr.verdict != Verdict::Normal) return fail(std::string(verdict_name(tr.verdict)) + " on " + print(t));
  SubTermReport rep = subterm_report(tr);
  if (!rep.ok())
    return fail(print(t) + ": " + rep.violations.front().what + " of size " + s(rep.violations.front().size));
  // Duplicated and erased values, recomputed from the redexes.
  std::size_t n0 = size(t);
  Term cur = t;
  for (auto& st : tr.steps) {
    auto k = st.redex.kind;
    if (k == RuleKind::AxE1 || k == RuleKind::BangDer || k == RuleKind::Weak || k == RuleKind::ESmall) {
      std::size_t v = size(subterm_at(cur, st.redex.cut_path).value());
      maxdup = std::max(maxdup, v);
      if (v > n0) return fail(print(t) + ": value of size " + s(v) + " copied or erased");
    }
    cur = apply(cur, st.redex);
    ++steps;
  }
  return {};
}

Outcome subterm_property() {
  std::size_t steps = 0, maxdup = 0;
  for (auto& t : sample_typed(23, 300, 20)) {
    Outcome o = check_trace(t.term, steps, maxdup);
    if (!o.pass) return o;
  }
  for (std::size_t n = 1; n <= 8; ++n) {
    Outcome o = check_trace(gen_spindle(n).term, steps, maxdup);
    if (!o.pass) return o;
  }
  return {true, s(steps) + " good steps, largest copied value " + s(maxdup)};
}

Outcome spindle() {
  std::vector<double> xs, ys;
  std::string nf;
  for (std::size_t n = 1; n <= 8; ++n) {
    TypedTerm t = gen_spindle(n);
    auto a = try_synth(t.ctx, t.term);
    if (!a || *a != t.type) return fail("spindle " + s(n) + " is not typed as expected");
    xs.push_back(static_cast<double>(n));
    ys.push_back(static_cast<double>(size(t.term)));
    Trace tr = normalize(t.term, Strategy::good(), {1000000});
    if (tr.verdict != Verdict::Normal || !is_cut_free(tr.final)) return fail("spindle " + s(n) + " not normalized");
    std::size_t fs = size(tr.final);
    if (fs < (std::size_t{1} << n)) return fail("normal form of spindle " + s(n) + " has size " + s(fs));
    std::size_t dup = 0;
    for (auto& st : tr.steps)
      if (st.duplicated) dup = std::max(dup, st.duplicated->size);
    if (dup > size(t.term)) return fail("spindle " + s(n) + " duplicates a value of size " + s(dup));
    nf += (nf.empty() ? "" : ",") + s(fs);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
  double slope = sxy / sxx, icpt = my - slope * mx, worst = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::abs(ys[i] - (slope * xs[i] + icpt)));
  if (worst > 2.0) return fail("size deviates from the affine fit by " + std::to_string(worst));
  char buf[128];
  std::snprintf(buf, sizeof buf, "size ~ %.2f n %+.2f (max residual %.2f); normal form sizes ", slope, icpt, worst);
  return {true, buf + nf};
}

Outcome confluence() {
  std::size_t nodes = 0, branching = 0;
  for (auto& t : sample_typed(29, 300, 18)) {
    ReductionGraph g = build_graph(t.term, Mode::Micro, {200000, 1000});
    if (g.truncated) return fail("micro graph truncated for " + print(t.term));
    nodes += g.size();
    std::size_t k = sinks_of(g);
    if (k != 1) return fail(s(k) + " normal forms for " + print(t.term));
    for (std::size_t u = 0; u < g.size(); ++u) branching += g.out[u].size() > 1;
  }
  return {true, s(nodes) + " graph nodes, " + s(branching) + " branching"};
}

Outcome glitch() {
  Term t = glitch_term();
  std::vector<Term> red;
  for (auto& r : redexes(t, Mode::Micro))
    if (is_multiplicative(r.kind)) red.push_back(apply(t, r));
  if (red.size() != 2) return fail(s(red.size()) + " multiplicative reducts");
  if (alpha_eq(red[0], red[1])) return fail("reducts are alpha-equal");
  for (auto& u : red) {
    if (!is_normal(u, Mode::Micro)) return fail(print(u) + " is not micro-normal");
    if (find_clashes(u).empty()) return fail(print(u) + " has no clash");
  }
  if (!cut_equiv(red[0], red[1])) return fail("reducts are not cut-equivalent");
  return {true, print(red[0]) + "  ~cut  " + print(red[1])};
}

Outcome bisimulation() {
  std::vector<std::pair<Term, Term>> pairs;
  auto add = [&](const Term& t) {
    for (auto& m : cut_moves(t))
      if (pairs.size() < 300) pairs.emplace_back(t, m);
  };
  for (std::uint64_t seed = 31; pairs.size() < 300; seed += 1000) {
    for (auto& t : sample_typed(seed, 50, 18)) add(t.term);
    for (auto& t : sample_untyped(seed, 50, 14)) add(t);
  }
  std::size_t steps = 0;
  for (auto& [a, b] : pairs) {
    for (int dir = 0; dir < 2; ++dir) {
      const Term& x = dir ? b : a;
      const Term& y = dir ? a : b;
      auto ry = redexes(y, Mode::Micro);
      for (auto& r : redexes(x, Mode::Micro)) {
        ++steps;
        Term u = apply(x, r);
        bool matched = false;
        for (auto& q : ry)
          if (q.kind == r.kind && cut_equiv(u, apply(y, q))) {
            matched = true;
            break;
          }
        if (!matched) return fail(redex_str(r) + " on " + print(x) + " unmatched by " + print(y));
      }
    }
  }
  return {true, s(pairs.size()) + " pairs, " + s(steps) + " steps matched"};
}

Outcome gc_postponement() {
  std::vector<Term> ts;
  for (auto& t : sample_typed(37, 150, 20)) ts.push_back(t.term);
  for (auto& t : sample_untyped(37, 150, 16)) ts.push_back(t);
  std::size_t pairs = 0, visited = 0;
  for (auto& t : ts) {
    // Every term reachable from t, not only t itself.
    ReductionGraph g = build_graph(t, Mode::Micro, {2000, 100});
    for (auto& u : g.nodes) {
      ++visited;
      PostponementReport r = check_gc_local_postponement(u);
      if (!r.ok) return fail(r.failure);
      pairs += r.pairs_checked;
    }
  }
  if (pairs == 0) return fail("no (w; non-w) pairs");
  return {true, s(pairs) + " (w; non-w) pairs in " + s(visited) + " terms reachable from " + s(ts.size())};
}

Outcome psn() {
  std::size_t kept = 0, skipped = 0, nodes = 0;
  for (std::uint64_t seed = 41; kept < 500; seed += 1000) {
    for (auto& t : sample_untyped(seed, 200, 14)) {
      if (kept == 500) break;
      ReductionGraph sg = build_graph(t, Mode::Small, {20000, 500});
      if (sg.truncated || !own_lengths(sg).acyclic) {
        ++skipped;
        continue;
      }
      ++kept;
      ReductionGraph mg = build_graph(t, Mode::Micro, {500000, 5000});
      if (mg.truncated) return fail("micro graph truncated for " + print(t));
      if (!own_lengths(mg).acyclic) return fail("micro cycle from " + print(t));
      nodes += mg.size();
    }
  }
  return {true, s(kept) + " terms (" + s(skipped) + " without finite acyclic small graph skipped), " + s(nodes) +
                    " micro graph nodes"};
}

Outcome typed_sn() {
  std::size_t nodes = 0, longest = 0;
  for (auto& t : sample_typed(43, 300, 18)) {
    ReductionGraph g = build_graph(t.term, Mode::Micro, {200000, 1000});
    if (g.truncated) return fail("micro graph truncated for " + print(t.term));
    PathLengths pl = own_lengths(g);
    if (!pl.acyclic) return fail("micro cycle from " + print(t.term));
    nodes += g.size();
    longest = std::max(longest, pl.longest);
  }
  return {true, "300 terms, " + s(nodes) + " graph nodes, longest path " + s(longest)};
}

Outcome classifier() {
  std::size_t good = 0;
  std::string bad;
  auto one = [&](const Context& c) {
    bool g = grammar_good(c.root), b = grammar_bad(c.root);
    if (g == b) {
      bad = print_context(c) + (g ? " is both good and bad" : " is neither good nor bad");
      return false;
    }
    if ((classify(c) == Goodness::Good) != g) {
      bad = print_context(c) + " classified " + (g ? "bad" : "good");
      return false;
    }
    good += g;
    return true;
  };
  bool ok = true;
  std::size_t n = for_each_context(9, [&](const Context& c) {
    if (ok) ok = one(c);
  });
  if (!ok) return fail(bad);
  std::size_t large = 0;
  for (std::uint64_t seed = 0; large < 10000; ++seed) {
    Context c = gen_context(seed, 10 + seed % 30);
    if (size(c.root) < 10) continue;
    ++large;
    if (!one(c)) return fail(bad);
  }
  return {true, s(n) + " exhaustive + " + s(large) + " random contexts, " + s(good) + " good"};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "looping term cycles in five micro steps", 1, omega_cycle},
    {2, "lolli step example", 1, lolli_example},
    {3, "meta-substitution example", 1, meta_substitution},
    {4, "measure decreases on non-lolli steps", 60, measure_decrease},
    {5, "local termination within the measure", 120, local_termination},
    {6, "full composition", 60, full_composition},
    {7, "subject reduction", 60, subject_reduction},
    {8, "good diamond and random descent", 120, diamond_and_descent},
    {9, "fullness", 60, fullness},
    {10, "sub-term property", 120, subterm_property},
    {11, "spindle sizes", 120, spindle},
    {12, "confluence", 180, confluence},
    {13, "glitch term", 1, glitch},
    {14, "cut equivalence is a strong bisimulation", 120, bisimulation},
    {15, "garbage collection postponement", 60, gc_postponement},
    {16, "preservation of strong normalization", 180, psn},
    {17, "typed terms are strongly normalizing", 180, typed_sn},
    {18, "classifier matches the context grammar", 60, classifier},
};

} // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0, run = 0;
  for (auto& c : kCriteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    ++run;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > c.limit_s) o = fail("took longer than " + std::to_string(static_cast<int>(c.limit_s)) + " s; " + o.detail);
    failed += !o.pass;
    std::printf("%s [%2d] %-44s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", run - failed, run);
  return failed ? 1 : 0;
}
