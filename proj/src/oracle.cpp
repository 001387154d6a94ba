#include "esc/oracle.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "esc/measures.hpp"
#include "esc/strategy.hpp"

namespace esc {

// ---------------------------------------------------------------------------
// Graphs

std::vector<std::size_t> ReductionGraph::sinks() const {
  std::vector<std::size_t> out_;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (expanded[i] && out[i].empty()) out_.push_back(i);
  return out_;
}

ReductionGraph build_graph_with(const Term& t, const StepFn& steps, Bounds bounds) {
  ReductionGraph g;
  g.bounds = bounds;
  std::unordered_map<std::string, std::size_t> index;
  auto add = [&](const Term& n, std::size_t d) {
    g.nodes.push_back(n);
    g.depth.push_back(d);
    g.expanded.push_back(false);
    g.out.emplace_back();
    return g.nodes.size() - 1;
  };
  index.emplace(canonical_key(t), add(t, 0));
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    Term cur = g.nodes[i];
    auto rs = steps(cur);
    if (rs.empty()) {
      g.expanded[i] = true;
      continue;
    }
    if (g.depth[i] >= bounds.max_depth) {
      g.truncated = true;
      continue;
    }
    std::vector<std::pair<Redex, std::pair<Term, std::string>>> succ;
    std::size_t fresh = 0;
    std::unordered_set<std::string> new_keys;
    for (auto& r : rs) {
      Term n = apply(cur, r);
      std::string k = canonical_key(n);
      if (!index.count(k) && new_keys.insert(k).second) ++fresh;
      succ.push_back({r, {n, std::move(k)}});
    }
    if (g.nodes.size() + fresh > bounds.max_nodes) {
      g.truncated = true;
      continue;
    }
    g.expanded[i] = true;
    for (auto& [r, nk] : succ) {
      auto it = index.find(nk.second);
      std::size_t to;
      if (it == index.end()) {
        to = add(nk.first, g.depth[i] + 1);
        index.emplace(nk.second, to);
      } else {
        to = it->second;
      }
      g.out[i].push_back(g.edges.size());
      g.edges.push_back({i, r, to});
    }
  }
  return g;
}

ReductionGraph build_graph(const Term& t, Mode mode, Bounds bounds) {
  return build_graph_with(t, [mode](const Term& u) { return redexes(u, mode); }, bounds);
}

ReductionGraph build_good_graph(const Term& t, Bounds bounds) {
  return build_graph_with(t, [](const Term& u) { return good_redexes(u); }, bounds);
}

const char* sn_kind_name(SnResult::Kind k) {
  switch (k) {
  case SnResult::Kind::SN: return "SN";
  case SnResult::Kind::Cycle: return "cycle";
  case SnResult::Kind::Truncated: return "truncated";
  }
  return "?";
}

namespace {

// Successor node lists.
std::vector<std::vector<std::size_t>> adjacency(const ReductionGraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.size());
  for (auto& e : g.edges) adj[e.from].push_back(e.to);
  return adj;
}

// Returns a cycle as a node list, or empty.
std::vector<std::size_t> find_cycle(const ReductionGraph& g, std::vector<std::size_t>* topo) {
  auto adj = adjacency(g);
  std::vector<int> color(g.size(), 0);
  std::vector<std::size_t> stack, it_pos, order;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (color[s]) continue;
    stack.push_back(s);
    it_pos.push_back(0);
    color[s] = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      if (it_pos.back() < adj[v].size()) {
        std::size_t w = adj[v][it_pos.back()++];
        if (color[w] == 1) {
          auto b = std::find(stack.begin(), stack.end(), w);
          return std::vector<std::size_t>(b, stack.end());
        }
        if (color[w] == 0) {
          color[w] = 1;
          stack.push_back(w);
          it_pos.push_back(0);
        }
      } else {
        color[v] = 2;
        order.push_back(v);
        stack.pop_back();
        it_pos.pop_back();
      }
    }
  }
  if (topo) *topo = std::move(order);  // reverse topological: successors first
  return {};
}

} // namespace

SnResult analyse_graph(const ReductionGraph& g) {
  SnResult r;
  std::vector<std::size_t> order;
  auto cyc = find_cycle(g, &order);
  if (!cyc.empty()) {
    r.kind = SnResult::Kind::Cycle;
    for (auto v : cyc) r.cycle.push_back(g.nodes[v]);
    return r;
  }
  if (g.truncated) {
    r.kind = SnResult::Kind::Truncated;
    return r;
  }
  auto adj = adjacency(g);
  std::vector<std::size_t> lo(g.size(), 0), hi(g.size(), 0);
  for (auto v : order) {
    if (adj[v].empty()) continue;
    lo[v] = SIZE_MAX;
    for (auto w : adj[v]) {
      lo[v] = std::min(lo[v], lo[w] + 1);
      hi[v] = std::max(hi[v], hi[w] + 1);
    }
  }
  r.longest = hi[0];
  r.shortest = lo[0];
  return r;
}

SnResult check_sn(const Term& t, Mode mode, Bounds bounds) { return analyse_graph(build_graph(t, mode, bounds)); }

// ---------------------------------------------------------------------------
// Checks

namespace {

Report report(const char* name) {
  Report r;
  r.check = name;
  return r;
}

void fail(Report& r, const std::string& why) {
  if (!r.ok) return;  // keep the first failure
  r.ok = false;
  r.detail = why;
}

std::unordered_set<std::string> class_keys(const Term& t) {
  std::unordered_set<std::string> out;
  for (auto& m : cut_class(t)) out.insert(canonical_key(m));
  return out;
}

} // namespace

Report check_confluence(const Term& t, Mode mode, Bounds bounds) {
  Report rep = report("confluence");
  ReductionGraph g = build_graph(t, mode, bounds);
  if (g.truncated) {
    rep.inconclusive = true;
    rep.detail = "graph truncated at " + std::to_string(g.size()) + " nodes";
    return rep;
  }
  rep.cases = g.size();
  std::vector<std::size_t> order;
  bool cyclic = !find_cycle(g, &order).empty();
  if (!cyclic) {
    auto s = g.sinks();
    if (s.size() > 1)
      fail(rep, std::to_string(s.size()) + " distinct normal forms, e.g. " + print(g.nodes[s[0]]) + " and " +
                    print(g.nodes[s[1]]));
    return rep;
  }
  // Local peaks must be joinable inside the (finite) graph.
  auto adj = adjacency(g);
  std::vector<std::vector<bool>> reach(g.size());
  auto reach_of = [&](std::size_t v) -> const std::vector<bool>& {
    if (!reach[v].empty()) return reach[v];
    std::vector<bool> seen(g.size(), false);
    std::deque<std::size_t> q{v};
    seen[v] = true;
    while (!q.empty()) {
      auto x = q.front();
      q.pop_front();
      for (auto y : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          q.push_back(y);
        }
    }
    return reach[v] = std::move(seen);
  };
  for (std::size_t v = 0; v < g.size() && rep.ok; ++v)
    for (std::size_t i = 0; i < adj[v].size(); ++i)
      for (std::size_t j = i + 1; j < adj[v].size(); ++j) {
        const auto& a = reach_of(adj[v][i]);
        const auto& b = reach_of(adj[v][j]);
        bool joined = false;
        for (std::size_t k = 0; k < g.size() && !joined; ++k) joined = a[k] && b[k];
        if (!joined) fail(rep, "peak at " + print(g.nodes[v]) + " does not join");
      }
  return rep;
}

Report check_psn(const Term& t, Bounds bounds) {
  Report rep = report("psn");
  SnResult small = check_sn(t, Mode::Small, bounds);
  if (small.kind == SnResult::Kind::Truncated) {
    rep.inconclusive = true;
    rep.detail = "small-step graph truncated";
    return rep;
  }
  if (small.kind == SnResult::Kind::Cycle) {
    rep.detail = "vacuous: small-step reduction diverges";
    return rep;
  }
  rep.cases = 1;
  SnResult micro = check_sn(t, Mode::Micro, bounds);
  if (micro.kind == SnResult::Kind::Cycle) fail(rep, "micro-step cycle through " + print(micro.cycle.front()));
  if (micro.kind == SnResult::Kind::Truncated) {
    rep.inconclusive = true;
    rep.detail = "micro-step graph truncated";
  }
  return rep;
}

Report check_full_composition(const Term& t) {
  Report rep = report("full-composition");
  for (auto& r : redexes(t, Mode::Small)) {
    if (r.kind != RuleKind::ESmall) continue;
    ++rep.cases;
    Term target = apply(t, r);
    Term cur = t;
    bool erased = false;
    for (int n = 0; n < 100000 && !erased; ++n) {
      std::optional<Redex> next;
      for (auto& m : redexes(cur, Mode::ExpMicroOnly))
        if (m.cut_path == r.cut_path) {
          next = m;
          break;
        }
      if (!next) break;
      erased = next->kind == RuleKind::Weak;
      cur = apply(cur, *next);
    }
    if (!erased) {
      fail(rep, "micro steps on the cut at [" + path_str(r.cut_path) + "] do not erase it");
    } else if (!alpha_eq(cur, target)) {
      fail(rep, "cut at [" + path_str(r.cut_path) + "]: micro " + print(cur) + " vs small " + print(target));
    }
  }
  return rep;
}

Report check_subject_reduction(const TypingContext& ctx, const Term& t) {
  Report rep = report("subject-reduction");
  std::string err;
  auto a = try_synth(ctx, t, &err);
  if (!a) {
    fail(rep, "initial term untypable: " + err);
    return rep;
  }
  std::vector<Redex> rs = redexes(t, Mode::Micro);
  for (auto& r : redexes(t, Mode::Small))
    if (r.kind == RuleKind::ESmall) rs.push_back(r);
  for (auto& r : rs) {
    ++rep.cases;
    Term s = apply(t, r);
    auto b = try_synth(ctx, s, &err);
    if (!b) fail(rep, redex_str(r) + " gives an untypable term: " + err);
    else if (*b != *a) fail(rep, redex_str(r) + " changes " + a->str() + " into " + b->str());
  }
  return rep;
}

Report check_cuteq_bisim(const Term& t, const Term& s) {
  Report rep = report("cuteq-bisim");
  auto side = [&](const Term& a, const Term& b, const char* dir) {
    std::vector<std::pair<RuleKind, std::unordered_set<std::string>>> targets;
    for (auto& r : redexes(b, Mode::Micro)) targets.push_back({r.kind, class_keys(apply(b, r))});
    for (auto& r : redexes(a, Mode::Micro)) {
      ++rep.cases;
      std::string k = canonical_key(apply(a, r));
      bool matched = false;
      for (auto& [kind, keys] : targets) matched |= kind == r.kind && keys.count(k);
      if (!matched) fail(rep, std::string(dir) + ": " + redex_str(r) + " on " + print(a) + " is unmatched");
    }
  };
  side(t, s, "left");
  side(s, t, "right");
  return rep;
}

Report check_cuteq_bisim(const Term& t) {
  Report rep = report("cuteq-bisim");
  for (auto& s : cut_moves(t)) {
    Report r = check_cuteq_bisim(t, s);
    rep.cases += r.cases;
    if (!r.ok) fail(rep, r.detail);
  }
  return rep;
}

Report check_diamond(const Term& t) {
  Report rep = report("good-diamond");
  auto rs = good_redexes(t);
  std::vector<Term> red;
  std::vector<std::unordered_set<std::string>> succ;
  for (auto& r : rs) {
    red.push_back(apply(t, r));
    std::unordered_set<std::string> ks;
    for (auto& q : good_redexes(red.back())) ks.insert(canonical_key(apply(red.back(), q)));
    succ.push_back(std::move(ks));
  }
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i + 1; j < rs.size(); ++j) {
      if (alpha_eq(red[i], red[j])) continue;
      ++rep.cases;
      bool joined = false;
      for (auto& k : succ[i]) joined |= succ[j].count(k) > 0;
      if (!joined) fail(rep, "peak " + redex_str(rs[i]) + " / " + redex_str(rs[j]) + " on " + print(t) + " does not close");
    }
  return rep;
}

Report check_random_descent(const Term& t, Bounds bounds) {
  Report rep = report("random-descent");
  ReductionGraph g = build_good_graph(t, bounds);
  SnResult sn = analyse_graph(g);
  rep.cases = g.size();
  if (sn.kind == SnResult::Kind::Truncated) {
    rep.inconclusive = true;
    rep.detail = "good graph truncated";
  } else if (sn.kind == SnResult::Kind::Cycle) {
    if (!g.sinks().empty()) fail(rep, "both diverging and terminating good paths");
    else rep.detail = "vacuous: every good path diverges";
  } else if (sn.longest != sn.shortest) {
    fail(rep, "maximal good paths of lengths " + std::to_string(sn.shortest) + " and " + std::to_string(sn.longest));
  }
  return rep;
}

Report check_fullness(const Term& t) {
  Report rep = report("fullness");
  if (!find_clashes(t).empty() || is_normal(t, Mode::Micro)) return rep;
  rep.cases = 1;
  if (good_redexes(t).empty()) fail(rep, "no good redex in " + print(t));
  return rep;
}

Report check_measure_decrease(const Term& t) {
  Report rep = report("measure-decrease");
  try {
    Measure m = measure(t);
    for (auto& r : redexes(t, Mode::NonLolliMicro)) {
      ++rep.cases;
      Measure n = measure(apply(t, r));
      if (n >= m)
        fail(rep, redex_str(r) + " on " + print(t) + ": " + std::to_string(m) + " -> " + std::to_string(n));
    }
  } catch (const MeasureOverflow&) {
    rep.inconclusive = true;
    rep.detail = "measure overflow";
  }
  return rep;
}

Report check_local_termination(const Term& t, Bounds bounds) {
  Report rep = report("local-termination");
  SnResult sn = check_sn(t, Mode::NonLolliMicro, bounds);
  rep.cases = 1;
  if (sn.kind == SnResult::Kind::Cycle) {
    fail(rep, "non-lolli cycle through " + print(sn.cycle.front()));
  } else if (sn.kind == SnResult::Kind::Truncated) {
    rep.inconclusive = true;
    rep.detail = "graph truncated";
  } else {
    try {
      Measure m = measure(t);
      if (sn.longest > m)
        fail(rep, "longest path " + std::to_string(sn.longest) + " exceeds measure " + std::to_string(m));
    } catch (const MeasureOverflow&) {
    }
  }
  return rep;
}

} // namespace esc
