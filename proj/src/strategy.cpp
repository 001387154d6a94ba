#include "esc/strategy.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "esc/context.hpp"

namespace esc {

std::vector<Redex> good_redexes(const Term& t) {
  std::vector<Redex> out;
  for (auto& r : redexes(t, Mode::Micro))
    if (classify_at(t, r.position()) == Goodness::Good) out.push_back(r);
  return out;
}

namespace {

std::uint64_t mix(std::uint64_t seed, const Term& t) {
  return seed ^ (std::hash<std::string>{}(canonical_key(t)) * 0x9E3779B97F4A7C15ull);
}

template <class Rng>
const Redex& pick(const std::vector<Redex>& rs, Rng& rng) {
  std::uniform_int_distribution<std::size_t> d(0, rs.size() - 1);
  return rs[d(rng)];
}

} // namespace

std::optional<std::pair<Redex, Term>> good_step(const Term& t, GoodPolicy policy) {
  auto rs = good_redexes(t);
  if (rs.empty()) return std::nullopt;
  Redex r = rs.front();
  if (policy.kind == GoodPolicy::Kind::Random) {
    std::mt19937_64 rng(mix(policy.seed, t));
    r = pick(rs, rng);
  }
  return std::make_pair(r, apply(t, r));
}

const char* strategy_name(Strategy::Kind k) {
  switch (k) {
  case Strategy::Kind::Good: return "good";
  case Strategy::Kind::LeftmostAny: return "leftmost";
  case Strategy::Kind::RandomAny: return "random";
  case Strategy::Kind::SmallStep: return "small";
  }
  return "?";
}

std::optional<Strategy::Kind> strategy_from_name(std::string_view name) {
  for (auto k : {Strategy::Kind::Good, Strategy::Kind::LeftmostAny, Strategy::Kind::RandomAny,
                 Strategy::Kind::SmallStep})
    if (name == strategy_name(k)) return k;
  return std::nullopt;
}

const char* verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Normal: return "normal";
  case Verdict::StepLimit: return "step-limit";
  case Verdict::ClashStuck: return "clash-stuck";
  }
  return "?";
}

namespace {

StepRecord record(const Term& before, const Redex& r, const Term& after, std::size_t index) {
  StepRecord s;
  s.index = index;
  s.redex = r;
  const Term& v = subterm_at(before, r.cut_path).value();
  switch (r.kind) {
  case RuleKind::AxE1:
  case RuleKind::BangDer: s.duplicated = ValueCopy{size(v), 1}; break;
  case RuleKind::ESmall: {
    std::size_t n = occ_count(subterm_at(before, r.cut_path).body(), subterm_at(before, r.cut_path).binder());
    if (n > 0) s.duplicated = ValueCopy{size(v), n};
    else s.erased = size(v);
    break;
  }
  case RuleKind::Weak: s.erased = size(v); break;
  default: break;
  }
  s.size_after = size(after);
  try {
    s.measure_after = measure(after);
  } catch (const MeasureOverflow&) {
  }
  return s;
}

} // namespace

Trace normalize(const Term& t, Strategy strategy, Limits limits) {
  Trace tr;
  tr.initial = t;
  tr.strategy = strategy;
  Term cur = t;
  std::mt19937_64 rng(strategy.seed);
  for (;;) {
    std::vector<Redex> rs;
    switch (strategy.kind) {
    case Strategy::Kind::Good: rs = good_redexes(cur); break;
    case Strategy::Kind::LeftmostAny:
    case Strategy::Kind::RandomAny: rs = redexes(cur, Mode::Micro); break;
    case Strategy::Kind::SmallStep: rs = redexes(cur, Mode::Small); break;
    }
    if (rs.empty()) {
      tr.verdict = is_cut_free(cur) ? Verdict::Normal : Verdict::ClashStuck;
      break;
    }
    if (tr.steps.size() >= limits.max_steps) {
      tr.verdict = Verdict::StepLimit;
      break;
    }
    Redex r = rs.front();
    if (strategy.kind == Strategy::Kind::RandomAny) {
      std::size_t deepest = 0;
      for (auto& x : rs) deepest = std::max(deepest, x.cut_path.size());
      std::vector<Redex> deep;
      for (auto& x : rs)
        if (x.cut_path.size() == deepest) deep.push_back(x);
      r = pick(deep, rng);
    }
    Term next = apply(cur, r);
    tr.steps.push_back(record(cur, r, next, tr.steps.size()));
    cur = next;
  }
  tr.final = cur;
  return tr;
}

Term replay(const Trace& trace) {
  Term cur = trace.initial;
  for (auto& s : trace.steps) cur = apply(cur, s.redex);
  return cur;
}

std::vector<std::pair<Path, std::size_t>> bad_values(const Term& t) {
  std::vector<std::pair<Path, std::size_t>> out;
  for_each_position(t, [&](const Path& p, const Term& sub, Goodness g) {
    if (g == Goodness::Bad && sub.is_value()) out.emplace_back(p, size(sub));
  });
  return out;
}

SubTermReport subterm_report(const Trace& trace) {
  SubTermReport rep;
  rep.initial_size = size(trace.initial);
  auto check_bad = [&](const Term& t, std::size_t step) {
    for (auto& [p, n] : bad_values(t)) {
      rep.max_bad_value_size = std::max(rep.max_bad_value_size, n);
      if (n > rep.initial_size) rep.violations.push_back({step, "bad value at [" + path_str(p) + "]", n});
    }
  };
  Term cur = trace.initial;
  check_bad(cur, 0);
  for (auto& s : trace.steps) {
    ++rep.work;
    if (s.duplicated) {
      rep.max_duplicated_size = std::max(rep.max_duplicated_size, s.duplicated->size);
      rep.work += s.duplicated->size * s.duplicated->copies;
      if (s.duplicated->size > rep.initial_size)
        rep.violations.push_back({s.index + 1, std::string("duplicated value (") + rule_name(s.redex.kind) + ")",
                                  s.duplicated->size});
    }
    if (s.erased) {
      rep.max_erased_size = std::max(rep.max_erased_size, *s.erased);
      if (*s.erased > rep.initial_size)
        rep.violations.push_back({s.index + 1, "erased value", *s.erased});
    }
    cur = apply(cur, s.redex);
    check_bad(cur, s.index + 1);
  }
  return rep;
}

} // namespace esc
