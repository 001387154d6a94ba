#include "esc/rewriting.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "esc/substitution.hpp"

namespace esc {

namespace {

constexpr const char* kRuleNames[] = {"AxM1", "AxM2", "Tens", "Lolli", "AxE1", "AxE2", "BangDer", "Weak", "ESmall"};

} // namespace

const char* rule_name(RuleKind k) { return kRuleNames[static_cast<int>(k)]; }

std::optional<RuleKind> rule_from_name(std::string_view name) {
  for (int i = 0; i < 9; ++i)
    if (name == kRuleNames[i]) return static_cast<RuleKind>(i);
  return std::nullopt;
}

bool is_multiplicative(RuleKind k) {
  return k == RuleKind::AxM1 || k == RuleKind::AxM2 || k == RuleKind::Tens || k == RuleKind::Lolli;
}

bool is_exp_micro(RuleKind k) {
  return k == RuleKind::AxE1 || k == RuleKind::AxE2 || k == RuleKind::BangDer || k == RuleKind::Weak;
}

const char* mode_name(Mode m) {
  switch (m) {
  case Mode::Micro: return "micro";
  case Mode::Small: return "small";
  case Mode::NonLolliMicro: return "non-lolli-micro";
  case Mode::MulOnly: return "multiplicative";
  case Mode::ExpMicroOnly: return "exp-micro";
  }
  return "?";
}

bool in_mode(RuleKind k, Mode m) {
  switch (m) {
  case Mode::Micro: return k != RuleKind::ESmall;
  case Mode::Small: return is_multiplicative(k) || k == RuleKind::ESmall;
  case Mode::NonLolliMicro: return k != RuleKind::ESmall && k != RuleKind::Lolli;
  case Mode::MulOnly: return is_multiplicative(k);
  case Mode::ExpMicroOnly: return is_exp_micro(k);
  }
  return false;
}

Path Redex::occurrence() const {
  Path p = cut_path;
  if (occ_path) {
    p.push_back(1);
    p.insert(p.end(), occ_path->begin(), occ_path->end());
  }
  return p;
}

Path Redex::position() const { return occurrence(); }

bool operator<(const Redex& a, const Redex& b) {
  if (a.cut_path != b.cut_path) return a.cut_path < b.cut_path;
  if (a.occ_path.has_value() != b.occ_path.has_value()) return !a.occ_path.has_value();
  if (a.occ_path && *a.occ_path != *b.occ_path) return *a.occ_path < *b.occ_path;
  return a.kind < b.kind;
}

std::string redex_str(const Redex& r) {
  std::string s = std::string(rule_name(r.kind)) + "@[" + path_str(r.cut_path) + "]";
  if (r.occ_path) s += "/[" + path_str(*r.occ_path) + "]";
  return s;
}

// ---------------------------------------------------------------------------
// Matching

namespace {

bool has_occ(const Term& t) {
  auto g = t.tag();
  return g == Term::Tag::Var || g == Term::Tag::Par || g == Term::Tag::Sub || g == Term::Tag::Der;
}

struct Occurrence {
  Path path;       // relative to the cut body
  bool under_bang;
};

void find_occurrences(const Term& t, const Var& x, Path& p, bool bang, std::vector<Occurrence>& out) {
  if (has_occ(t) && t.occ() == x) out.push_back({p, bang});
  for (int i = 0; i < t.arity(); ++i) {
    auto bs = binders_in_child(t, i);
    if (std::find(bs.begin(), bs.end(), x) != bs.end()) continue;
    p.push_back(i);
    find_occurrences(t.child(i), x, p, bang || t.tag() == Term::Tag::Bang, out);
    p.pop_back();
  }
}

// Rule for the cut `c` interacting with occurrence node `o`, if any.
std::optional<RuleKind> match(const Term& c, const Term& o, bool under_bang) {
  const Term& v = c.value();
  const Var& x = c.binder();
  if (x.is_mul()) {
    if (under_bang) return std::nullopt;
    switch (o.tag()) {
    case Term::Tag::Var:
      if (v.is_mul_value()) return RuleKind::AxM1;
      return std::nullopt;
    case Term::Tag::Par:
      if (v.tag() == Term::Tag::Pair) return RuleKind::Tens;
      if (v.tag() == Term::Tag::Var && v.occ().is_mul()) return RuleKind::AxM2;
      return std::nullopt;
    case Term::Tag::Sub:
      if (v.tag() == Term::Tag::Lam) return RuleKind::Lolli;
      if (v.tag() == Term::Tag::Var && v.occ().is_mul()) return RuleKind::AxM2;
      return std::nullopt;
    default: return std::nullopt;
    }
  }
  if (!v.is_exp_value()) return std::nullopt;
  switch (o.tag()) {
  case Term::Tag::Var: return RuleKind::AxE1;
  case Term::Tag::Der: return v.tag() == Term::Tag::Var ? RuleKind::AxE2 : RuleKind::BangDer;
  default: return std::nullopt;
  }
}

void collect(const Term& t, Path& p, Mode mode, std::vector<Redex>& out) {
  if (t.tag() == Term::Tag::Cut) {
    const Var& x = t.binder();
    std::vector<Occurrence> occs;
    Path q;
    find_occurrences(t.body(), x, q, false, occs);
    bool exp_cut = x.is_exp() && t.value().is_exp_value();
    if (exp_cut && occs.empty() && in_mode(RuleKind::Weak, mode)) out.push_back({RuleKind::Weak, p, std::nullopt});
    if (exp_cut && in_mode(RuleKind::ESmall, mode)) out.push_back({RuleKind::ESmall, p, std::nullopt});
    for (auto& o : occs) {
      auto k = match(t, subterm_at(t.body(), o.path), o.under_bang);
      if (k && in_mode(*k, mode)) out.push_back({*k, p, o.path});
    }
  }
  for (int i = 0; i < t.arity(); ++i) {
    p.push_back(i);
    collect(t.child(i), p, mode, out);
    p.pop_back();
  }
}

} // namespace

std::vector<Redex> redexes(const Term& t, Mode mode) {
  std::vector<Redex> out;
  Path p;
  collect(t, p, mode, out);
  std::stable_sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Contraction

namespace {

[[noreturn]] void stale(const Redex& r, const std::string& why) {
  throw StaleRedex("stale redex " + redex_str(r) + ": " + why);
}

const Term& cut_of(const Term& t, const Redex& r) {
  if (!is_valid_path(t, r.cut_path)) stale(r, "no such position");
  const Term& c = subterm_at(t, r.cut_path);
  if (c.tag() != Term::Tag::Cut) stale(r, "not a cut");
  return c;
}

// Checks that the occurrence is a free occurrence of the cut variable with the
// expected rule.
void check_occurrence(const Term& c, const Redex& r) {
  const Var& x = c.binder();
  if (!r.occ_path) {
    if (!x.is_exp() || !c.value().is_exp_value()) stale(r, "not an exponential cut");
    if (r.kind == RuleKind::Weak && is_free_in(x, c.body())) stale(r, "variable occurs in the body");
    return;
  }
  const Term* cur = &c.body();
  bool bang = false;
  for (int i : *r.occ_path) {
    if (i < 0 || i >= cur->arity()) stale(r, "no such occurrence");
    auto bs = binders_in_child(*cur, i);
    if (std::find(bs.begin(), bs.end(), x) != bs.end()) stale(r, "occurrence is rebound");
    bang = bang || cur->tag() == Term::Tag::Bang;
    cur = &cur->child(i);
  }
  if (!has_occ(*cur) || cur->occ() != x) stale(r, "not an occurrence of " + x.name);
  auto k = match(c, *cur, bang);
  if (!k || *k != r.kind) stale(r, "rule does not match");
}

// Renames the cut binder when it also occurs free in the value, so that
// copies of the value cannot be captured by it.
Term unclash_binder(const Term& c, NameSupply& ns) {
  if (!is_free_in(c.binder(), c.value())) return c;
  Var z = ns.fresh(c.binder());
  Term body = rename_free(c.body(), c.binder(), z, ns);
  return c.with_child(1, body).with_binders(z, Var{});
}

Term contract(const Term& c0, const Redex& r, NameSupply& ns) {
  Term c = c0;
  const Term v = c.value();
  VarSet fvv = fv(v);
  const Path& op = r.occ_path ? *r.occ_path : Path{};
  switch (r.kind) {
  case RuleKind::AxM1:
    return replace_avoiding(c.body(), op, fvv, ns, [&](const Term&) { return freshen(v, ns); });
  case RuleKind::AxM2: return rename_free(c.body(), c.binder(), v.occ(), ns);
  case RuleKind::Tens:
    return replace_avoiding(c.body(), op, fvv, ns, [&](const Term& par) {
      Var y = par.binder(), z = par.binder2();
      Term body = par.body();
      if (fvv.count(y)) {
        Var y2 = ns.fresh(y);
        body = rename_free(body, y, y2, ns);
        y = y2;
      }
      if (fvv.count(z)) {
        Var z2 = ns.fresh(z);
        body = rename_free(body, z, z2, ns);
        z = z2;
      }
      Split s = split(freshen(v.left(), ns));
      Split u = split(freshen(v.right(), ns));
      return replug(s.spine, Term::cut(s.head, y, replug(u.spine, Term::cut(u.head, z, body))));
    });
  case RuleKind::Lolli:
    return replace_avoiding(c.body(), op, fvv, ns, [&](const Term& sub) {
      Term lam = freshen(v, ns);
      Split s = split(lam.body());
      return Term::cut(sub.value(), lam.binder(),
                       replug(s.spine, Term::cut(s.head, sub.binder(), sub.body())));
    });
  case RuleKind::AxE1: {
    c = unclash_binder(c, ns);
    Term nb = replace_avoiding(c.body(), op, fvv, ns, [&](const Term&) { return freshen(v, ns); });
    return c.with_child(1, nb);
  }
  case RuleKind::AxE2: {
    c = unclash_binder(c, ns);
    Term nb = replace_avoiding(c.body(), op, fvv, ns, [&](const Term& d) { return d.with_occ(v.occ()); });
    return c.with_child(1, nb);
  }
  case RuleKind::BangDer: {
    c = unclash_binder(c, ns);
    Term nb = replace_avoiding(c.body(), op, fvv, ns, [&](const Term& d) {
      Split s = split(freshen(v.body(), ns));
      return replug(s.spine, Term::cut(s.head, d.binder(), d.body()));
    });
    return c.with_child(1, nb);
  }
  case RuleKind::Weak: return c.body();
  case RuleKind::ESmall: return subst_exp(c.body(), c.binder(), v, ns);
  }
  return c;
}

Term rewrite(const Term& t, const Redex& r) {
  const Term& c = cut_of(t, r);
  check_occurrence(c, r);
  NameSupply ns(t);
  Term out = contract(c, r, ns);
  return replace_at(t, r.cut_path, out);
}

} // namespace

Term apply(const Term& t, const Redex& r) {
  if (r.kind == RuleKind::ESmall) return step_ess(t, r);
  return rewrite(t, r);
}

Term step_ess(const Term& t, const Redex& r) {
  if (r.kind != RuleKind::ESmall) stale(r, "not a small-step exponential redex");
  return rewrite(t, r);
}

bool is_normal(const Term& t, Mode mode) { return redexes(t, mode).empty(); }

bool is_cut_free(const Term& t) {
  if (t.tag() == Term::Tag::Cut) return false;
  for (int i = 0; i < t.arity(); ++i)
    if (!is_cut_free(t.child(i))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Cut equivalence

namespace {

// Free variables of the layer `n` entered through child `i`, excluding that
// child.
VarSet layer_fv(const Term& n, int i) {
  VarSet out;
  if (has_occ(n)) out.insert(n.occ());
  for (int j = 0; j < n.arity(); ++j) {
    if (j == i) continue;
    VarSet f = fv(n.child(j));
    for (auto& b : binders_in_child(n, j)) f.erase(b);
    out.insert(f.begin(), f.end());
  }
  return out;
}

// One step of a multiplicative context: either a body/pair/lambda child, or a
// cut/sub value slot followed by a pair or lambda child (a hole directly in a
// value slot would hoist the cut back out).
struct Layer {
  Path rel;                 // 1 or 2 indices
  std::vector<Var> binders; // bound around the hole
  VarSet free;              // free variables of the layer itself
};

std::vector<Layer> layers_of(const Term& n) {
  std::vector<Layer> out;
  auto add_simple = [&](int i) {
    out.push_back({{i}, binders_in_child(n, i), layer_fv(n, i)});
  };
  switch (n.tag()) {
  case Term::Tag::Pair:
    add_simple(0);
    add_simple(1);
    break;
  case Term::Tag::Lam:
  case Term::Tag::Par:
  case Term::Tag::Der: add_simple(0); break;
  case Term::Tag::Cut:
  case Term::Tag::Sub: {
    add_simple(1);
    const Term& v = n.value();
    VarSet outer = layer_fv(n, 0);
    auto add_inner = [&](int j) {
      VarSet f = outer;
      VarSet g = layer_fv(v, j);
      f.insert(g.begin(), g.end());
      out.push_back({{0, j}, binders_in_child(v, j), f});
    };
    if (v.tag() == Term::Tag::Pair) {
      add_inner(0);
      add_inner(1);
    } else if (v.tag() == Term::Tag::Lam) {
      add_inner(0);
    }
    break;
  }
  default: break;
  }
  return out;
}

bool binds(const std::vector<Var>& bs, const Var& x) { return std::find(bs.begin(), bs.end(), x) != bs.end(); }

bool captures(const std::vector<Var>& bs, const VarSet& s) {
  for (auto& b : bs)
    if (s.count(b)) return true;
  return false;
}

// Moves rooted at `n` (a node of the term), rebuilt in place.
void moves_at(const Term& n, NameSupply& ns, std::vector<Term>& out) {
  // Sinking: cut{v>x} N<u>  ->  N<cut{v>x}u>.
  if (n.tag() == Term::Tag::Cut) {
    const Term& v = n.value();
    VarSet fvv = fv(v);
    // Layer binders that would capture the value, or shadow the cut binder,
    // are renamed apart.
    VarSet avoid = fvv;
    avoid.insert(n.binder());
    for (auto& l : layers_of(n.body())) {
      if (l.free.count(n.binder())) continue;
      out.push_back(replace_avoiding(n.body(), l.rel, avoid, ns,
                                     [&](const Term& inner) { return Term::cut(v, n.binder(), inner); }));
    }
  }
  // Hoisting: N<cut{v>x}u>  ->  cut{v>x} N<u>.
  for (auto& l : layers_of(n)) {
    const Term& inner = subterm_at(n, l.rel);
    if (inner.tag() != Term::Tag::Cut) continue;
    VarSet fvv = fv(inner.value());
    if (captures(l.binders, fvv)) continue;
    Var x = inner.binder();
    Term u = inner.body();
    if (l.free.count(x) || binds(l.binders, x)) {
      // Rename the cut binder apart from the layer.
      Var z = ns.fresh(x);
      u = rename_free(u, x, z, ns);
      x = z;
    }
    out.push_back(Term::cut(inner.value(), x, replace_at(n, l.rel, u)));
  }
}

void all_moves(const Term& root, const Term& n, Path& p, NameSupply& ns, std::vector<Term>& out) {
  std::vector<Term> local;
  moves_at(n, ns, local);
  for (auto& m : local) {
    // A move of the node in a value slot would be a non-value there.
    if (!p.empty() && p.back() == 0 && !m.is_value()) {
      Path parent(p.begin(), p.end() - 1);
      const Term& pn = subterm_at(root, parent);
      if (pn.tag() == Term::Tag::Cut || pn.tag() == Term::Tag::Sub) continue;
    }
    out.push_back(replace_at(root, p, m));
  }
  for (int i = 0; i < n.arity(); ++i) {
    p.push_back(i);
    all_moves(root, n.child(i), p, ns, out);
    p.pop_back();
  }
}

} // namespace

std::vector<Term> cut_moves(const Term& t) {
  NameSupply ns(t);
  std::vector<Term> out;
  Path p;
  all_moves(t, t, p, ns, out);
  return out;
}

std::vector<Term> cut_class(const Term& t, std::size_t max_class) {
  std::unordered_set<std::string> seen{canonical_key(t)};
  std::vector<Term> members{t};
  std::deque<Term> todo{t};
  while (!todo.empty()) {
    Term cur = todo.front();
    todo.pop_front();
    for (auto& m : cut_moves(cur)) {
      if (!seen.insert(canonical_key(m)).second) continue;
      if (members.size() >= max_class) throw Error("cut-equivalence class exceeds the exploration bound");
      members.push_back(m);
      todo.push_back(m);
    }
  }
  return members;
}

bool cut_equiv(const Term& t, const Term& s, std::size_t max_class) {
  if (alpha_eq(t, s)) return true;
  if (size(t) != size(s)) return false;
  std::string target = canonical_key(s);
  std::unordered_set<std::string> seen{canonical_key(t)};
  std::deque<Term> todo{t};
  while (!todo.empty()) {
    Term cur = todo.front();
    todo.pop_front();
    for (auto& m : cut_moves(cur)) {
      std::string k = canonical_key(m);
      if (k == target) return true;
      if (!seen.insert(k).second) continue;
      if (seen.size() > max_class) throw Error("cut-equivalence class exceeds the exploration bound");
      todo.push_back(m);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// GC postponement

namespace {

bool weak_reaches(const Term& from, const std::string& target) {
  std::unordered_set<std::string> seen;
  std::deque<Term> todo;
  for (auto& r : redexes(from, Mode::Micro)) {
    if (r.kind != RuleKind::Weak) continue;
    Term n = apply(from, r);
    if (seen.insert(canonical_key(n)).second) todo.push_back(n);
  }
  while (!todo.empty()) {
    Term cur = todo.front();
    todo.pop_front();
    if (canonical_key(cur) == target) return true;
    for (auto& r : redexes(cur, Mode::Micro)) {
      if (r.kind != RuleKind::Weak) continue;
      Term n = apply(cur, r);
      if (seen.insert(canonical_key(n)).second) todo.push_back(n);
    }
  }
  return false;
}

} // namespace

PostponementReport check_gc_local_postponement(const Term& t) {
  PostponementReport rep;
  auto rs = redexes(t, Mode::Micro);
  std::vector<Term> non_weak_first;
  for (auto& r : rs)
    if (r.kind != RuleKind::Weak) non_weak_first.push_back(apply(t, r));
  for (auto& w : rs) {
    if (w.kind != RuleKind::Weak) continue;
    Term t1 = apply(t, w);
    for (auto& r2 : redexes(t1, Mode::Micro)) {
      if (r2.kind == RuleKind::Weak) continue;
      ++rep.pairs_checked;
      std::string target = canonical_key(apply(t1, r2));
      bool found = false;
      for (auto& u : non_weak_first)
        if (weak_reaches(u, target)) {
          found = true;
          break;
        }
      if (!found) {
        rep.ok = false;
        rep.failure = "no swap for " + redex_str(w) + " then " + redex_str(r2) + " on " + print(t);
        return rep;
      }
    }
  }
  return rep;
}

} // namespace esc
