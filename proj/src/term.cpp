#include "esc/term.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>

namespace esc {

ParseError::ParseError(Category category, std::string message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      category_(category), line_(line), column_(column) {}

VarKind kind_of_name(std::string_view name) {
  if (!name.empty() && (name[0] == 'e' || name[0] == 'f' || name[0] == 'g')) return VarKind::Exponential;
  return VarKind::Multiplicative;
}

Var make_var(std::string name) {
  VarKind k = kind_of_name(name);
  return Var{std::move(name), k};
}

std::string path_str(const Path& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Construction

Term Term::make(TermNode n) {
  std::size_t s = 0;
  switch (n.tag) {
  case Tag::Var: s = 1; break;
  case Tag::Hole: s = 0; break;
  case Tag::Pair: s = 1 + n.kids[0].node_size() + n.kids[1].node_size(); break;
  case Tag::Lam:
  case Tag::Bang: s = 1 + n.kids[0].node_size(); break;
  case Tag::Cut: s = 1 + n.kids[0].node_size() + n.kids[1].node_size(); break;
  case Tag::Par:
  case Tag::Der: s = 2 + n.kids[0].node_size(); break;
  case Tag::Sub: s = 2 + n.kids[0].node_size() + n.kids[1].node_size(); break;
  }
  n.size = s;
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::var(Var x) {
  TermNode n{Tag::Var, std::move(x), {}, {}, std::nullopt, {}, 0};
  return make(std::move(n));
}

Term Term::pair(Term left, Term right) {
  TermNode n{Tag::Pair, {}, {}, {}, std::nullopt, {std::move(left), std::move(right)}, 0};
  return make(std::move(n));
}

Term Term::lam(Var binder, std::optional<Formula> annot, Term body) {
  TermNode n{Tag::Lam, {}, std::move(binder), {}, std::move(annot), {std::move(body), Term()}, 0};
  return make(std::move(n));
}

Term Term::bang(Term body) {
  TermNode n{Tag::Bang, {}, {}, {}, std::nullopt, {std::move(body), Term()}, 0};
  return make(std::move(n));
}

Term Term::cut(Term value, Var binder, Term body) {
  if (!value.is_value()) throw SplitShapeError("cut value slot holds a non-value: " + print(value));
  TermNode n{Tag::Cut, {}, std::move(binder), {}, std::nullopt, {std::move(value), std::move(body)}, 0};
  return make(std::move(n));
}

Term Term::par(Var conclusion, Var left, Var right, Term body) {
  if (conclusion.is_exp()) throw KindError("par conclusion must be multiplicative: " + conclusion.name);
  TermNode n{Tag::Par, std::move(conclusion), std::move(left), std::move(right), std::nullopt,
             {std::move(body), Term()}, 0};
  return make(std::move(n));
}

Term Term::sub(Var conclusion, Term value, Var binder, Term body) {
  if (conclusion.is_exp()) throw KindError("sub conclusion must be multiplicative: " + conclusion.name);
  if (!value.is_value()) throw SplitShapeError("sub value slot holds a non-value: " + print(value));
  TermNode n{Tag::Sub, std::move(conclusion), std::move(binder), {}, std::nullopt,
             {std::move(value), std::move(body)}, 0};
  return make(std::move(n));
}

Term Term::der(Var conclusion, Var binder, Term body) {
  if (conclusion.is_mul()) throw KindError("der conclusion must be exponential: " + conclusion.name);
  TermNode n{Tag::Der, std::move(conclusion), std::move(binder), {}, std::nullopt,
             {std::move(body), Term()}, 0};
  return make(std::move(n));
}

Term Term::hole() {
  static const Term h = make(TermNode{Tag::Hole, {}, {}, {}, std::nullopt, {}, 0});
  return h;
}

Term::Tag Term::tag() const { return node_->tag; }

bool Term::is_value() const {
  switch (tag()) {
  case Tag::Var:
  case Tag::Pair:
  case Tag::Lam:
  case Tag::Bang:
  case Tag::Hole: return true;
  default: return false;
  }
}

bool Term::is_exp_value() const {
  return tag() == Tag::Bang || (tag() == Tag::Var && occ().is_exp());
}

bool Term::is_mul_value() const {
  return tag() == Tag::Pair || tag() == Tag::Lam || (tag() == Tag::Var && occ().is_mul());
}

bool Term::is_left() const {
  switch (tag()) {
  case Tag::Cut:
  case Tag::Par:
  case Tag::Sub:
  case Tag::Der: return true;
  default: return false;
  }
}

const Var& Term::occ() const { return node_->occ; }
const Var& Term::binder() const { return node_->bind; }
const Var& Term::binder2() const { return node_->bind2; }
const std::optional<Formula>& Term::annot() const { return node_->annot; }

int Term::arity() const {
  switch (tag()) {
  case Tag::Var:
  case Tag::Hole: return 0;
  case Tag::Pair:
  case Tag::Cut:
  case Tag::Sub: return 2;
  default: return 1;
  }
}

const Term& Term::child(int i) const { return node_->kids[i]; }

const Term& Term::body() const {
  return (tag() == Tag::Cut || tag() == Tag::Sub) ? node_->kids[1] : node_->kids[0];
}

const Term& Term::value() const { return node_->kids[0]; }

std::size_t Term::node_size() const { return node_ ? node_->size : 0; }

Term Term::with_child(int i, Term c) const {
  if (i == 0 && (tag() == Tag::Cut || tag() == Tag::Sub) && !c.is_value())
    throw SplitShapeError("non-value placed in a value slot: " + print(c));
  TermNode n = *node_;
  n.kids[i] = std::move(c);
  return make(std::move(n));
}

Term Term::with_binders(Var b, Var b2) const {
  TermNode n = *node_;
  n.bind = std::move(b);
  n.bind2 = std::move(b2);
  return make(std::move(n));
}

Term Term::with_occ(Var x) const {
  TermNode n = *node_;
  n.occ = std::move(x);
  if ((tag() == Tag::Par || tag() == Tag::Sub) && n.occ.is_exp())
    throw KindError("multiplicative conclusion expected: " + n.occ.name);
  if (tag() == Tag::Der && n.occ.is_mul()) throw KindError("exponential conclusion expected: " + n.occ.name);
  return make(std::move(n));
}

// ---------------------------------------------------------------------------
// Variables

std::vector<Var> binders_in_child(const Term& t, int i) {
  switch (t.tag()) {
  case Term::Tag::Lam:
  case Term::Tag::Der: return {t.binder()};
  case Term::Tag::Par: return {t.binder(), t.binder2()};
  case Term::Tag::Cut:
  case Term::Tag::Sub:
    if (i == 1) return {t.binder()};
    return {};
  default: return {};
  }
}

namespace {

bool has_occ(const Term& t) {
  auto g = t.tag();
  return g == Term::Tag::Var || g == Term::Tag::Par || g == Term::Tag::Sub || g == Term::Tag::Der;
}

// Shadow counts for a traversal.
struct Scope {
  std::map<Var, int> bound;
  bool is_bound(const Var& x) const {
    auto it = bound.find(x);
    return it != bound.end() && it->second > 0;
  }
  void push(const std::vector<Var>& bs) {
    for (auto& b : bs) ++bound[b];
  }
  void pop(const std::vector<Var>& bs) {
    for (auto& b : bs) --bound[b];
  }
};

template <class F>
void visit_free(const Term& t, Scope& sc, F& f) {
  if (has_occ(t) && !sc.is_bound(t.occ())) f(t.occ());
  for (int i = 0; i < t.arity(); ++i) {
    auto bs = binders_in_child(t, i);
    sc.push(bs);
    visit_free(t.child(i), sc, f);
    sc.pop(bs);
  }
}

} // namespace

FreeVars free_vars(const Term& t) {
  FreeVars r;
  Scope sc;
  auto f = [&](const Var& x) {
    r.all.insert(x);
    (x.is_mul() ? r.mul : r.exp).insert(x);
  };
  visit_free(t, sc, f);
  return r;
}

VarSet fv(const Term& t) { return free_vars(t).all; }
VarSet mfv(const Term& t) { return free_vars(t).mul; }

namespace {

std::size_t count_occ(const Term& t, const Var& x) {
  std::size_t n = (has_occ(t) && t.occ() == x) ? 1 : 0;
  for (int i = 0; i < t.arity(); ++i) {
    auto bs = binders_in_child(t, i);
    if (std::find(bs.begin(), bs.end(), x) != bs.end()) continue;
    n += count_occ(t.child(i), x);
  }
  return n;
}

} // namespace

std::size_t occ_count(const Term& t, const Var& x) { return count_occ(t, x); }

bool is_free_in(const Var& x, const Term& t) {
  if (has_occ(t) && t.occ() == x) return true;
  for (int i = 0; i < t.arity(); ++i) {
    auto bs = binders_in_child(t, i);
    if (std::find(bs.begin(), bs.end(), x) != bs.end()) continue;
    if (is_free_in(x, t.child(i))) return true;
  }
  return false;
}

std::size_t size(const Term& t) { return t.node_size(); }

void collect_names(const Term& t, std::unordered_set<std::string>& out) {
  if (has_occ(t)) out.insert(t.occ().name);
  switch (t.tag()) {
  case Term::Tag::Par: out.insert(t.binder2().name); [[fallthrough]];
  case Term::Tag::Lam:
  case Term::Tag::Cut:
  case Term::Tag::Sub:
  case Term::Tag::Der: out.insert(t.binder().name); break;
  default: break;
  }
  for (int i = 0; i < t.arity(); ++i) collect_names(t.child(i), out);
}

// ---------------------------------------------------------------------------
// Alpha

namespace {

struct AlphaEnv {
  std::map<Var, std::vector<int>> levels;
  int next = 0;
  std::optional<int> lookup(const Var& x) const {
    auto it = levels.find(x);
    if (it == levels.end() || it->second.empty()) return std::nullopt;
    return it->second.back();
  }
};

bool same_var(const Var& x, const AlphaEnv& ea, const Var& y, const AlphaEnv& eb) {
  if (x.kind != y.kind) return false;
  auto la = ea.lookup(x), lb = eb.lookup(y);
  if (la.has_value() != lb.has_value()) return false;
  if (la) return *la == *lb;
  return x == y;
}

bool alpha_rec(const Term& a, AlphaEnv& ea, const Term& b, AlphaEnv& eb) {
  if (a.tag() != b.tag()) return false;
  if (has_occ(a) && !same_var(a.occ(), ea, b.occ(), eb)) return false;
  for (int i = 0; i < a.arity(); ++i) {
    auto ba = binders_in_child(a, i), bb = binders_in_child(b, i);
    for (std::size_t k = 0; k < ba.size(); ++k) {
      if (ba[k].kind != bb[k].kind) return false;
      int lvl = ea.next++;
      ea.levels[ba[k]].push_back(lvl);
      eb.levels[bb[k]].push_back(lvl);
    }
    bool ok = alpha_rec(a.child(i), ea, b.child(i), eb);
    for (std::size_t k = 0; k < ba.size(); ++k) {
      ea.levels[ba[k]].pop_back();
      eb.levels[bb[k]].pop_back();
    }
    if (!ok) return false;
  }
  return true;
}

void key_var(const Var& x, const AlphaEnv& env, std::string& out) {
  auto l = env.lookup(x);
  if (l) {
    out += x.is_exp() ? "%e" : "%m";
    out += std::to_string(*l);
  } else {
    out += x.name;
  }
}

void key_rec(const Term& t, AlphaEnv& env, std::string& out) {
  switch (t.tag()) {
  case Term::Tag::Var: key_var(t.occ(), env, out); return;
  case Term::Tag::Hole: out += "<>"; return;
  case Term::Tag::Pair: out += '('; break;
  case Term::Tag::Lam: out += "\\"; break;
  case Term::Tag::Bang: out += '!'; break;
  case Term::Tag::Cut: out += "C{"; break;
  case Term::Tag::Par: out += "P{"; key_var(t.occ(), env, out); out += ';'; break;
  case Term::Tag::Sub: out += "S{"; key_var(t.occ(), env, out); out += ';'; break;
  case Term::Tag::Der: out += "D{"; key_var(t.occ(), env, out); out += ';'; break;
  }
  for (int i = 0; i < t.arity(); ++i) {
    auto bs = binders_in_child(t, i);
    for (auto& b : bs) env.levels[b].push_back(env.next++);
    if (i) out += ',';
    key_rec(t.child(i), env, out);
    for (auto& b : bs) env.levels[b].pop_back();
  }
  // Binder kinds are visible through their occurrences only, so record them.
  switch (t.tag()) {
  case Term::Tag::Lam:
  case Term::Tag::Cut:
  case Term::Tag::Sub:
  case Term::Tag::Der: out += t.binder().is_exp() ? ":e" : ":m"; break;
  case Term::Tag::Par: out += (t.binder().is_exp() ? ":e" : ":m"); out += (t.binder2().is_exp() ? "e" : "m"); break;
  default: break;
  }
  out += (t.tag() == Term::Tag::Pair) ? ')' : '}';
}

} // namespace

bool alpha_eq(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  AlphaEnv ea, eb;
  return alpha_rec(a, ea, b, eb);
}

std::string canonical_key(const Term& t) {
  std::string out;
  out.reserve(t.node_size() * 4);
  AlphaEnv env;
  key_rec(t, env, out);
  return out;
}

// ---------------------------------------------------------------------------
// Properness

namespace {

struct ProperWalker {
  ProperCheck result;
  Path path;

  void fail(std::string msg) {
    if (!result.ok) return;
    result.ok = false;
    result.violation = std::move(msg);
    result.where = path;
  }

  static bool disjoint(const VarSet& a, const VarSet& b, std::string& witness) {
    for (auto& x : a)
      if (b.count(x)) {
        witness = x.name;
        return false;
      }
    return true;
  }

  VarSet go(const Term& t) {
    auto kid = [&](int i) {
      path.push_back(i);
      VarSet r = go(t.child(i));
      path.pop_back();
      return r;
    };
    std::string w;
    switch (t.tag()) {
    case Term::Tag::Hole: return {};
    case Term::Tag::Var:
      if (t.occ().is_mul()) return {t.occ()};
      return {};
    case Term::Tag::Pair: {
      VarSet l = kid(0), r = kid(1);
      if (!disjoint(l, r, w)) fail("tensor pair: mfv(t) ∩ mfv(s) = ∅ violated by " + w);
      l.insert(r.begin(), r.end());
      return l;
    }
    case Term::Tag::Lam: {
      VarSet b = kid(0);
      if (t.binder().is_mul() && !b.count(t.binder()))
        fail("abstraction: multiplicative binder " + t.binder().name + " does not occur in the body");
      b.erase(t.binder());
      return b;
    }
    case Term::Tag::Bang: {
      VarSet b = kid(0);
      if (!b.empty()) fail("promotion: mfv(t) = ∅ violated by " + b.begin()->name);
      return b;
    }
    case Term::Tag::Der: {
      VarSet b = kid(0);
      if (t.binder().is_mul() && !b.count(t.binder()))
        fail("dereliction: multiplicative binder " + t.binder().name + " does not occur in the body");
      b.erase(t.binder());
      return b;
    }
    case Term::Tag::Par: {
      VarSet b = kid(0);
      b.erase(t.binder());
      b.erase(t.binder2());
      if (b.count(t.occ())) fail("par: conclusion " + t.occ().name + " also occurs in the body");
      b.insert(t.occ());
      return b;
    }
    case Term::Tag::Sub: {
      VarSet v = kid(0), b = kid(1);
      if (b.count(t.occ())) fail("subtraction: conclusion " + t.occ().name + " also occurs in the body");
      if (t.binder().is_mul() && !b.count(t.binder()))
        fail("subtraction: multiplicative binder " + t.binder().name + " does not occur in the body");
      b.erase(t.binder());
      if (!disjoint(v, b, w)) fail("subtraction: mfv(v) ∩ mfv(t) = ∅ violated by " + w);
      b.insert(v.begin(), v.end());
      b.insert(t.occ());
      return b;
    }
    case Term::Tag::Cut: {
      VarSet v = kid(0), b = kid(1);
      if (t.binder().is_mul() && !b.count(t.binder()))
        fail("cut: multiplicative binder " + t.binder().name + " does not occur in the body");
      b.erase(t.binder());
      if (!disjoint(v, b, w)) fail("cut: mfv(v) ∩ mfv(t) = ∅ violated by " + w);
      b.insert(v.begin(), v.end());
      return b;
    }
    }
    return {};
  }
};

} // namespace

ProperCheck check_proper(const Term& t) {
  ProperWalker w;
  w.go(t);
  return w.result;
}

// ---------------------------------------------------------------------------
// Splitting

Split split(const Term& t) {
  Split s;
  const Term* cur = &t;
  while (cur->is_left()) {
    s.spine.push_back(*cur);
    cur = &cur->body();
  }
  s.head = *cur;
  return s;
}

Term replug(const std::vector<Term>& spine, Term head) {
  for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
    int bi = (it->tag() == Term::Tag::Cut || it->tag() == Term::Tag::Sub) ? 1 : 0;
    head = it->with_child(bi, std::move(head));
  }
  return head;
}

Term replug(const Split& s) { return replug(s.spine, s.head); }

// ---------------------------------------------------------------------------
// Names

void NameSupply::observe(const Term& t) { collect_names(t, used_); }

Var NameSupply::fresh(const Var& base) {
  std::string stem = base.name;
  while (!stem.empty() && (std::isdigit(static_cast<unsigned char>(stem.back())) || stem.back() == '\'' ||
                           stem.back() == '_'))
    stem.pop_back();
  if (stem.empty()) stem = base.is_exp() ? "e" : "m";
  // The surface rule must still read the same kind off the fresh name.
  if (kind_of_name(stem) != base.kind) stem = (base.is_exp() ? "e_" : "m_") + stem;
  unsigned& k = next_[stem];
  for (;;) {
    std::string cand = stem + std::to_string(++k);
    if (used_.insert(cand).second) return Var{cand, base.kind};
  }
}

namespace {

Term freshen_rec(const Term& t, std::map<Var, std::vector<Var>>& env, NameSupply& ns) {
  auto map_var = [&](const Var& x) -> Var {
    auto it = env.find(x);
    if (it == env.end() || it->second.empty()) return x;
    return it->second.back();
  };
  switch (t.tag()) {
  case Term::Tag::Var: {
    Var y = map_var(t.occ());
    return y == t.occ() ? t : Term::var(y);
  }
  case Term::Tag::Hole: return t;
  default: break;
  }
  Term r = t;
  if (has_occ(t)) {
    Var y = map_var(t.occ());
    if (y != t.occ()) r = r.with_occ(y);
  }
  Var nb = t.binder(), nb2 = t.binder2();
  bool has_binder = false;
  switch (t.tag()) {
  case Term::Tag::Par: nb2 = ns.fresh(t.binder2()); [[fallthrough]];
  case Term::Tag::Lam:
  case Term::Tag::Cut:
  case Term::Tag::Sub:
  case Term::Tag::Der:
    nb = ns.fresh(t.binder());
    has_binder = true;
    break;
  default: break;
  }
  for (int i = 0; i < t.arity(); ++i) {
    auto bs = binders_in_child(t, i);
    for (auto& b : bs) env[b].push_back(b == t.binder() ? nb : nb2);
    r = r.with_child(i, freshen_rec(t.child(i), env, ns));
    for (auto& b : bs) env[b].pop_back();
  }
  if (has_binder) r = r.with_binders(nb, nb2);
  return r;
}

// Plain replacement; the caller guarantees `y` cannot be captured.
Term rename_raw(const Term& t, const Var& x, const Var& y);

Term rename_rec(const Term& t, const Var& x, const Var& y, NameSupply& ns) {
  if (t.tag() == Term::Tag::Var) return t.occ() == x ? Term::var(y) : t;
  if (t.tag() == Term::Tag::Hole) return t;
  Term r = t;
  if (has_occ(t) && t.occ() == x) r = r.with_occ(y);
  Var nb = t.binder(), nb2 = t.binder2();
  for (int i = 0; i < t.arity(); ++i) {
    auto bs = binders_in_child(t, i);
    if (std::find(bs.begin(), bs.end(), x) != bs.end()) continue;
    Term c = t.child(i);
    if (std::find(bs.begin(), bs.end(), y) != bs.end() && is_free_in(x, c)) {
      Var z = ns.fresh(y);
      c = rename_raw(c, y, z);
      if (nb == y) nb = z;
      if (t.tag() == Term::Tag::Par && nb2 == y) nb2 = z;
    }
    r = r.with_child(i, rename_rec(c, x, y, ns));
  }
  if (nb != t.binder() || nb2 != t.binder2()) r = r.with_binders(nb, nb2);
  return r;
}

Term rename_raw(const Term& t, const Var& x, const Var& y) {
  if (t.tag() == Term::Tag::Var) return t.occ() == x ? Term::var(y) : t;
  if (t.tag() == Term::Tag::Hole) return t;
  Term r = t;
  if (has_occ(t) && t.occ() == x) r = r.with_occ(y);
  for (int i = 0; i < t.arity(); ++i) {
    auto bs = binders_in_child(t, i);
    if (std::find(bs.begin(), bs.end(), x) != bs.end()) continue;
    r = r.with_child(i, rename_raw(t.child(i), x, y));
  }
  return r;
}

} // namespace

Term freshen(const Term& t, NameSupply& names) {
  std::map<Var, std::vector<Var>> env;
  return freshen_rec(t, env, names);
}

Term rename_free(const Term& t, const Var& x, const Var& y, NameSupply& names) {
  if (x.kind != y.kind) throw KindError("cannot rename " + x.name + " to " + y.name + ": kinds differ");
  if (x == y) return t;
  names.reserve(y.name);
  return rename_rec(t, x, y, names);
}

Term rename_mul(const Term& t, const Var& m, const Var& n) {
  if (!m.is_mul() || !n.is_mul()) throw KindError("rename_mul expects multiplicative variables");
  NameSupply ns(t);
  return rename_free(t, m, n, ns);
}

// ---------------------------------------------------------------------------
// Paths

bool is_valid_path(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (int i : p) {
    if (i < 0 || i >= cur->arity()) return false;
    cur = &cur->child(i);
  }
  return true;
}

const Term& subterm_at(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (int i : p) {
    if (i < 0 || i >= cur->arity()) throw InvalidPath("invalid path " + path_str(p));
    cur = &cur->child(i);
  }
  return *cur;
}

namespace {

Term replace_rec(const Term& t, const Path& p, std::size_t k, Term& rep) {
  if (k == p.size()) return std::move(rep);
  int i = p[k];
  if (i < 0 || i >= t.arity()) throw InvalidPath("invalid path " + path_str(p));
  return t.with_child(i, replace_rec(t.child(i), p, k + 1, rep));
}

Term replace_avoid_rec(const Term& t, const Path& p, std::size_t k, const VarSet& avoid, NameSupply& ns,
                       const std::function<Term(const Term&)>& make) {
  if (k == p.size()) return make(t);
  int i = p[k];
  if (i < 0 || i >= t.arity()) throw InvalidPath("invalid path " + path_str(p));
  Term c = t.child(i);
  Var nb = t.binder(), nb2 = t.binder2();
  for (auto& b : binders_in_child(t, i)) {
    if (!avoid.count(b)) continue;
    Var z = ns.fresh(b);
    c = rename_raw(c, b, z);
    if (t.binder() == b) nb = z;
    if (t.tag() == Term::Tag::Par && t.binder2() == b) nb2 = z;
  }
  Term r = t.with_child(i, replace_avoid_rec(c, p, k + 1, avoid, ns, make));
  if (nb != t.binder() || nb2 != t.binder2()) r = r.with_binders(nb, nb2);
  return r;
}

} // namespace

Term replace_at(const Term& t, const Path& p, Term replacement) { return replace_rec(t, p, 0, replacement); }

Term replace_avoiding(const Term& t, const Path& p, const VarSet& avoid, NameSupply& names,
                      const std::function<Term(const Term&)>& make) {
  return replace_avoid_rec(t, p, 0, avoid, names, make);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_rec(const Term& t, std::string& out) {
  switch (t.tag()) {
  case Term::Tag::Var: out += t.occ().name; return;
  case Term::Tag::Hole: out += "<>"; return;
  case Term::Tag::Pair:
    out += '(';
    print_rec(t.left(), out);
    out += ", ";
    print_rec(t.right(), out);
    out += ')';
    return;
  case Term::Tag::Lam:
    out += '\\';
    out += t.binder().name;
    if (t.annot()) {
      out += ':';
      out += t.annot()->str();
    }
    out += ". ";
    print_rec(t.body(), out);
    return;
  case Term::Tag::Bang:
    out += '!';
    print_rec(t.body(), out);
    return;
  case Term::Tag::Cut:
    out += "cut{";
    print_rec(t.value(), out);
    out += " > " + t.binder().name + "} ";
    print_rec(t.body(), out);
    return;
  case Term::Tag::Par:
    out += "par{" + t.occ().name + " > " + t.binder().name + ", " + t.binder2().name + "} ";
    print_rec(t.body(), out);
    return;
  case Term::Tag::Sub:
    out += "sub{" + t.occ().name + "; ";
    print_rec(t.value(), out);
    out += " > " + t.binder().name + "} ";
    print_rec(t.body(), out);
    return;
  case Term::Tag::Der:
    out += "der{" + t.occ().name + " > " + t.binder().name + "} ";
    print_rec(t.body(), out);
    return;
  }
}

} // namespace

std::string print(const Term& t) {
  std::string out;
  print_rec(t, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << print(t); }

} // namespace esc
