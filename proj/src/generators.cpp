#include <algorithm>
#include <map>
#include <random>

#include "esc/oracle.hpp"
#include "esc/parser.hpp"

namespace esc {

namespace {

using Rng = std::mt19937_64;

std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// ---------------------------------------------------------------------------
// Formulas with metavariables, for top-down derivations.

class Formulas {
public:
  enum class K { Atom, Tensor, Lolli, Bang, Meta };

  int atom(std::string name) { return push({K::Atom, std::move(name)}); }
  int tensor(int a, int b) { return push({K::Tensor, {}, a, b}); }
  int lolli(int a, int b) { return push({K::Lolli, {}, a, b}); }
  int bang(int a) { return push({K::Bang, {}, a}); }
  /// `nonbang` metas may only be solved by atoms, tensors and implications.
  int meta(bool nonbang) {
    Node n;
    n.kind = K::Meta;
    n.nonbang = nonbang;
    return push(n);
  }

  int find(int i) const {
    while (nodes_[i].kind == K::Meta && nodes_[i].ref >= 0) i = nodes_[i].ref;
    return i;
  }

  K kind(int i) const { return nodes_[find(i)].kind; }
  int a(int i) const { return nodes_[find(i)].a; }
  int b(int i) const { return nodes_[find(i)].b; }

  bool may_be_bang(int i) const {
    const Node& n = nodes_[find(i)];
    return n.kind == K::Bang || (n.kind == K::Meta && !n.nonbang);
  }
  bool may_be_nonbang(int i) const { return nodes_[find(i)].kind != K::Bang; }

  /// Makes `i` a bang and returns its body, or -1.
  int force_bang(int i) {
    int r = find(i);
    if (nodes_[r].kind == K::Bang) return nodes_[r].a;
    if (nodes_[r].kind != K::Meta || nodes_[r].nonbang) return -1;
    int body = meta(false);
    bind(r, bang(body));
    return body;
  }

  bool force_nonbang(int i) {
    int r = find(i);
    if (nodes_[r].kind == K::Bang) return false;
    if (nodes_[r].kind == K::Meta && !nodes_[r].nonbang) {
      trail_.push_back({r, -2});
      nodes_[r].nonbang = true;
    }
    return true;
  }

  bool unify(int x, int y) {
    std::size_t mark = trail_.size();
    if (unify_rec(x, y)) return true;
    undo(mark);
    return false;
  }

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [i, old] = trail_.back();
      trail_.pop_back();
      if (old == -2) nodes_[i].nonbang = false;
      else nodes_[i].ref = old;
    }
  }

  Formula resolve(int i) const {
    const Node& n = nodes_[find(i)];
    switch (n.kind) {
    case K::Atom: return Formula::atom(n.name);
    case K::Tensor: return Formula::tensor(resolve(n.a), resolve(n.b));
    case K::Lolli: return Formula::lolli(resolve(n.a), resolve(n.b));
    case K::Bang: return Formula::bang(resolve(n.a));
    case K::Meta: return Formula::atom("X");
    }
    return Formula::atom("X");
  }

private:
  struct Node {
    K kind = K::Meta;
    std::string name;
    int a = -1, b = -1;
    int ref = -1;
    bool nonbang = false;
  };
  std::vector<Node> nodes_;
  std::vector<std::pair<int, int>> trail_;  // (meta, previous ref) or (meta, -2) for a nonbang flag

  int push(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  void bind(int meta, int to) {
    trail_.push_back({meta, nodes_[meta].ref});
    nodes_[meta].ref = to;
  }

  bool occurs(int m, int i) const {
    i = find(i);
    if (i == m) return true;
    const Node& n = nodes_[i];
    return (n.a >= 0 && occurs(m, n.a)) || (n.b >= 0 && occurs(m, n.b));
  }

  bool unify_rec(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return true;
    Node& nx = nodes_[x];
    Node& ny = nodes_[y];
    if (nx.kind == K::Meta || ny.kind == K::Meta) {
      if (nx.kind != K::Meta) return unify_rec(y, x);
      // x is a meta.
      if (ny.kind == K::Meta) {
        if (nx.nonbang && !ny.nonbang) force_nonbang(y);
        bind(x, y);
        return true;
      }
      if (nx.nonbang && ny.kind == K::Bang) return false;
      if (occurs(x, y)) return false;
      bind(x, y);
      return true;
    }
    if (nx.kind != ny.kind) return false;
    switch (nx.kind) {
    case K::Atom: return nx.name == ny.name;
    case K::Bang: return unify_rec(nx.a, ny.a);
    default: return unify_rec(nx.a, ny.a) && unify_rec(nx.b, ny.b);
    }
  }
};

// ---------------------------------------------------------------------------
// Typed generation

struct Hyp {
  Var var;
  int type;
};

struct Derived {
  Term term;
  std::vector<Hyp> ctx;  // multiplicative hypotheses are used once; exponential ones are shared by name
};

class TypedGen {
public:
  TypedGen(std::uint64_t seed) : rng_(seed) {}

  TypedTerm run(std::size_t budget) {
    int goal = fs_.meta(false);
    Derived d = gen(goal, budget);
    TypingContext ctx;
    for (auto& h : d.ctx) ctx.emplace(h.var, fs_.resolve(h.type));
    return TypedTerm{ctx, annotate(d.term), fs_.resolve(goal)};
  }

private:
  Rng rng_;
  Formulas fs_;
  unsigned counter_ = 0;
  std::map<std::string, int> exp_types_;  // every exponential variable ever introduced
  std::map<std::string, int> lam_types_;
  Hyp last_left_{Var{}, -1};  // conclusion introduced by the last left rule

  Var fresh_mul() { return Var{"x" + std::to_string(++counter_), VarKind::Multiplicative}; }
  Var fresh_exp() { return Var{"e" + std::to_string(++counter_), VarKind::Exponential}; }

  Var new_exp(int type) {
    Var e = fresh_exp();
    exp_types_[e.name] = type;
    return e;
  }

  // An exponential variable of type `type`, shared with earlier ones when
  // possible (contraction).
  Var exp_of(int type) {
    if (!exp_types_.empty() && coin(rng_, 0.5)) {
      std::vector<std::string> names;
      for (auto& [n, ty] : exp_types_) names.push_back(n);
      std::shuffle(names.begin(), names.end(), rng_);
      for (auto& n : names) {
        if (names.size() > 3 && &n - &names[0] > 3) break;
        if (fs_.unify(exp_types_[n], type)) return Var{n, VarKind::Exponential};
      }
    }
    return new_exp(type);
  }

  static void merge(std::vector<Hyp>& into, const std::vector<Hyp>& from) {
    for (auto& h : from) {
      bool dup = false;
      for (auto& g : into) dup |= g.var == h.var;
      if (!dup) into.push_back(h);
    }
  }

  static std::vector<Hyp> without(std::vector<Hyp> ctx, const Var& x) {
    ctx.erase(std::remove_if(ctx.begin(), ctx.end(), [&](const Hyp& h) { return h.var == x; }), ctx.end());
    return ctx;
  }

  Derived axiom(int goal) {
    bool exp = fs_.may_be_bang(goal) && (!fs_.may_be_nonbang(goal) || coin(rng_, 0.35));
    if (exp) {
      fs_.force_bang(goal);
      Var e = exp_of(goal);
      return {Term::var(e), {{e, goal}}};
    }
    fs_.force_nonbang(goal);
    Var m = fresh_mul();
    return {Term::var(m), {{m, goal}}};
  }

  // Picks a hypothesis of `d` to bind, compatible with `type` when given.
  std::optional<Hyp> pick(const Derived& d, int type = -1) {
    std::vector<Hyp> c = d.ctx;
    std::shuffle(c.begin(), c.end(), rng_);
    for (auto& h : c) {
      if (type < 0) return h;
      if (fs_.unify(h.type, type)) return h;
    }
    return std::nullopt;
  }

  // A binder of type `type`: a hypothesis of `d`, or a fresh exponential
  // variable that is never used.
  std::optional<Hyp> binder(const Derived& d, int type) {
    if (auto h = pick(d, type); h && (h->var.is_mul() || coin(rng_, 0.8))) return h;
    if (fs_.force_bang(type) < 0) return std::nullopt;
    return Hyp{new_exp(type), type};
  }

  Derived gen(int goal, std::size_t budget) {
    if (budget <= 1) return axiom(goal);
    for (int attempt = 0; attempt < 4; ++attempt) {
      std::size_t mark = fs_.mark();
      auto r = try_rule(goal, budget);
      if (r) return *r;
      fs_.undo(mark);
    }
    return axiom(goal);
  }

  std::optional<Derived> try_rule(int goal, std::size_t budget) {
    // Weights: tensor, lolli, bang, der, par, sub, cut, principal cut.
    static const double w[] = {1.5, 1.5, 1, 1, 0.7, 0.7, 1, 5};
    std::discrete_distribution<int> d(std::begin(w), std::end(w));
    switch (d(rng_)) {
    case 7: return principal_cut(goal, budget);
    case 0: return tensor_r(goal, budget);
    case 1: return lolli_r(goal, budget);
    case 2: return bang_r(goal, budget);
    case 3: return der_l(goal, budget);
    case 4: return par_l(goal, budget);
    case 5: return sub_l(goal, budget);
    default: return cut_l(goal, budget);
    }
  }

  std::optional<Derived> tensor_r(int goal, std::size_t budget) {
    if (budget < 3) return std::nullopt;
    int a = fs_.meta(false), b = fs_.meta(false);
    if (!fs_.unify(goal, fs_.tensor(a, b))) return std::nullopt;
    std::size_t left = 1 + below(rng_, budget - 2);
    Derived l = gen(a, left), r = gen(b, budget - 1 - left);
    Derived out{Term::pair(l.term, r.term), l.ctx};
    merge(out.ctx, r.ctx);
    return out;
  }

  std::optional<Derived> lolli_r(int goal, std::size_t budget) {
    int a = fs_.meta(false), b = fs_.meta(false);
    if (!fs_.unify(goal, fs_.lolli(a, b))) return std::nullopt;
    Derived body = gen(b, budget - 1);
    auto h = binder(body, a);
    if (!h) return std::nullopt;
    lam_types_[h->var.name] = a;
    return Derived{Term::lam(h->var, body.term), without(body.ctx, h->var)};
  }

  std::optional<Derived> bang_r(int goal, std::size_t budget) {
    int a = fs_.force_bang(goal);
    if (a < 0) return std::nullopt;
    Derived body = gen(a, budget - 1);
    // Promotion needs an exponential context: derelict the multiplicative hypotheses.
    Term t = body.term;
    std::vector<Hyp> ctx;
    for (auto& h : body.ctx) {
      if (h.var.is_exp()) {
        merge(ctx, {h});
        continue;
      }
      Var e = exp_of(fs_.bang(h.type));
      t = Term::der(e, h.var, t);
      merge(ctx, {{e, exp_types_[e.name]}});
    }
    return Derived{Term::bang(t), ctx};
  }

  std::optional<Derived> der_l(int goal, std::size_t budget) {
    if (budget < 3) return std::nullopt;
    Derived body = gen(goal, budget - 2);
    auto h = pick(body);
    if (!h) return std::nullopt;
    Var e = exp_of(fs_.bang(h->type));
    std::vector<Hyp> ctx = without(body.ctx, h->var);
    merge(ctx, {{e, exp_types_[e.name]}});
    last_left_ = {e, exp_types_[e.name]};
    return Derived{Term::der(e, h->var, body.term), ctx};
  }

  std::optional<Derived> par_l(int goal, std::size_t budget) {
    if (budget < 3) return std::nullopt;
    Derived body = gen(goal, budget - 2);
    auto x = binder(body, fs_.meta(false));
    if (!x) return std::nullopt;
    Derived rest{body.term, without(body.ctx, x->var)};
    auto y = binder(rest, fs_.meta(false));
    if (!y || y->var == x->var) return std::nullopt;
    Var m = fresh_mul();
    std::vector<Hyp> ctx = without(rest.ctx, y->var);
    ctx.push_back({m, fs_.tensor(x->type, y->type)});
    last_left_ = ctx.back();
    return Derived{Term::par(m, x->var, y->var, body.term), ctx};
  }

  // Value side of a cut or subtraction, split as L<v>, whose binders must not
  // capture free variables of `body`.
  std::optional<std::pair<Split, Derived>> value_side(int type, std::size_t budget, const Term& body) {
    Derived v = gen(type, std::max<std::size_t>(1, budget));
    Split s = split(v.term);
    VarSet f = fv(body);
    for (auto& layer : s.spine)
      for (int i = 0; i < layer.arity(); ++i)
        for (auto& b : binders_in_child(layer, i))
          if (f.count(b)) return std::nullopt;
    return std::make_pair(s, v);
  }

  std::optional<Derived> sub_l(int goal, std::size_t budget) {
    if (budget < 4) return std::nullopt;
    std::size_t vb = 1 + below(rng_, (budget - 2) / 2);
    Derived body = gen(goal, budget - 2 - vb);
    int b = fs_.meta(false);
    auto x = binder(body, b);
    if (!x) return std::nullopt;
    int a = fs_.meta(false);
    auto vs = value_side(a, vb, body.term);
    if (!vs) return std::nullopt;
    Var m = fresh_mul();
    Term t = Term::sub(m, vs->first.head, x->var, body.term);
    std::vector<Hyp> ctx = without(body.ctx, x->var);
    merge(ctx, vs->second.ctx);
    ctx.push_back({m, fs_.lolli(a, b)});
    last_left_ = ctx.back();
    return Derived{replug(vs->first.spine, t), ctx};
  }

  std::optional<Derived> cut_l(int goal, std::size_t budget) {
    if (budget < 3) return std::nullopt;
    std::size_t vb = 1 + below(rng_, (budget - 1) / 2);
    Derived body = gen(goal, budget - 1 - vb);
    int a = fs_.meta(false);
    auto x = binder(body, a);
    if (!x) return std::nullopt;
    auto vs = value_side(a, vb, body.term);
    if (!vs) return std::nullopt;
    Term t = Term::cut(vs->first.head, x->var, body.term);
    std::vector<Hyp> ctx = without(body.ctx, x->var);
    merge(ctx, vs->second.ctx);
    return Derived{replug(vs->first.spine, t), ctx};
  }

  // A value built by a right rule when the formula allows one.
  Derived gen_value(int type, std::size_t budget) {
    if (budget < 2) return axiom(type);
    for (int attempt = 0; attempt < 4; ++attempt) {
      std::size_t mark = fs_.mark();
      std::optional<Derived> r;
      switch (below(rng_, 3)) {
      case 0: r = tensor_r(type, budget); break;
      case 1: r = lolli_r(type, budget); break;
      default: r = bang_r(type, budget); break;
      }
      if (r) return *r;
      fs_.undo(mark);
    }
    return axiom(type);
  }

  // cut{v > c} N where N ends with a left rule on c and v starts with the
  // matching right rule, so the cut is principal.
  std::optional<Derived> principal_cut(int goal, std::size_t budget) {
    if (budget < 4) return std::nullopt;
    std::size_t vb = 1 + below(rng_, (budget - 2) / 2);
    std::optional<Derived> body;
    switch (below(rng_, 3)) {
    case 0: body = der_l(goal, budget - 1 - vb); break;
    case 1: body = par_l(goal, budget - 1 - vb); break;
    default: body = sub_l(goal, budget - 1 - vb); break;
    }
    if (!body) return std::nullopt;
    Hyp c = last_left_;
    Derived v = gen_value(c.type, vb);
    if (!v.term.is_value()) return std::nullopt;
    std::vector<Hyp> ctx = without(body->ctx, c.var);
    merge(ctx, v.ctx);
    return Derived{Term::cut(v.term, c.var, body->term), ctx};
  }

  Term annotate(const Term& t) {
    if (t.tag() == Term::Tag::Lam) {
      auto it = lam_types_.find(t.binder().name);
      std::optional<Formula> a;
      if (it != lam_types_.end()) a = fs_.resolve(it->second);
      return Term::lam(t.binder(), a, annotate(t.body()));
    }
    Term out = t;
    for (int i = 0; i < t.arity(); ++i) out = out.with_child(i, annotate(t.child(i)));
    return out;
  }
};

// ---------------------------------------------------------------------------
// Untyped proper generation

class UntypedGen {
public:
  UntypedGen(std::uint64_t seed) : rng_(seed) {}

  Term gen(std::size_t budget) {
    if (budget <= 1) return var();
    switch (below(rng_, 11)) {
    case 8: case 9: case 10: return principal(budget);
    case 0: {
      if (budget < 3) return var();
      std::size_t l = 1 + below(rng_, budget - 2);
      return Term::pair(gen(l), gen(budget - 1 - l));
    }
    case 1: {
      Term b = gen(budget - 1);
      return Term::lam(binder(b), b);
    }
    case 2: {
      Term b = gen(budget - 1);
      for (auto& m : mfv(b)) b = Term::der(pool_exp(), m, b);
      return Term::bang(b);
    }
    case 3: {
      Term b = gen(budget - 2);
      Var x = binder(b, true);
      Var y = binder(b, true);
      if (y == x) y = pool_exp();
      if (x == y) return b;
      return Term::par(fresh_mul(), x, y, b);
    }
    case 4: {
      Term b = gen(budget - 2);
      return Term::der(pool_exp(), binder(b), b);
    }
    case 5: case 6: {
      if (budget < 4) return var();
      std::size_t vb = 1 + below(rng_, (budget - 2) / 2);
      Term b = gen(budget - 2 - vb);
      Var x = binder(b);
      Split s = split(gen(vb));
      return replug(s.spine, Term::sub(fresh_mul(), s.head, x, b));
    }
    default: {
      if (budget < 3) return var();
      std::size_t vb = 1 + below(rng_, (budget - 1) / 2);
      Term b = gen(budget - 1 - vb);
      Var x = binder(b);
      Split s = split(gen(vb));
      return replug(s.spine, Term::cut(s.head, x, b));
    }
    }
  }

private:
  Rng rng_;
  unsigned counter_ = 0;

  // cut{v > c} N where N starts with a left rule on c. The value constructor
  // is random, so the cut may clash.
  Term principal(std::size_t budget) {
    if (budget < 4) return gen(budget - 1);
    std::size_t vb = 1 + below(rng_, (budget - 2) / 2);
    Term b = gen(budget - 2 - vb);
    Var c;
    Term body;
    int shape = static_cast<int>(below(rng_, 3));
    switch (shape) {
    case 0: {
      c = fresh_mul();
      Var x = binder(b, true), y = binder(b, true);
      if (x == y) y = fresh_mul();
      body = Term::par(c, x, y, b);
      break;
    }
    case 1:
      c = pool_exp();
      body = Term::der(c, binder(b), b);
      break;
    default: {
      c = fresh_mul();
      Split sp = split(gen(std::max<std::size_t>(1, vb / 2)));
      body = replug(sp.spine, Term::sub(c, sp.head, binder(b), b));
    }
    }
    // Mostly the matching value: pair for par, box for der, lambda for sub.
    static const int match[] = {0, 2, 1};
    return Term::cut(value(vb, coin(rng_, 0.7) ? match[shape] : static_cast<int>(below(rng_, 3))), c, body);
  }

  Term value(std::size_t budget, int shape) {
    if (budget <= 1) return var();
    switch (shape) {
    case 0: {
      if (budget < 3) return var();
      std::size_t l = 1 + below(rng_, budget - 2);
      return Term::pair(gen(l), gen(budget - 1 - l));
    }
    case 1: {
      Term b = gen(budget - 1);
      return Term::lam(binder(b), b);
    }
    default: {
      Term b = gen(budget - 1);
      for (auto& m : mfv(b)) b = Term::der(pool_exp(), m, b);
      return Term::bang(b);
    }
    }
  }

  Var fresh_mul() { return Var{"x" + std::to_string(++counter_), VarKind::Multiplicative}; }
  Var pool_exp() {
    static const char* names[] = {"e", "f", "g"};
    return Var{names[below(rng_, 3)], VarKind::Exponential};
  }
  Term var() { return Term::var(coin(rng_, 0.6) ? fresh_mul() : pool_exp()); }

  // A multiplicative free variable of `b` (to keep the binder proper) or a pool
  // exponential. `any_mul` allows a fresh unused multiplicative name.
  Var binder(const Term& b, bool any_mul = false) {
    VarSet m = mfv(b);
    if (!m.empty() && coin(rng_, 0.75)) {
      auto it = m.begin();
      std::advance(it, below(rng_, m.size()));
      return *it;
    }
    if (any_mul && coin(rng_, 0.3)) return fresh_mul();
    return pool_exp();
  }
};

// ---------------------------------------------------------------------------
// Contexts

const Var kM{"m", VarKind::Multiplicative};
const Var kE{"e", VarKind::Exponential};

class ContextEnum {
public:
  // Terms of size exactly n over {m, e}; size counts conclusions.
  const std::vector<Term>& terms(std::size_t n) {
    if (n < cache_.size() && cache_[n].done) return cache_[n].all;
    if (cache_.size() <= n) cache_.resize(n + 1);
    std::vector<Term> out;
    if (n == 1) out = {Term::var(kM), Term::var(kE)};
    for (std::size_t a = 1; a + 2 <= n; ++a)
      for (auto& l : terms(a))
        for (auto& r : terms(n - 1 - a)) out.push_back(Term::pair(l, r));
    if (n >= 2)
      for (auto& b : terms(n - 1)) {
        out.push_back(Term::lam(kM, b));
        out.push_back(Term::lam(kE, b));
        out.push_back(Term::bang(b));
      }
    if (n >= 3)
      for (auto& b : terms(n - 2))
        for (auto& x : {kM, kE}) {
          for (auto& y : {kM, kE}) out.push_back(Term::par(kM, x, y, b));
          out.push_back(Term::der(kE, x, b));
        }
    for (std::size_t a = 1; a + 2 <= n; ++a)
      for (auto& v : terms(a)) {
        if (!v.is_value()) continue;
        for (auto& b : terms(n - 1 - a))
          for (auto& x : {kM, kE}) out.push_back(Term::cut(v, x, b));
        if (a + 3 <= n)
          for (auto& b : terms(n - 2 - a))
            for (auto& x : {kM, kE}) out.push_back(Term::sub(kM, v, x, b));
      }
    cache_[n].all = std::move(out);
    cache_[n].done = true;
    return cache_[n].all;
  }

  using K = std::function<void(const Term&, const Path&)>;

  // Contexts of size exactly n; `value_only` restricts to holes or values.
  void contexts(std::size_t n, bool value_only, const K& k) {
    if (n == 1) {
      k(Term::hole(), {});
      return;
    }
    auto in = [&](std::size_t m, bool vo, const std::function<Term(const Term&)>& wrap, int idx) {
      contexts(m, vo, [&](const Term& c, const Path& p) {
        Path q{idx};
        q.insert(q.end(), p.begin(), p.end());
        k(wrap(c), q);
      });
    };
    for (std::size_t a = 1; a + 2 <= n; ++a) {
      for (auto& r : terms(n - 1 - a)) in(a, false, [&](const Term& c) { return Term::pair(c, r); }, 0);
      for (auto& l : terms(n - 1 - a)) in(a, false, [&](const Term& c) { return Term::pair(l, c); }, 1);
    }
    for (auto& x : {kM, kE}) in(n - 1, false, [&](const Term& c) { return Term::lam(x, c); }, 0);
    in(n - 1, false, [&](const Term& c) { return Term::bang(c); }, 0);
    if (value_only) return;
    if (n >= 3)
      for (auto& x : {kM, kE}) {
        for (auto& y : {kM, kE}) in(n - 2, false, [&](const Term& c) { return Term::par(kM, x, y, c); }, 0);
        in(n - 2, false, [&](const Term& c) { return Term::der(kE, x, c); }, 0);
      }
    for (std::size_t a = 1; a + 2 <= n; ++a)
      for (auto& x : {kM, kE}) {
        // Hole in the body.
        for (auto& v : terms(a))
          if (v.is_value()) in(n - 1 - a, false, [&](const Term& c) { return Term::cut(v, x, c); }, 1);
        // Hole in the value slot.
        for (auto& b : terms(n - 1 - a)) in(a, true, [&](const Term& c) { return Term::cut(c, x, b); }, 0);
        if (a + 3 <= n) {
          for (auto& v : terms(a))
            if (v.is_value()) in(n - 2 - a, false, [&](const Term& c) { return Term::sub(kM, v, x, c); }, 1);
          for (auto& b : terms(n - 2 - a)) in(a, true, [&](const Term& c) { return Term::sub(kM, c, x, b); }, 0);
        }
      }
  }

private:
  struct Entry {
    bool done = false;
    std::vector<Term> all;
  };
  std::vector<Entry> cache_;
};

class RandomContext {
public:
  RandomContext(std::uint64_t seed) : rng_(seed) {}

  // Returns the context term and fills `hole`.
  Term ctx(std::size_t budget, Path& hole, bool value_only = false) {
    if (budget <= 1) return Term::hole();
    std::size_t choices = value_only ? 4 : 8;
    switch (below(rng_, choices)) {
    case 0: {
      std::size_t a = budget / 2;
      bool left = coin(rng_, 0.5);
      hole.push_back(left ? 0 : 1);
      Term c = ctx(a, hole), o = term(budget - a);
      return left ? Term::pair(c, o) : Term::pair(o, c);
    }
    case 1: hole.push_back(0); return Term::lam(any(), ctx(budget - 1, hole));
    case 2: hole.push_back(0); return Term::bang(ctx(budget - 1, hole));
    case 3: return value_only ? Term::hole() : (hole.push_back(0), Term::der(exp(), any(), ctx(budget - 2, hole)));
    case 4: hole.push_back(0); return Term::par(mul(), any(), any(), ctx(budget - 2, hole));
    case 5: {
      bool slot = coin(rng_, 0.3);
      hole.push_back(slot ? 0 : 1);
      if (slot) return Term::cut(ctx(budget / 3, hole, true), any(), term(budget - budget / 3));
      return Term::cut(value(budget / 3), any(), ctx(budget - budget / 3, hole));
    }
    default: {
      bool slot = coin(rng_, 0.3);
      hole.push_back(slot ? 0 : 1);
      if (slot) return Term::sub(mul(), ctx(budget / 3, hole, true), any(), term(budget - budget / 3));
      return Term::sub(mul(), value(budget / 3), any(), ctx(budget - budget / 3, hole));
    }
    }
  }

private:
  Rng rng_;

  Var mul() {
    static const char* n[] = {"m", "n", "o"};
    return Var{n[below(rng_, 3)], VarKind::Multiplicative};
  }
  Var exp() {
    static const char* n[] = {"e", "f"};
    return Var{n[below(rng_, 2)], VarKind::Exponential};
  }
  Var any() { return coin(rng_, 0.6) ? mul() : exp(); }

  Term value(std::size_t budget) {
    Term t = term(budget);
    return t.is_value() ? t : Term::bang(t);
  }

  Term term(std::size_t budget) {
    if (budget <= 1) return Term::var(any());
    switch (below(rng_, 6)) {
    case 0: return Term::pair(term(budget / 2), term(budget - budget / 2));
    case 1: return Term::lam(any(), term(budget - 1));
    case 2: return Term::bang(term(budget - 1));
    case 3: return Term::der(exp(), any(), term(budget - 2));
    case 4: return Term::par(mul(), any(), any(), term(budget - 2));
    default: return Term::cut(value(budget / 3), any(), term(budget - budget / 3));
    }
  }
};

} // namespace

TypedTerm gen_typed(std::uint64_t seed, std::size_t budget) {
  if (budget < 1) throw Error("gen_typed: budget must be at least 1");
  // Rare derivations fail the final check (capture through shared names);
  // those are redrawn from a derived seed.
  std::string err;
  for (std::uint64_t k = 0; k < 64; ++k) {
    TypedTerm t = TypedGen(seed * 64 + k).run(budget);
    auto a = try_synth(t.ctx, t.term, &err);
    if (a && *a == t.type && is_proper(t.term)) return t;
  }
  throw Error("gen_typed: no typable term for seed " + std::to_string(seed) + ": " + err);
}

Term gen_untyped_proper(std::uint64_t seed, std::size_t budget) {
  std::string why;
  for (std::uint64_t k = 0; k < 64; ++k) {
    Term t = UntypedGen(seed * 64 + k).gen(std::max<std::size_t>(1, budget));
    auto p = check_proper(t);
    if (p.ok) return t;
    why = p.violation + ": " + print(t);
  }
  throw Error("gen_untyped_proper: no proper term for seed " + std::to_string(seed) + " (" + why + ")");
}

namespace {

const Term& term_of(const Term& t) { return t; }
const Term& term_of(const TypedTerm& t) { return t.term; }

std::size_t budget_for(std::uint64_t k, std::size_t max_size) {
  std::size_t lo = std::max<std::size_t>(2, max_size / 3);
  if (max_size <= lo) return std::max<std::size_t>(1, max_size);
  return lo + k % (max_size - lo + 1);
}

template <class T, class Gen>
std::vector<T> sample(std::uint64_t seed, std::size_t count, std::size_t max_size, Gen gen) {
  std::vector<T> out;
  for (std::uint64_t k = 0; out.size() < count; ++k) {
    if (k > 1000 * (count + 10)) throw Error("sampling: generator produces no terms of size <= " + std::to_string(max_size));
    T t = gen(seed + k, budget_for(k, max_size));
    if (size(term_of(t)) <= max_size) out.push_back(std::move(t));
  }
  return out;
}

} // namespace

std::vector<TypedTerm> sample_typed(std::uint64_t seed, std::size_t count, std::size_t max_size) {
  return sample<TypedTerm>(seed, count, max_size, gen_typed);
}

std::vector<Term> sample_untyped(std::uint64_t seed, std::size_t count, std::size_t max_size) {
  return sample<Term>(seed, count, max_size, gen_untyped_proper);
}

TypedTerm gen_spindle(std::size_t n) {
  if (n == 0) throw Error("gen_spindle: n must be at least 1");
  auto b = [](std::size_t k) {
    Var e{"e" + std::to_string(k), VarKind::Exponential};
    Var m{"m", VarKind::Multiplicative}, nn{"n", VarKind::Multiplicative};
    return Term::bang(Term::der(e, m, Term::der(e, nn, Term::pair(Term::var(m), Term::var(nn)))));
  };
  Term rho = b(1);
  Formula a = Formula::atom("X");
  Formula ty = Formula::tensor(a, a);
  for (std::size_t k = 2; k <= n; ++k) {
    Split s = split(rho);
    rho = replug(s.spine, Term::cut(s.head, Var{"e" + std::to_string(k), VarKind::Exponential}, b(k)));
    ty = Formula::tensor(ty, ty);
  }
  TypingContext ctx;
  ctx.emplace(Var{"e1", VarKind::Exponential}, Formula::bang(a));
  return TypedTerm{ctx, rho, Formula::bang(ty)};
}

Term gen_omega() {
  return parse_term("cut{\\e. der{e > m} sub{m; e > n} n > o} sub{o; !\\e. der{e > m} sub{m; e > n} n > o'} o'");
}

Term glitch_term() {
  return parse_term("cut{\\g. der{g > o} o > m} der{e > z} cut{m > n} par{n > x, y} ((x, y), z)");
}

std::size_t for_each_context(std::size_t max_size, const std::function<void(const Context&)>& visit) {
  ContextEnum en;
  std::size_t count = 0;
  for (std::size_t n = 1; n <= max_size; ++n)
    en.contexts(n, false, [&](const Term& root, const Path& hole) {
      ++count;
      visit(Context{root, hole});
    });
  return count;
}

Context gen_context(std::uint64_t seed, std::size_t budget) {
  RandomContext g(seed);
  Path hole;
  Term root = g.ctx(std::max<std::size_t>(1, budget), hole);
  return Context{root, hole};
}

} // namespace esc
