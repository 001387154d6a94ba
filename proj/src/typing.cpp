#include "esc/typing.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "esc/rewriting.hpp"

namespace esc {

TypeError::TypeError(Kind kind, std::string message, Path where)
    : Error(std::string(type_error_kind_name(kind)) + " error at [" + path_str(where) + "]: " + message),
      kind_(kind), where_(std::move(where)) {}

const char* type_error_kind_name(TypeError::Kind k) {
  switch (k) {
  case TypeError::Kind::Unbound: return "unbound variable";
  case TypeError::Kind::Mismatch: return "formula mismatch";
  case TypeError::Kind::Linearity: return "linearity";
  case TypeError::Kind::Promotion: return "promotion";
  case TypeError::Kind::Clash: return "clash";
  case TypeError::Kind::Annotation: return "missing annotation";
  }
  return "type";
}

void check_typing_context(const TypingContext& ctx) {
  for (auto& [x, f] : ctx)
    if (x.is_exp() != f.is_bang())
      throw TypeError(TypeError::Kind::Mismatch,
                      x.name + (x.is_exp() ? " is exponential but typed " : " is multiplicative but typed ") + f.str(),
                      {});
}

namespace {

using K = TypeError::Kind;

struct Result {
  Formula type;
  VarSet used;  // multiplicative variables consumed
};

class Checker {
public:
  explicit Checker(const TypingContext& ctx) {
    for (auto& [x, f] : ctx) env_[x].push_back(f);
  }

  Result go(const Term& t) {
    switch (t.tag()) {
    case Term::Tag::Hole: fail(K::Mismatch, "a context is not typable");
    case Term::Tag::Var: {
      Formula f = lookup(t.occ());
      if (t.occ().is_mul()) return {f, {t.occ()}};
      return {f, {}};
    }
    case Term::Tag::Pair: {
      Result l = kid(t, 0), r = kid(t, 1);
      for (auto& x : l.used)
        if (r.used.count(x)) fail(K::Linearity, x.name + " is used in both components of a pair");
      l.used.insert(r.used.begin(), r.used.end());
      return {Formula::tensor(l.type, r.type), l.used};
    }
    case Term::Tag::Lam: {
      if (!t.annot()) fail(K::Annotation, "abstraction on " + t.binder().name + " needs a formula annotation");
      const Formula& a = *t.annot();
      check_binder_kind(t.binder(), a);
      Result b = scoped(t, 0, {{t.binder(), a}});
      consume_binder(b, t.binder());
      return {Formula::lolli(a, b.type), b.used};
    }
    case Term::Tag::Bang: {
      Result b = kid(t, 0);
      if (!b.used.empty()) fail(K::Promotion, "promotion over multiplicative variable " + b.used.begin()->name);
      return {Formula::bang(b.type), {}};
    }
    case Term::Tag::Par: {
      Formula f = lookup(t.occ());
      if (f.tag() != Formula::Tag::Tensor) fail(K::Mismatch, t.occ().name + " has type " + f.str() + ", not a tensor");
      check_binder_kind(t.binder(), f.left());
      check_binder_kind(t.binder2(), f.right());
      if (t.binder() == t.binder2()) fail(K::Linearity, "par binds " + t.binder().name + " twice");
      Result b = scoped(t, 0, {{t.binder(), f.left()}, {t.binder2(), f.right()}});
      consume_binder(b, t.binder());
      consume_binder(b, t.binder2());
      use(b.used, t.occ());
      return b;
    }
    case Term::Tag::Sub: {
      Formula f = lookup(t.occ());
      if (f.tag() != Formula::Tag::Lolli)
        fail(K::Mismatch, t.occ().name + " has type " + f.str() + ", not an implication");
      Result v = kid(t, 0);
      if (v.type != f.left())
        fail(K::Mismatch, "argument has type " + v.type.str() + ", expected " + f.left().str());
      check_binder_kind(t.binder(), f.right());
      Result b = scoped(t, 1, {{t.binder(), f.right()}});
      consume_binder(b, t.binder());
      for (auto& x : v.used) use(b.used, x);
      use(b.used, t.occ());
      return b;
    }
    case Term::Tag::Der: {
      Formula f = lookup(t.occ());
      if (!f.is_bang()) fail(K::Mismatch, t.occ().name + " has type " + f.str() + ", not a bang");
      check_binder_kind(t.binder(), f.body());
      Result b = scoped(t, 0, {{t.binder(), f.body()}});
      consume_binder(b, t.binder());
      return b;
    }
    case Term::Tag::Cut: {
      Result v = kid(t, 0);
      if (t.binder().is_exp() != v.type.is_bang())
        fail(K::Clash, "cut of a value of type " + v.type.str() + " on " +
                           (t.binder().is_exp() ? "exponential " : "multiplicative ") + "variable " +
                           t.binder().name);
      Result b = scoped(t, 1, {{t.binder(), v.type}});
      consume_binder(b, t.binder());
      for (auto& x : v.used) use(b.used, x);
      return b;
    }
    }
    fail(K::Mismatch, "unknown constructor");
  }

  Path path;

private:
  std::map<Var, std::vector<Formula>> env_;

  [[noreturn]] void fail(K k, const std::string& msg) { throw TypeError(k, msg, path); }

  Formula lookup(const Var& x) {
    auto it = env_.find(x);
    if (it == env_.end() || it->second.empty()) fail(K::Unbound, x.name + " is not in the context");
    return it->second.back();
  }

  void check_binder_kind(const Var& x, const Formula& a) {
    if (x.is_exp() != a.is_bang())
      fail(K::Mismatch, (x.is_exp() ? "exponential " : "multiplicative ") + std::string("variable ") + x.name +
                            " cannot have type " + a.str());
  }

  void use(VarSet& used, const Var& x) {
    if (!x.is_mul()) return;
    if (!used.insert(x).second) fail(K::Linearity, x.name + " is used more than once");
  }

  void consume_binder(Result& r, const Var& x) {
    if (!x.is_mul()) return;
    if (!r.used.erase(x)) fail(K::Linearity, x.name + " is bound but never used");
  }

  Result kid(const Term& t, int i) {
    path.push_back(i);
    Result r = go(t.child(i));
    path.pop_back();
    return r;
  }

  Result scoped(const Term& t, int i, std::initializer_list<std::pair<Var, Formula>> binds) {
    for (auto& [x, f] : binds) env_[x].push_back(f);
    // Shadowed multiplicative uses belong to the inner binder only; they are
    // removed by consume_binder.
    Result r = kid(t, i);
    for (auto& [x, f] : binds) env_[x].pop_back();
    return r;
  }
};

} // namespace

Formula synth(const TypingContext& ctx, const Term& t) {
  check_typing_context(ctx);
  auto clashes = find_clashes(t);
  if (!clashes.empty()) throw TypeError(K::Clash, "clashing cut", clashes.front());
  Checker c(ctx);
  Result r = c.go(t);
  for (auto& [x, f] : ctx)
    if (x.is_mul() && !r.used.count(x)) throw TypeError(K::Linearity, x.name + " is never used", {});
  return r.type;
}

std::optional<Formula> try_synth(const TypingContext& ctx, const Term& t, std::string* error) {
  try {
    return synth(ctx, t);
  } catch (const TypeError& e) {
    if (error) *error = e.what();
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Clashes

namespace {

bool occurs_as(const Term& t, const Var& x, Term::Tag tag, bool bang) {
  if (!bang && t.tag() == tag && t.occ() == x) return true;
  for (int i = 0; i < t.arity(); ++i) {
    auto bs = binders_in_child(t, i);
    if (std::find(bs.begin(), bs.end(), x) != bs.end()) continue;
    if (occurs_as(t.child(i), x, tag, bang || t.tag() == Term::Tag::Bang)) return true;
  }
  return false;
}

bool is_clash(const Term& c) {
  const Term& v = c.value();
  const Var& x = c.binder();
  if (x.is_exp()) return v.is_mul_value();
  if (v.is_exp_value()) return true;
  if (v.tag() == Term::Tag::Pair) return occurs_as(c.body(), x, Term::Tag::Sub, false);
  if (v.tag() == Term::Tag::Lam) return occurs_as(c.body(), x, Term::Tag::Par, false);
  return false;
}

void clashes_rec(const Term& t, Path& p, std::vector<Path>& out) {
  if (t.tag() == Term::Tag::Cut && is_clash(t)) out.push_back(p);
  for (int i = 0; i < t.arity(); ++i) {
    p.push_back(i);
    clashes_rec(t.child(i), p, out);
    p.pop_back();
  }
}

} // namespace

std::vector<Path> find_clashes(const Term& t) {
  std::vector<Path> out;
  Path p;
  clashes_rec(t, p, out);
  return out;
}

ClashVerdict is_clash_free_bounded(const Term& t, std::size_t depth) {
  struct Node {
    Term term;
    std::size_t parent;
    std::size_t depth;
  };
  std::vector<Node> nodes{{t, 0, 0}};
  std::unordered_map<std::string, std::size_t> seen{{canonical_key(t), 0}};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto cl = find_clashes(nodes[i].term);
    if (!cl.empty()) {
      ClashVerdict v;
      v.found = true;
      v.where = cl.front();
      v.depth = nodes[i].depth;
      for (std::size_t k = i;; k = nodes[k].parent) {
        v.witness.push_back(nodes[k].term);
        if (k == 0) break;
      }
      std::reverse(v.witness.begin(), v.witness.end());
      return v;
    }
    if (nodes[i].depth == depth) continue;
    Term cur = nodes[i].term;
    std::size_t d = nodes[i].depth;
    for (auto& r : redexes(cur, Mode::Micro)) {
      Term n = apply(cur, r);
      if (seen.emplace(canonical_key(n), nodes.size()).second) nodes.push_back({n, i, d + 1});
    }
  }
  ClashVerdict v;
  v.depth = depth;
  return v;
}

} // namespace esc
