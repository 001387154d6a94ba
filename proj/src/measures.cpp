#include "esc/measures.hpp"

#include <map>
#include <unordered_map>
#include <utility>

namespace esc {

namespace {

Measure add(Measure a, Measure b) {
  Measure r;
  if (__builtin_add_overflow(a, b, &r)) throw MeasureOverflow("measure exceeds 64 bits");
  return r;
}

Measure mul(Measure a, Measure b) {
  Measure r;
  if (__builtin_mul_overflow(a, b, &r)) throw MeasureOverflow("measure exceeds 64 bits");
  return r;
}

// Potentials of all free variables of a node, computed bottom-up once per
// shared node. The cut clause needs both the cut variable's and the target's
// potential in the same body, which makes per-variable recursion quadratic.
using PotMap = std::map<Var, Measure>;

class Calc {
public:
  Measure pot(const Term& t, const Var& x) {
    const PotMap& m = pots(t);
    auto it = m.find(x);
    return it == m.end() ? 0 : it->second;
  }

  Measure meas(const Term& t) {
    if (auto it = meas_.find(t.id()); it != meas_.end()) return it->second;
    Measure r = 0;
    switch (t.tag()) {
    case Term::Tag::Var: r = 1; break;
    case Term::Tag::Hole: r = 0; break;
    case Term::Tag::Pair: r = add(meas(t.left()), meas(t.right())); break;
    case Term::Tag::Lam:
    case Term::Tag::Bang: r = meas(t.body()); break;
    case Term::Tag::Par:
    case Term::Tag::Der: r = add(meas(t.body()), 1); break;
    case Term::Tag::Sub: r = add(add(meas(t.value()), meas(t.body())), 1); break;
    case Term::Tag::Cut: r = add(mul(meas(t.value()), add(pot(t.body(), t.binder()), 1)), meas(t.body())); break;
    }
    meas_.emplace(t.id(), r);
    return r;
  }

private:
  std::unordered_map<const void*, PotMap> pots_;
  std::unordered_map<const void*, Measure> meas_;

  static Measure get(const PotMap& m, const Var& x) {
    auto it = m.find(x);
    return it == m.end() ? 0 : it->second;
  }

  static void add_into(PotMap& into, const PotMap& from, Measure k = 1) {
    for (auto& [x, p] : from)
      if (p) into[x] = add(get(into, x), mul(k, p));
  }

  const PotMap& pots(const Term& t) {
    if (auto it = pots_.find(t.id()); it != pots_.end()) return it->second;
    PotMap r = compute(t);
    return pots_.emplace(t.id(), std::move(r)).first->second;
  }

  // Potentials of child `i` without the variables `t` binds there.
  PotMap child(const Term& t, int i) {
    PotMap m = pots(t.child(i));
    for (auto& b : binders_in_child(t, i)) m.erase(b);
    return m;
  }

  PotMap compute(const Term& t) {
    switch (t.tag()) {
    case Term::Tag::Var: return PotMap{{t.occ(), 1}};
    case Term::Tag::Hole: return {};
    case Term::Tag::Pair: {
      PotMap m = pots(t.left());
      add_into(m, pots(t.right()));
      return m;
    }
    case Term::Tag::Bang:
    case Term::Tag::Lam: return child(t, 0);
    case Term::Tag::Par: {
      PotMap m = child(t, 0);
      m[t.occ()] = add(1, add(pot(t.body(), t.binder()), pot(t.body(), t.binder2())));
      return m;
    }
    case Term::Tag::Sub: {
      PotMap m = child(t, 1);
      add_into(m, pots(t.value()));
      m[t.occ()] = 1;
      return m;
    }
    case Term::Tag::Der: {
      PotMap m = child(t, 0);
      m[t.occ()] = add(1, add(get(m, t.occ()), pot(t.body(), t.binder())));
      return m;
    }
    case Term::Tag::Cut: {
      PotMap m = child(t, 1);
      add_into(m, pots(t.value()), add(pot(t.body(), t.binder()), 1));
      return m;
    }
    }
    return {};
  }
};

} // namespace

Measure potential(const Term& t, const Var& x) { return Calc().pot(t, x); }

Measure potential_ctx(const Context& c) {
  NameSupply ns(c.root);
  Var h = ns.fresh(Var{"e_hole", VarKind::Exponential});
  return Calc().pot(replace_at(c.root, c.hole, Term::var(h)), h);
}

Measure measure(const Term& t) { return Calc().meas(t); }
Measure measure(const Context& c) { return Calc().meas(c.root); }

} // namespace esc
