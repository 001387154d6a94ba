#include "esc/substitution.hpp"

#include <algorithm>

namespace esc {

namespace {

struct Subst {
  const Var& e;
  const Term& v;
  VarSet fv_v;
  NameSupply& ns;

  Term go(const Term& t) {
    switch (t.tag()) {
    case Term::Tag::Var: return t.occ() == e ? freshen(v, ns) : t;
    case Term::Tag::Hole: return t;
    case Term::Tag::Der:
      if (t.occ() == e) return open(t);
      break;
    default: break;
    }
    return descend(t);
  }

  // Recurses into the children, renaming binders that would capture fv(v).
  Term descend(const Term& t) {
    Term r = t;
    Var nb = t.binder(), nb2 = t.binder2();
    for (int i = 0; i < t.arity(); ++i) {
      auto bs = binders_in_child(t, i);
      if (std::find(bs.begin(), bs.end(), e) != bs.end()) continue;
      Term c = t.child(i);
      for (auto& b : bs) {
        if (!fv_v.count(b) || !is_free_in(e, c)) continue;
        Var z = ns.fresh(b);
        c = rename_free(c, b, z, ns);
        if (t.binder() == b) nb = z;
        if (t.tag() == Term::Tag::Par && t.binder2() == b) nb2 = z;
      }
      r = r.with_child(i, go(c));
    }
    if (nb != t.binder() || nb2 != t.binder2()) r = r.with_binders(nb, nb2);
    return r;
  }

  // {v/e}(der{e>x}s).
  Term open(const Term& d) {
    Term body = d.body();
    Var x = d.binder();
    if (x == e) body = Term();  // e is shadowed in the body
    if (fv_v.count(x) && body && is_free_in(e, body)) {
      Var z = ns.fresh(x);
      body = rename_free(body, x, z, ns);
      x = z;
    }
    Term nbody = body ? go(body) : d.body();
    if (v.tag() == Term::Tag::Var) return Term::der(v.occ(), x, nbody);
    Split s = split(freshen(v.body(), ns));
    return replug(s.spine, Term::cut(s.head, x, nbody));
  }
};

} // namespace

Term subst_exp(const Term& t, const Var& e, const Term& v, NameSupply& names) {
  if (!e.is_exp()) throw KindError("substituted variable must be exponential: " + e.name);
  if (!v.is_exp_value()) throw KindError("substituted term must be an exponential value: " + print(v));
  names.observe(v);
  names.observe(t);
  Subst s{e, v, fv(v), names};
  return s.go(t);
}

Term subst_exp(const Term& t, const Var& e, const Term& v) {
  NameSupply ns;
  return subst_exp(t, e, v, ns);
}

} // namespace esc
