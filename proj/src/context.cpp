#include "esc/context.hpp"

#include <algorithm>

namespace esc {

namespace {

bool find_holes(const Term& t, Path& cur, std::vector<Path>& found) {
  if (t.tag() == Term::Tag::Hole) found.push_back(cur);
  for (int i = 0; i < t.arity(); ++i) {
    cur.push_back(i);
    find_holes(t.child(i), cur, found);
    cur.pop_back();
  }
  return found.size() == 1;
}

bool value_slot(const Term& parent, int i) {
  return i == 0 && (parent.tag() == Term::Tag::Cut || parent.tag() == Term::Tag::Sub);
}

Term plug_rec(const Term& node, const Path& p, std::size_t k, const Term& t) {
  if (k == p.size()) return t;
  int i = p[k];
  if (k + 1 == p.size() && value_slot(node, i) && !t.is_value()) {
    Split s = split(t);
    return replug(s.spine, node.with_child(0, s.head));
  }
  return node.with_child(i, plug_rec(node.child(i), p, k + 1, t));
}

} // namespace

Context make_context(const Term& root) {
  Path cur;
  std::vector<Path> found;
  if (!find_holes(root, cur, found))
    throw Error("a context needs exactly one hole, found " + std::to_string(found.size()));
  return Context{root, found.front()};
}

Term plug(const Context& c, const Term& t) { return plug_rec(c.root, c.hole, 0, t); }

Term plug_avoid(const Context& c, const Term& t) {
  NameSupply ns(c.root);
  ns.observe(t);
  VarSet avoid = fv(t);
  if (c.hole.empty()) return t;
  Path parent(c.hole.begin(), c.hole.end() - 1);
  const Term& pn = subterm_at(c.root, parent);
  if (value_slot(pn, c.hole.back()) && !t.is_value()) {
    // The hoisted spine now scopes over the rest of the cut/sub, so its
    // binders are renamed apart as well.
    Split s = split(freshen(t, ns));
    return replace_avoiding(c.root, parent, avoid, ns,
                            [&](const Term& old) { return replug(s.spine, old.with_child(0, s.head)); });
  }
  return replace_avoiding(c.root, c.hole, avoid, ns, [&](const Term&) { return t; });
}

std::pair<Context, Term> ctx_at(const Term& t, const Path& p) {
  Term sub = subterm_at(t, p);
  return {Context{replace_at(t, p, Term::hole()), p}, sub};
}

namespace {

// dfv of the context made of the single layer `n` (entered at child `i`)
// around a context with dfv `s`.
VarSet dfv_layer(const Term& n, int i, VarSet s) {
  switch (n.tag()) {
  case Term::Tag::Pair:
  case Term::Tag::Bang: return s;
  case Term::Tag::Lam: s.erase(n.binder()); return s;
  case Term::Tag::Cut:
    if (i == 1) s.erase(n.binder());
    return s;
  case Term::Tag::Par:
    if (s.count(n.binder()) || s.count(n.binder2())) {
      s.erase(n.binder());
      s.erase(n.binder2());
      s.insert(n.occ());
    }
    return s;
  case Term::Tag::Sub:
    if (i == 0) {
      s.insert(n.occ());
      return s;
    }
    if (s.count(n.binder())) {
      s.erase(n.binder());
      s.insert(n.occ());
    }
    return s;
  case Term::Tag::Der:
    if (s.count(n.binder())) {
      s.erase(n.binder());
      s.insert(n.occ());
    }
    return s;
  default: return s;
  }
}

std::vector<const Term*> nodes_on(const Term& t, const Path& p) {
  std::vector<const Term*> out;
  const Term* cur = &t;
  for (int i : p) {
    if (i < 0 || i >= cur->arity()) throw InvalidPath("invalid path " + path_str(p));
    out.push_back(cur);
    cur = &cur->child(i);
  }
  return out;
}

} // namespace

VarSet dfv_at(const Term& t, const Path& p) {
  auto nodes = nodes_on(t, p);
  VarSet s;
  for (std::size_t k = nodes.size(); k-- > 0;) s = dfv_layer(*nodes[k], p[k], std::move(s));
  return s;
}

VarSet dfv(const Context& c) { return dfv_at(c.root, c.hole); }

Goodness classify_at(const Term& t, const Path& p) {
  auto nodes = nodes_on(t, p);
  VarSet s;
  for (std::size_t k = nodes.size(); k-- > 0;) {
    const Term& n = *nodes[k];
    if (n.tag() == Term::Tag::Cut) {
      if (p[k] == 0) return Goodness::Bad;
      if (s.count(n.binder())) return Goodness::Bad;
    }
    s = dfv_layer(n, p[k], std::move(s));
  }
  return Goodness::Good;
}

Goodness classify(const Context& c) { return classify_at(c.root, c.hole); }

namespace {

// Top-down labelling. `watched` holds the variables whose domination of the
// remaining context would put the position under a cut on them.
void label(const Term& t, Path& p, const VarSet& watched, bool bad,
           const std::function<void(const Path&, const Term&, Goodness)>& visit) {
  visit(p, t, bad ? Goodness::Bad : Goodness::Good);
  for (int i = 0; i < t.arity(); ++i) {
    bool cbad = bad;
    VarSet w = watched;
    switch (t.tag()) {
    case Term::Tag::Lam: w.erase(t.binder()); break;
    case Term::Tag::Cut:
      if (i == 0) cbad = true;
      else w.insert(t.binder());
      break;
    case Term::Tag::Par: {
      bool hot = w.count(t.occ()) > 0;
      w.erase(t.binder());
      w.erase(t.binder2());
      if (hot) {
        w.insert(t.binder());
        w.insert(t.binder2());
      }
      break;
    }
    case Term::Tag::Sub:
      if (i == 0) {
        if (w.count(t.occ())) cbad = true;
      } else {
        bool hot = w.count(t.occ()) > 0;
        w.erase(t.binder());
        if (hot) w.insert(t.binder());
      }
      break;
    case Term::Tag::Der: {
      bool hot = w.count(t.occ()) > 0;
      w.erase(t.binder());
      if (hot) w.insert(t.binder());
      break;
    }
    default: break;
    }
    p.push_back(i);
    label(t.child(i), p, w, cbad, visit);
    p.pop_back();
  }
}

} // namespace

void for_each_position(const Term& t,
                       const std::function<void(const Path&, const Term&, Goodness)>& visit) {
  Path p;
  label(t, p, {}, false, visit);
}

bool outer_leq(const Path& p, const Path& q) {
  return p.size() <= q.size() && std::equal(p.begin(), p.end(), q.begin());
}

bool disjoint(const Path& p, const Path& q) { return !outer_leq(p, q) && !outer_leq(q, p); }

bool is_mul_position(const Term& t, const Path& p) {
  for (const Term* n : nodes_on(t, p))
    if (n->tag() == Term::Tag::Bang) return false;
  return true;
}

bool is_mul_context(const Context& c) { return is_mul_position(c.root, c.hole); }

bool is_left_context(const Context& c) {
  auto nodes = nodes_on(c.root, c.hole);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Term& n = *nodes[k];
    if (!n.is_left()) return false;
    int body = (n.tag() == Term::Tag::Cut || n.tag() == Term::Tag::Sub) ? 1 : 0;
    if (c.hole[k] != body) return false;
  }
  return true;
}

bool is_value_context(const Context& c) {
  if (c.hole.empty()) return true;
  return c.root.is_value();
}

} // namespace esc
