#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "esc/term.hpp"

namespace esc {

/// One-hole context, stored as a term containing a single Hole plus the path
/// to it.
struct Context {
  Term root;
  Path hole;
};

/// Builds a context from a term that contains exactly one Hole.
/// Throws Error otherwise.
Context make_context(const Term& root_with_hole);

inline Context empty_context() { return Context{Term::hole(), {}}; }

/// `C⟨t⟩`. May capture. When the hole is directly in a cut or subtraction
/// value slot and `t = L⟨v⟩` is not a value, `L` is hoisted above that node.
Term plug(const Context& c, const Term& t);

/// `C⟨⟨t⟩⟩`: like `plug`, but binders of `C` that would capture free
/// variables of `t` are renamed first.
Term plug_avoid(const Context& c, const Term& t);

/// Splits `t` at `p` into a context and the addressed sub-term.
std::pair<Context, Term> ctx_at(const Term& t, const Path& p);

/// Dominating free variables.
VarSet dfv(const Context& c);
/// dfv of the context obtained by cutting `t` at `p`.
VarSet dfv_at(const Term& t, const Path& p);

enum class Goodness { Good, Bad };

Goodness classify(const Context& c);
Goodness classify_at(const Term& t, const Path& p);

/// Visits every position of `t` in preorder with its goodness.
void for_each_position(const Term& t,
                       const std::function<void(const Path&, const Term&, Goodness)>& visit);

/// Prefix order on positions.
bool outer_leq(const Path& p, const Path& q);
bool disjoint(const Path& p, const Path& q);

bool is_mul_context(const Context& c);
bool is_left_context(const Context& c);
bool is_value_context(const Context& c);

/// Mul. context test on a position of a term: no promotion on the way.
bool is_mul_position(const Term& t, const Path& p);

} // namespace esc
