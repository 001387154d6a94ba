#pragma once

#include "esc/term.hpp"

namespace esc {

/// Meta-level exponential substitution `{v/e}t`. Promotions substituted for
/// a dereliction on `e` are opened: the copy of the box body is split and its
/// value cut on the dereliction binder. Capture-avoiding; every copy of `v`
/// gets fresh bound names.
///
/// Throws KindError unless `e` is exponential and `v` an exponential value.
Term subst_exp(const Term& t, const Var& e, const Term& v);

/// Same, drawing fresh names from `names`.
Term subst_exp(const Term& t, const Var& e, const Term& v, NameSupply& names);

} // namespace esc
