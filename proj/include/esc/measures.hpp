#pragma once

#include <cstdint>

#include "esc/context.hpp"
#include "esc/term.hpp"

namespace esc {

using Measure = std::uint64_t;

/// Potential of `x` in `t`. Throws MeasureOverflow past 64 bits.
Measure potential(const Term& t, const Var& x);

/// Potential of the hole, seen as a fresh exponential variable.
Measure potential_ctx(const Context& c);

/// Termination measure; holes count 0. Throws MeasureOverflow past 64 bits.
Measure measure(const Term& t);
Measure measure(const Context& c);

} // namespace esc
