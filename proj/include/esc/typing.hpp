#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "esc/formula.hpp"
#include "esc/term.hpp"

namespace esc {

using TypingContext = std::map<Var, Formula>;

class TypeError : public Error {
public:
  enum class Kind { Unbound, Mismatch, Linearity, Promotion, Clash, Annotation };

  TypeError(Kind kind, std::string message, Path where);

  Kind kind() const { return kind_; }
  const Path& where() const { return where_; }

private:
  Kind kind_;
  Path where_;
};

const char* type_error_kind_name(TypeError::Kind k);

/// Type synthesis. Multiplicative context variables must be used exactly once,
/// exponential ones any number of times; lambda binders must be annotated.
/// Throws TypeError.
Formula synth(const TypingContext& ctx, const Term& t);

/// Non-throwing variant.
std::optional<Formula> try_synth(const TypingContext& ctx, const Term& t, std::string* error = nullptr);

/// Checks the kind discipline of a context: exponential variables carry bang
/// formulas, multiplicative ones do not.
void check_typing_context(const TypingContext& ctx);

/// Positions of the cuts that are clashes.
std::vector<Path> find_clashes(const Term& t);

struct ClashVerdict {
  bool found = false;
  Path where;                 // in the last term of the witness
  std::vector<Term> witness;  // t, then the reducts leading to the clash
  std::size_t depth = 0;
};

/// Explores all micro-step reducts of `t` up to `depth` steps looking for a
/// clash.
ClashVerdict is_clash_free_bounded(const Term& t, std::size_t depth);

} // namespace esc
