#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "esc/context.hpp"
#include "esc/formula.hpp"
#include "esc/term.hpp"
#include "esc/typing.hpp"

namespace esc {

/// Surface syntax, e.g. `cut{\e. der{e > m} m > n} sub{n; !f > o} o`.
/// Throws ParseError.
Term parse_term(std::string_view text);

/// A term with exactly one hole, written `<>` (or `⟨⟩`).
Context parse_context(std::string_view text);

Formula parse_formula(std::string_view text);

/// `e:!X, m:X * X`; the empty string is the empty context.
TypingContext parse_typing_context(std::string_view text);

struct Judgement {
  std::optional<TypingContext> ctx;
  Term term;
};

/// `ctx ⊢ term` (or `|-`), or a bare term.
Judgement parse_judgement(std::string_view text);

/// Term file: `#` lines are comments, except a `# ctx: ...` header that
/// gives the typing context. The remaining lines form the term.
Judgement parse_term_file(std::string_view text);

std::string print_typing_context(const TypingContext& ctx);
std::string print_context(const Context& c);

} // namespace esc
