#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "esc/context.hpp"
#include "esc/rewriting.hpp"
#include "esc/typing.hpp"

namespace esc {

// ---------------------------------------------------------------------------
// Reduction graphs

struct Bounds {
  std::size_t max_nodes = 50000;
  std::size_t max_depth = 200;
};

struct Edge {
  std::size_t from;
  Redex redex;
  std::size_t to;
};

/// Nodes are alpha classes; node 0 is the root.
struct ReductionGraph {
  std::vector<Term> nodes;
  std::vector<std::size_t> depth;
  /// False for nodes left unexplored because a bound was hit.
  std::vector<bool> expanded;
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> out;  // edge indices per node
  Bounds bounds;
  bool truncated = false;

  std::size_t size() const { return nodes.size(); }
  /// Nodes without outgoing edges that were fully explored.
  std::vector<std::size_t> sinks() const;
};

using StepFn = std::function<std::vector<Redex>(const Term&)>;

ReductionGraph build_graph(const Term& t, Mode mode, Bounds bounds = {});
/// Graph of good micro steps.
ReductionGraph build_good_graph(const Term& t, Bounds bounds = {});
ReductionGraph build_graph_with(const Term& t, const StepFn& steps, Bounds bounds);

struct SnResult {
  enum class Kind { SN, Cycle, Truncated } kind = Kind::SN;
  /// Longest path from the root, for SN.
  std::size_t longest = 0;
  /// Shortest path from the root to a node, when applicable.
  std::size_t shortest = 0;
  /// A cycle, as the terms along it.
  std::vector<Term> cycle;
};

const char* sn_kind_name(SnResult::Kind k);

SnResult check_sn(const Term& t, Mode mode, Bounds bounds = {});
SnResult analyse_graph(const ReductionGraph& g);

// ---------------------------------------------------------------------------
// Property checks

struct Report {
  std::string check;
  bool ok = true;
  /// Set when bounds prevented a conclusive answer; `ok` is then true.
  bool inconclusive = false;
  /// Number of instances examined (peaks, steps, cuts, ...).
  std::size_t cases = 0;
  std::string detail;
};

Report check_confluence(const Term& t, Mode mode, Bounds bounds = {});
Report check_psn(const Term& t, Bounds bounds = {});
/// Every exponential cut: the small-step reduct equals the result of the
/// engine's micro steps on that cut.
Report check_full_composition(const Term& t);
/// Every micro step and every small exponential step keeps the formula.
Report check_subject_reduction(const TypingContext& ctx, const Term& t);
/// Every step of `t` is matched by a same-kind step of `s` with
/// cut-equivalent results, and conversely.
Report check_cuteq_bisim(const Term& t, const Term& s);
/// All cut moves of `t`, each checked with check_cuteq_bisim.
Report check_cuteq_bisim(const Term& t);
/// Good peaks with distinct reducts close in one good step on each side.
Report check_diamond(const Term& t);
/// All maximal good paths from `t` have the same length.
Report check_random_descent(const Term& t, Bounds bounds = {});
/// A term without clashes that is not micro-normal has a good redex.
Report check_fullness(const Term& t);
/// Every non-lolli micro step strictly decreases the measure.
Report check_measure_decrease(const Term& t);
/// Non-lolli micro reduction is SN and its longest path is at most the measure.
Report check_local_termination(const Term& t, Bounds bounds = {});

// ---------------------------------------------------------------------------
// Generators

struct TypedTerm {
  TypingContext ctx;
  Term term;
  Formula type;
};

/// Random typing derivation built top-down, rendered as a proper, annotated,
/// typable term. Deterministic per seed. Throws Error if `budget` < 1.
TypedTerm gen_typed(std::uint64_t seed, std::size_t budget);

/// Random proper term, possibly clashing or divergent. Deterministic per seed.
Term gen_untyped_proper(std::uint64_t seed, std::size_t budget);

/// `count` generated terms of size at most `max_size`, drawn from consecutive
/// seeds starting at `seed` with budgets cycling up to `max_size`.
std::vector<TypedTerm> sample_typed(std::uint64_t seed, std::size_t count, std::size_t max_size);
std::vector<Term> sample_untyped(std::uint64_t seed, std::size_t count, std::size_t max_size);

/// b(e) := !(der{e>m} der{e>n} (m,n)); rho_1 := b(e1);
/// rho_{k+1} := L<cut{v > e_{k+1}} b(e_{k+1})> where rho_k = L<v>.
/// Throws Error for n = 0.
TypedTerm gen_spindle(std::size_t n);

Term gen_omega();

/// The clashing term whose AxM1 and AxM2 reducts are only cut-equivalent.
Term glitch_term();

/// Visits every context over the names {m, e} whose size, counting the hole
/// as one node, is at most `max_size`. Off-path sub-terms range over all
/// terms of the remaining size. Returns the number of contexts visited.
std::size_t for_each_context(std::size_t max_size, const std::function<void(const Context&)>& visit);

/// Random context of size about `budget` over the names {m, n, o, e, f}.
/// Off-path sub-terms are arbitrary, not necessarily proper.
Context gen_context(std::uint64_t seed, std::size_t budget);

} // namespace esc
