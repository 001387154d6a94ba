#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "esc/measures.hpp"
#include "esc/rewriting.hpp"

namespace esc {

/// Micro redexes at good positions, in enumeration order.
std::vector<Redex> good_redexes(const Term& t);

struct GoodPolicy {
  enum class Kind { Leftmost, Random } kind = Kind::Leftmost;
  std::uint64_t seed = 0;

  static GoodPolicy leftmost() { return {}; }
  static GoodPolicy random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

/// One good step, or nothing when no good redex exists. A random policy draws
/// from a generator seeded by `policy.seed` combined with `canonical_key(t)`,
/// so the choice is a pure function of the term.
std::optional<std::pair<Redex, Term>> good_step(const Term& t, GoodPolicy policy = {});

struct Strategy {
  enum class Kind { Good, LeftmostAny, RandomAny, SmallStep } kind = Kind::Good;
  std::uint64_t seed = 0;

  static Strategy good() { return {}; }
  static Strategy leftmost_any() { return {Kind::LeftmostAny, 0}; }
  /// Uniform among the redexes with the deepest cut.
  static Strategy random_any(std::uint64_t seed) { return {Kind::RandomAny, seed}; }
  static Strategy small_step() { return {Kind::SmallStep, 0}; }
};

const char* strategy_name(Strategy::Kind k);
std::optional<Strategy::Kind> strategy_from_name(std::string_view name);

struct ValueCopy {
  std::size_t size = 0;
  std::size_t copies = 1;
};

struct StepRecord {
  std::size_t index = 0;
  Redex redex;
  std::optional<ValueCopy> duplicated;
  std::optional<std::size_t> erased;
  std::size_t size_after = 0;
  /// Absent when the measure overflows 64 bits.
  std::optional<Measure> measure_after;
};

enum class Verdict { Normal, StepLimit, ClashStuck };
const char* verdict_name(Verdict v);

struct Trace {
  Term initial;
  Strategy strategy;
  std::vector<StepRecord> steps;
  Term final;
  Verdict verdict = Verdict::Normal;
};

struct Limits {
  std::size_t max_steps = 10000;
};

Trace normalize(const Term& t, Strategy strategy, Limits limits = {});

/// Re-applies the recorded redexes from the initial term.
Term replay(const Trace& trace);

/// Values at bad positions, with their sizes, in preorder.
std::vector<std::pair<Path, std::size_t>> bad_values(const Term& t);

struct SubTermViolation {
  std::size_t step;  // index of the term in the trace; 0 is the initial term
  std::string what;
  std::size_t size;
};

struct SubTermReport {
  std::size_t initial_size = 0;
  std::size_t max_bad_value_size = 0;
  std::size_t max_duplicated_size = 0;
  std::size_t max_erased_size = 0;
  /// Steps plus the sizes of all duplicated values.
  std::size_t work = 0;
  std::vector<SubTermViolation> violations;

  bool ok() const { return violations.empty(); }
};

SubTermReport subterm_report(const Trace& trace);

} // namespace esc
