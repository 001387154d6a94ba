#pragma once

#include <optional>
#include <string>
#include <vector>

#include "esc/term.hpp"

namespace esc {

enum class RuleKind { AxM1, AxM2, Tens, Lolli, AxE1, AxE2, BangDer, Weak, ESmall };

const char* rule_name(RuleKind k);
std::optional<RuleKind> rule_from_name(std::string_view name);

bool is_multiplicative(RuleKind k);
/// AxE1, AxE2, BangDer, Weak.
bool is_exp_micro(RuleKind k);

enum class Mode { Micro, Small, NonLolliMicro, MulOnly, ExpMicroOnly };

const char* mode_name(Mode m);
bool in_mode(RuleKind k, Mode m);

/// A redex: the cut at `cut_path` interacting with the occurrence of its
/// variable at `occ_path` (relative to the cut body). Weak and ESmall redexes
/// have no occurrence.
struct Redex {
  RuleKind kind;
  Path cut_path;
  std::optional<Path> occ_path;

  /// Path of the occurrence from the root.
  Path occurrence() const;
  /// Position of the step: the occurrence for micro steps with an
  /// occurrence, the cut itself otherwise.
  Path position() const;

  friend bool operator==(const Redex& a, const Redex& b) {
    return a.kind == b.kind && a.cut_path == b.cut_path && a.occ_path == b.occ_path;
  }
  friend bool operator<(const Redex& a, const Redex& b);
};

std::string redex_str(const Redex& r);

/// All redexes of the given rule set, ordered by (cut_path, occ_path).
std::vector<Redex> redexes(const Term& t, Mode mode);

/// Contracts `r`. Throws StaleRedex if `r` does not match `t`.
Term apply(const Term& t, const Redex& r);

/// Contracts an ESmall redex.
Term step_ess(const Term& t, const Redex& r);

bool is_normal(const Term& t, Mode mode);
bool is_cut_free(const Term& t);

/// Single-layer cut equivalence moves (sinking and hoisting) from `t`.
std::vector<Term> cut_moves(const Term& t);

/// Decides cut equivalence by exploring the (finite) class of `t`.
/// `max_class` bounds the exploration; exceeding it throws Error.
bool cut_equiv(const Term& t, const Term& s, std::size_t max_class = 200000);

/// All members of the cut-equivalence class of `t`, one per alpha class.
std::vector<Term> cut_class(const Term& t, std::size_t max_class = 200000);

struct PostponementReport {
  bool ok = true;
  std::size_t pairs_checked = 0;
  std::string failure;
};

/// For every Weak step followed by a non-Weak micro step from `t`, looks for
/// a non-Weak step followed by one or more Weak steps reaching the same term.
PostponementReport check_gc_local_postponement(const Term& t);

} // namespace esc
