#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "esc/errors.hpp"
#include "esc/formula.hpp"

namespace esc {

enum class VarKind : std::uint8_t { Multiplicative, Exponential };

/// A variable. The kind is fixed at creation and survives renaming.
struct Var {
  std::string name;
  VarKind kind = VarKind::Multiplicative;

  bool is_exp() const { return kind == VarKind::Exponential; }
  bool is_mul() const { return kind == VarKind::Multiplicative; }

  friend bool operator==(const Var& a, const Var& b) { return a.kind == b.kind && a.name == b.name; }
  friend bool operator!=(const Var& a, const Var& b) { return !(a == b); }
  friend bool operator<(const Var& a, const Var& b) {
    return a.kind != b.kind ? a.kind < b.kind : a.name < b.name;
  }
};

/// Surface naming convention: identifiers starting with e, f or g are
/// exponential, everything else is multiplicative.
VarKind kind_of_name(std::string_view name);
Var make_var(std::string name);

using VarSet = std::set<Var>;

/// Child indices from the root. Pair: 0 left, 1 right. Lam/Bang/Par/Der: 0
/// body. Cut/Sub: 0 value, 1 body.
using Path = std::vector<int>;

std::string path_str(const Path& p);

struct TermNode;

/// Proof term of the exponential substitution calculus. Immutable and cheap
/// to copy; sub-terms are shared.
///
/// The `Hole` constructor only appears inside contexts.
class Term {
public:
  enum class Tag : std::uint8_t { Var, Pair, Lam, Bang, Cut, Par, Sub, Der, Hole };

  Term() = default;

  static Term var(Var x);
  static Term pair(Term left, Term right);
  static Term lam(Var binder, std::optional<Formula> annot, Term body);
  static Term lam(Var binder, Term body) { return lam(std::move(binder), std::nullopt, std::move(body)); }
  static Term bang(Term body);
  /// Throws SplitShapeError unless `value` is a value.
  static Term cut(Term value, Var binder, Term body);
  /// Throws KindError if `conclusion` is exponential.
  static Term par(Var conclusion, Var left, Var right, Term body);
  static Term sub(Var conclusion, Term value, Var binder, Term body);
  /// Throws KindError if `conclusion` is multiplicative.
  static Term der(Var conclusion, Var binder, Term body);
  static Term hole();

  explicit operator bool() const { return node_ != nullptr; }

  Tag tag() const;
  bool is_value() const;
  bool is_exp_value() const;
  bool is_mul_value() const;
  /// Cut, par, subtraction or dereliction.
  bool is_left() const;

  /// Var: the variable. Par/Sub/Der: the conclusion.
  const Var& occ() const;
  /// Lam/Cut/Sub/Der binder, or left binder of a Par.
  const Var& binder() const;
  /// Right binder of a Par.
  const Var& binder2() const;
  const std::optional<Formula>& annot() const;

  int arity() const;
  const Term& child(int i) const;
  const Term& body() const;
  const Term& value() const;
  const Term& left() const { return child(0); }
  const Term& right() const { return child(1); }

  /// Cached constructor count, see `size`.
  std::size_t node_size() const;

  /// Same node with child `i` replaced.
  Term with_child(int i, Term c) const;
  /// Same node with the binder(s) and annotation replaced.
  Term with_binders(Var b, Var b2) const;
  Term with_occ(Var x) const;

  bool same_node(const Term& o) const { return node_ == o.node_; }
  /// Identity of the shared node, for memo tables.
  const void* id() const { return node_.get(); }

private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  static Term make(TermNode n);
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  Term::Tag tag;
  Var occ;
  Var bind;
  Var bind2;
  std::optional<Formula> annot;
  Term kids[2];
  std::size_t size = 0;
};

// ---------------------------------------------------------------------------
// Variables and occurrences

struct FreeVars {
  VarSet all, mul, exp;
};

FreeVars free_vars(const Term& t);
VarSet fv(const Term& t);
VarSet mfv(const Term& t);
bool is_free_in(const Var& x, const Term& t);

/// Free occurrences of `x`, counting par/sub/der conclusions.
std::size_t occ_count(const Term& t, const Var& x);

/// Constructor nodes plus variable occurrences (par/sub/der conclusions
/// count as one occurrence each). Invariant under alpha.
std::size_t size(const Term& t);

/// Variables bound by `t` in its child `i`.
std::vector<Var> binders_in_child(const Term& t, int i);

/// Every variable name appearing anywhere in `t`, free or bound.
void collect_names(const Term& t, std::unordered_set<std::string>& out);

// ---------------------------------------------------------------------------
// Alpha

bool alpha_eq(const Term& a, const Term& b);

/// Deterministic string with bound variables numbered in preorder; two terms
/// have the same key iff they are alpha-equivalent. Annotations are ignored.
std::string canonical_key(const Term& t);

// ---------------------------------------------------------------------------
// Properness

struct ProperCheck {
  bool ok = true;
  std::string violation;
  Path where;
  explicit operator bool() const { return ok; }
};

ProperCheck check_proper(const Term& t);
inline bool is_proper(const Term& t) { return check_proper(t).ok; }

// ---------------------------------------------------------------------------
// Splitting

/// `t = spine⟨head⟩`; spine layers are left constructors listed outermost
/// first, their bodies are irrelevant.
struct Split {
  std::vector<Term> spine;
  Term head;
};

Split split(const Term& t);
Term replug(const Split& s);
Term replug(const std::vector<Term>& spine, Term head);

// ---------------------------------------------------------------------------
// Fresh names and renaming

/// Supplies names that occur nowhere in the terms it was seeded with.
/// Generated names keep the first letter, hence the kind, of their base.
class NameSupply {
public:
  NameSupply() = default;
  explicit NameSupply(const Term& t) { observe(t); }

  void observe(const Term& t);
  void reserve(const std::string& name) { used_.insert(name); }
  Var fresh(const Var& base);

private:
  std::unordered_set<std::string> used_;
  std::unordered_map<std::string, unsigned> next_;
};

/// Renames every bound variable of `t` to a fresh name.
Term freshen(const Term& t, NameSupply& names);

/// Capture-avoiding replacement of the free occurrences of `x` by `y`
/// (variables and conclusions). Requires equal kinds.
Term rename_free(const Term& t, const Var& x, const Var& y, NameSupply& names);

/// `t{n/m}`. Throws KindError unless both variables are multiplicative.
Term rename_mul(const Term& t, const Var& m, const Var& n);

// ---------------------------------------------------------------------------
// Paths

bool is_valid_path(const Term& t, const Path& p);
/// Throws InvalidPath.
const Term& subterm_at(const Term& t, const Path& p);
/// Plain replacement; throws SplitShapeError if a non-value lands in a value slot.
Term replace_at(const Term& t, const Path& p, Term replacement);

/// Rebuilds `t` with the sub-term at `p` replaced by `make(old)`. Binders on
/// the way that belong to `avoid` are renamed first (in their whole scope, so
/// `old` is handed over already renamed), so nothing in `avoid` is captured.
Term replace_avoiding(const Term& t, const Path& p, const VarSet& avoid, NameSupply& names,
                      const std::function<Term(const Term&)>& make);

// ---------------------------------------------------------------------------
// Printing

std::string print(const Term& t);
std::ostream& operator<<(std::ostream& os, const Term& t);

} // namespace esc
