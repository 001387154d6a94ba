#pragma once

#include <memory>
#include <string>
#include <vector>

namespace esc {

/// IMELL formula: atoms, tensor, linear implication and bang.
/// Immutable; copies share structure.
class Formula {
public:
  enum class Tag { Atom, Tensor, Lolli, Bang };

  static Formula atom(std::string name);
  static Formula tensor(Formula left, Formula right);
  static Formula lolli(Formula from, Formula to);
  static Formula bang(Formula body);

  Tag tag() const { return node_->tag; }
  bool is_bang() const { return tag() == Tag::Bang; }

  const std::string& name() const { return node_->name; }
  const Formula& left() const { return node_->kids[0]; }
  const Formula& right() const { return node_->kids[1]; }
  /// Body of a bang.
  const Formula& body() const { return node_->kids[0]; }

  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);

private:
  struct Node {
    Tag tag;
    std::string name;
    std::vector<Formula> kids;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

} // namespace esc
