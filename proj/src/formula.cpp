#include "esc/formula.hpp"

namespace esc {

Formula Formula::atom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Tag::Atom, std::move(name), {}}));
}

Formula Formula::tensor(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(Node{Tag::Tensor, {}, {std::move(left), std::move(right)}}));
}

Formula Formula::lolli(Formula from, Formula to) {
  return Formula(std::make_shared<const Node>(Node{Tag::Lolli, {}, {std::move(from), std::move(to)}}));
}

Formula Formula::bang(Formula body) {
  return Formula(std::make_shared<const Node>(Node{Tag::Bang, {}, {std::move(body)}}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.tag() != b.tag()) return false;
  switch (a.tag()) {
  case Formula::Tag::Atom: return a.name() == b.name();
  case Formula::Tag::Bang: return a.body() == b.body();
  default: return a.left() == b.left() && a.right() == b.right();
  }
}

namespace {

// Binding strength: -o < * < ! < atom.
int level(const Formula& f) {
  switch (f.tag()) {
  case Formula::Tag::Lolli: return 0;
  case Formula::Tag::Tensor: return 1;
  case Formula::Tag::Bang: return 2;
  case Formula::Tag::Atom: return 3;
  }
  return 3;
}

void print(const Formula& f, int min_level, std::string& out) {
  bool parens = level(f) < min_level;
  if (parens) out += '(';
  switch (f.tag()) {
  case Formula::Tag::Atom: out += f.name(); break;
  case Formula::Tag::Bang:
    out += '!';
    print(f.body(), 2, out);
    break;
  case Formula::Tag::Tensor:
    print(f.left(), 1, out);
    out += " * ";
    print(f.right(), 2, out);
    break;
  case Formula::Tag::Lolli:
    print(f.left(), 1, out);
    out += " -o ";
    print(f.right(), 0, out);
    break;
  }
  if (parens) out += ')';
}

} // namespace

std::string Formula::str() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

} // namespace esc
