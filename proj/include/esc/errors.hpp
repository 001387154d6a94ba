#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace esc {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised by the surface parser. `line`/`column` are 1-based.
class ParseError : public Error {
public:
  enum class Category { Syntax, Kind, SplitShape };

  ParseError(Category category, std::string message, std::size_t line, std::size_t column);

  Category category() const { return category_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  Category category_;
  std::size_t line_, column_;
};

/// A variable of the wrong kind was used where the grammar fixes the kind,
/// e.g. a multiplicative dereliction conclusion.
class KindError : public Error {
public:
  using Error::Error;
};

/// A non-value was placed in the value slot of a cut or subtraction.
class SplitShapeError : public Error {
public:
  using Error::Error;
};

class InvalidPath : public Error {
public:
  using Error::Error;
};

/// The redex no longer matches the term it is applied to.
class StaleRedex : public Error {
public:
  using Error::Error;
};

class MeasureOverflow : public Error {
public:
  using Error::Error;
};

} // namespace esc
