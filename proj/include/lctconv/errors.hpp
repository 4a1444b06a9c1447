#ifndef LCTCONV_ERRORS_HPP
#define LCTCONV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lctconv {

// Base for every failure the library reports about its inputs. The CLI maps
// these to exit code 1.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DeterminantViolation : public DomainError {
public:
  using DomainError::DomainError;
};

class ZeroB : public DomainError {
public:
  using DomainError::DomainError;
};

class InvalidGrid : public DomainError {
public:
  using DomainError::DomainError;
};

class InvalidSignal : public DomainError {
public:
  using DomainError::DomainError;
};

class IncompatibleGrids : public DomainError {
public:
  using DomainError::DomainError;
};

class GridTooCoarse : public DomainError {
public:
  using DomainError::DomainError;
};

class InvalidExponent : public DomainError {
public:
  using DomainError::DomainError;
};

class NonInvertibleSymbol : public DomainError {
public:
  using DomainError::DomainError;
};

// lambda == 0 and the transformed kernel vanishes on the grid.
class DegenerateCase : public NonInvertibleSymbol {
public:
  using NonInvertibleSymbol::NonInvertibleSymbol;
};

class ParseError : public DomainError {
public:
  ParseError(const std::string &where, const std::string &what)
      : DomainError(where + ": " + what), where_(where) {}
  const std::string &where() const noexcept { return where_; }

private:
  std::string where_;
};

class GridMismatch : public DomainError {
public:
  using DomainError::DomainError;
};

class IoError : public DomainError {
public:
  using DomainError::DomainError;
};

} // namespace lctconv

#endif // LCTCONV_ERRORS_HPP
