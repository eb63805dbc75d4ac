#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace symest {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (e.g. theta not in [-2, 0)).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Errors tied to a particular sequence index.
class IndexedError : public Error {
 public:
  IndexedError(const std::string& what, std::size_t index)
      : Error(what + " at index " + std::to_string(index)), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Forward orbit left the closure of the invariant set.
class EscapeError : public IndexedError {
 public:
  using IndexedError::IndexedError;
};

/// Inverse branch evaluated on a negative radicand.
class InversionDomainError : public IndexedError {
 public:
  using IndexedError::IndexedError;
};

/// Refined cell came out empty.
class RefinementError : public IndexedError {
 public:
  using IndexedError::IndexedError;
};

class AnchorNotFoundError : public Error {
 public:
  using Error::Error;
};

/// A sampler was asked to draw from an empty set.
class EmptySupportError : public Error {
 public:
  using Error::Error;
};

/// Truncated normal whose interval carries no representable mass.
class NumericalUnderflowError : public Error {
 public:
  using Error::Error;
};

/// Conditional for theta has a zero denominator.
class DegenerateConditionalError : public Error {
 public:
  using Error::Error;
};

/// Grid maximizer sits on the first or last grid point.
class EdgeOfGridError : public Error {
 public:
  EdgeOfGridError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Polishing chain initialized outside its support.
class FeasibilityError : public Error {
 public:
  FeasibilityError(const std::string& what, std::vector<std::size_t> indices)
      : Error(what), indices_(std::move(indices)) {}

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Pipeline stage failure; the cause is attached with std::throw_with_nested.
class StageError : public Error {
 public:
  explicit StageError(const std::string& stage)
      : Error("stage '" + stage + "' failed"), stage_(stage) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace symest
