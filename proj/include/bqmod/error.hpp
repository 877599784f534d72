#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bqmod {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAUnit : public Error {
 public:
  NotAUnit(std::int64_t value, std::int64_t modulus)
      : Error(std::to_string(value) + " is not a unit modulo " + std::to_string(modulus)),
        value_(value),
        modulus_(modulus) {}
  std::int64_t value() const noexcept { return value_; }
  std::int64_t modulus() const noexcept { return modulus_; }

 private:
  std::int64_t value_;
  std::int64_t modulus_;
};

class CompositeModulus : public Error {
 public:
  explicit CompositeModulus(std::int64_t modulus)
      : Error("row reduction needs a prime modulus, got " + std::to_string(modulus)) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// Raised when a diagram breaks a structural invariant. `witness` is a node
// index, or a semiarc label for label-level invariants.
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, long witness, const std::string& detail)
      : Error(invariant + " violated at " + std::to_string(witness) + ": " + detail),
        invariant_(std::move(invariant)),
        witness_(witness) {}
  const std::string& invariant() const noexcept { return invariant_; }
  long witness() const noexcept { return witness_; }

 private:
  std::string invariant_;
  long witness_;
};

class MalformedTable : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotAPermutation : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidSite : public Error {
 public:
  using Error::Error;
};

class NotAdmissible : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  UnknownName(const std::string& name, std::string suggestion)
      : Error("unknown catalog entry '" + name + "'" +
              (suggestion.empty() ? std::string() : "; did you mean '" + suggestion + "'?")),
        suggestion_(std::move(suggestion)) {}
  const std::string& suggestion() const noexcept { return suggestion_; }

 private:
  std::string suggestion_;
};

// One failed axiom instance. Witness entries are 1-indexed elements.
struct Violation {
  std::string axiom;
  std::vector<int> witness;
  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string describe(const Violation& v);

class AxiomViolation : public Error {
 public:
  explicit AxiomViolation(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Either a verified value or the list of axiom instances that failed.
template <class T>
class Checked {
 public:
  explicit Checked(T value) : value_(std::move(value)) {}
  explicit Checked(std::vector<Violation> violations) : violations_(std::move(violations)) {}

  bool ok() const noexcept { return violations_.empty(); }
  explicit operator bool() const noexcept { return ok(); }
  const std::vector<Violation>& violations() const noexcept { return violations_; }

  const T& value() const {
    if (!ok()) throw AxiomViolation(violations_);
    return *value_;
  }

 private:
  std::vector<Violation> violations_;
  std::optional<T> value_;
};

}  // namespace bqmod
