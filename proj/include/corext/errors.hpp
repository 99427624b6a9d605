#pragma once

#include <stdexcept>
#include <string>

namespace corext {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: dimension mismatch, unknown names, incompatible algebras.
class UsageError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A structure failed one of its defining axioms. `axiom()` names it.
class AxiomError : public Error {
 public:
  AxiomError(std::string axiom, const std::string& detail)
      : Error(axiom + ": " + detail), axiom_(std::move(axiom)) {}
  const std::string& axiom() const { return axiom_; }

 private:
  std::string axiom_;
};

// Internal consistency failure, e.g. a map that should descend to a
// balanced quotient does not.
class StructuralError : public Error {
 public:
  using Error::Error;
};

}  // namespace corext
