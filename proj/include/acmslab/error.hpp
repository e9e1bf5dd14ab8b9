#pragma once

#include <stdexcept>
#include <string>

namespace acmslab {

/// Base of every error raised by the library. Failed numerical checks are
/// not errors; they are reported through VerificationReport.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes of operators, vectors or metrics disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Bad user input: chart files, CLI arguments, gallery names.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Internal search or construction failed in a case the theory rules out.
class UnreachableError : public Error {
 public:
  using Error::Error;
};

}  // namespace acmslab
