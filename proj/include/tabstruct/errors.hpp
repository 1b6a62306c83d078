#pragma once

#include <stdexcept>
#include <string>

namespace tabstruct {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A table configuration whose smallest table cannot be placed on the page,
/// or whose ranges are malformed.
class InfeasibleConfig : public Error {
 public:
  using Error::Error;
};

/// A genotype that violates its structural invariants.
class InvalidGenotype : public Error {
 public:
  using Error::Error;
};

/// Too few dividers were found in a skeleton image to form a table.
class InsufficientStructure : public Error {
 public:
  using Error::Error;
};

/// Unreadable, corrupt or wrongly formatted input files.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Problems evaluating an objective (missing discriminator, size mismatch).
class ObjectiveError : public Error {
 public:
  using Error::Error;
};

}  // namespace tabstruct
