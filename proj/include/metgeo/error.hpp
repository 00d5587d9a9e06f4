#pragma once

#include <stdexcept>
#include <string>

namespace metgeo {

/// Malformed input: wrong shape, asymmetric, negative, non-finite, unknown label.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well formed but violates a mathematical precondition of the
/// requested operation (e.g. a quasi-metric constant above 2 for Frink's
/// bound, or a non-Ptolemaic cube target).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scalar argument outside its admissible range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace metgeo
