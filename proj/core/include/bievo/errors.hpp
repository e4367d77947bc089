#pragma once

#include <stdexcept>
#include <string>

namespace bievo {

/// Argument outside the mathematical domain of an operation (n > N, z < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Base for resource guards on brute-force evaluations.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Path enumeration would visit more orderings than the configured cap.
class EnumerationCapExceeded : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

/// Dynamic-programming table for the lattice-path recurrence is too large.
class TableCapExceeded : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

/// Golden-section bracket does not straddle a maximum.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation requested under the wrong time-step model (fixed vs scaled).
class ModeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NotHermitian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace bievo
