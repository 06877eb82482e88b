#ifndef WTRACE_ERRORS_HPP
#define WTRACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wtrace {

// Malformed data: unsorted or duplicate coordinates, mismatched lengths,
// parameters outside their domain.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed request that violates an operation's hypothesis
// (e.g. #E <= m for the finite-p variational functional).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter combination that has no defined meaning (p = inf for the
// sharp maximal criterion, enumeration beyond the size cap).
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wtrace

#endif  // WTRACE_ERRORS_HPP
