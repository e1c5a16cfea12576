#ifndef CURVOPS_ERRORS_HPP
#define CURVOPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace curvops {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: rational literals, tensor/metric files, example ids.
struct ParseError : Error {
  using Error::Error;
};

/// A structural invariant of the input is violated (non-symmetric Gram,
/// non-skew endomorphism, tensor symmetry/Bianchi failure, orbit conflict).
struct SymmetryError : Error {
  using Error::Error;
};

/// An operation was invoked outside its stated precondition.
struct PreconditionError : Error {
  using Error::Error;
};

/// A mathematically guaranteed intermediate claim failed; indicates a bug
/// or an input that violates a checked precondition upstream.
struct InternalConsistencyError : Error {
  using Error::Error;
};

}  // namespace curvops

#endif
