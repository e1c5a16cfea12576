#ifndef CURVOPS_RATIONAL_HPP
#define CURVOPS_RATIONAL_HPP

#include <gmpxx.h>
#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <string_view>

// Exact scalar type used throughout: GMP rationals, always kept in
// canonical form (lowest terms, positive denominator).

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace curvops {

using Rational = mpq_class;

using MatrixXq = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXq = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RowVectorXq = Eigen::Matrix<Rational, 1, Eigen::Dynamic>;

/// Canonicalized rational from an integer pair. The mpq_class(num, den)
/// constructor does not reduce, so every construction from a fraction
/// must go through here.
inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Renders "a" for integers and "a/b" otherwise, b > 0.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "a" or "a/b" with optional leading '-'; the denominator must be
/// a positive integer literal. Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

}  // namespace curvops

#endif
