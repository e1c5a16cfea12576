#ifndef CURVOPS_POLYNOMIAL_HPP
#define CURVOPS_POLYNOMIAL_HPP

#include <map>
#include <vector>

#include "curvops/linalg.hpp"

namespace curvops {

/// Multivariate polynomial with exact rational coefficients; terms are
/// keyed by exponent vectors, zero coefficients are never stored.
/// Differentiation and evaluation are exact.
class MultivariatePolynomial {
 public:
  using Exponents = std::vector<unsigned>;

  explicit MultivariatePolynomial(Index nvars = 0) : nvars_(nvars) {}

  static MultivariatePolynomial constant(Index nvars, const Rational& c);
  static MultivariatePolynomial variable(Index nvars, Index var);
  static MultivariatePolynomial monomial(Index nvars, Exponents exps,
                                         const Rational& c);

  Index nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  Index total_degree() const;
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  /// True when a variable with index >= first appears with positive
  /// exponent; used to reject y-dependence in the psi entries.
  bool depends_on_var_at_least(Index first) const;

  MultivariatePolynomial& operator+=(const MultivariatePolynomial& other);
  MultivariatePolynomial& operator-=(const MultivariatePolynomial& other);
  MultivariatePolynomial operator+(const MultivariatePolynomial& o) const;
  MultivariatePolynomial operator-(const MultivariatePolynomial& o) const;
  MultivariatePolynomial operator*(const MultivariatePolynomial& o) const;
  MultivariatePolynomial operator*(const Rational& c) const;
  MultivariatePolynomial operator-() const;
  bool operator==(const MultivariatePolynomial& o) const = default;

  MultivariatePolynomial derivative(Index var) const;

  Rational evaluate(const VectorXq& point) const;

  /// Re-embeds into a polynomial ring with more variables (same indices).
  MultivariatePolynomial widen(Index new_nvars) const;

  void add_term(const Exponents& exps, const Rational& c);

 private:
  Index nvars_;
  std::map<Exponents, Rational> terms_;
};

/// Cofactor-expansion determinant; fine for the small symbolic Gram
/// matrices handled here.
MultivariatePolynomial poly_determinant(
    const std::vector<MultivariatePolynomial>& grid, Index n);

}  // namespace curvops

#endif
