#ifndef CURVOPS_METRIC_HPP
#define CURVOPS_METRIC_HPP

#include "curvops/curvature.hpp"
#include "curvops/polynomial.hpp"

// Exact curvature of polynomial pseudo-Riemannian metrics at rational
// points. Derivatives are taken symbolically, then everything is
// evaluated at the point and assembled with the exact inverse Gram, so
// no rational-function arithmetic is ever needed.

namespace curvops {

/// Symmetric grid of polynomial metric coefficients g_ij(x), all in the
/// same variable ring (one variable per coordinate).
class PolynomialMetric {
 public:
  PolynomialMetric(Index dim, std::vector<MultivariatePolynomial> entries);

  Index dim() const { return dim_; }
  const MultivariatePolynomial& at(Index i, Index j) const {
    return entries_[static_cast<size_t>(i * dim_ + j)];
  }
  const std::vector<MultivariatePolynomial>& entries() const {
    return entries_;
  }

  /// Exact Gram matrix at a rational point.
  MatrixXq gram_at(const VectorXq& point) const;

 private:
  Index dim_;
  std::vector<MultivariatePolynomial> entries_;
};

/// Rank-3 array for the Christoffel symbols of the first kind.
class Rank3Array {
 public:
  Rank3Array() = default;
  explicit Rank3Array(Index dim)
      : dim_(dim), data_(static_cast<size_t>(dim * dim * dim)) {}
  Index dim() const { return dim_; }
  const Rational& at(Index i, Index j, Index k) const {
    return data_[static_cast<size_t>((i * dim_ + j) * dim_ + k)];
  }
  Rational& at(Index i, Index j, Index k) {
    return data_[static_cast<size_t>((i * dim_ + j) * dim_ + k)];
  }

 private:
  Index dim_ = 0;
  std::vector<Rational> data_;
};

/// Block metric on coordinates (x_1..x_p, y_1..y_p):
/// g(dx_i, dx_j) = psi_ij(x), g(dx_i, dy_j) = delta_ij, g(dy_i, dy_j) = 0.
/// psi must be symmetric, p >= 2, and its entries may depend only on the
/// x variables (entries given in p variables are widened to 2p).
PolynomialMetric psi_metric(Index p,
                            const std::vector<MultivariatePolynomial>& psi);

/// Christoffel symbols of the first kind at a rational point:
/// Gamma_{ij,k} = (d_i g_jk + d_j g_ik - d_k g_ij) / 2.
Rank3Array christoffel_first(const PolynomialMetric& metric,
                             const VectorXq& point);

/// Exact curvature tensor of the metric at a point, signed so that
/// constant_sectional_curvature of the result matches the A_id
/// convention (a dedicated test pins the sign):
/// A_ijkl = (d_i d_k g_jl + d_j d_l g_ik - d_i d_l g_jk - d_j d_k g_il)/2
///          + g^{ab} (Gamma_{ik,a} Gamma_{jl,b} - Gamma_{il,a} Gamma_{jk,b}).
CurvatureTensor curvature_at(const PolynomialMetric& metric,
                             const VectorXq& point);

/// Per-point verification record for the psi-metric family.
struct PointVerdict {
  VectorXq point;
  bool symmetries_ok = false;
  bool signature_ok = false;
  bool two_step_jacobi = false;
  bool two_step_skew = false;
  bool nonzero_curvature = false;

  bool all_ok() const {
    return symmetries_ok && signature_ok && two_step_jacobi && two_step_skew;
  }
};

struct PsiFamilyReport {
  std::vector<PointVerdict> points;
  bool all_ok() const {
    for (const PointVerdict& p : points)
      if (!p.all_ok()) return false;
    return true;
  }
};

/// For each point: curvature passes validate_symmetries, the signature
/// is (p,p), and both 2-step nilpotency properties hold.
PsiFamilyReport verify_thm_1_10(Index p,
                                const std::vector<MultivariatePolynomial>& psi,
                                const std::vector<VectorXq>& points);

}  // namespace curvops

#endif
