#include "curvops/metric.hpp"

#include "curvops/properties.hpp"

namespace curvops {

PolynomialMetric::PolynomialMetric(Index dim,
                                   std::vector<MultivariatePolynomial> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<size_t>(dim * dim))
    throw PreconditionError("polynomial metric: grid size mismatch");
  for (const MultivariatePolynomial& p : entries_)
    if (p.nvars() != dim)
      throw PreconditionError(
          "polynomial metric: entries must use one variable per coordinate");
  for (Index i = 0; i < dim; ++i)
    for (Index j = i + 1; j < dim; ++j)
      if (!(at(i, j) == at(j, i)))
        throw SymmetryError("polynomial metric: grid is not symmetric");
}

MatrixXq PolynomialMetric::gram_at(const VectorXq& point) const {
  if (point.size() != dim_)
    throw PreconditionError("metric evaluation: point dimension mismatch");
  MatrixXq g(dim_, dim_);
  for (Index i = 0; i < dim_; ++i)
    for (Index j = 0; j < dim_; ++j) g(i, j) = at(i, j).evaluate(point);
  return g;
}

PolynomialMetric psi_metric(Index p,
                            const std::vector<MultivariatePolynomial>& psi) {
  if (p < 2) throw PreconditionError("psi metric: p >= 2 required");
  if (psi.size() != static_cast<size_t>(p * p))
    throw PreconditionError("psi metric: psi must be a p x p grid");
  const Index dim = 2 * p;
  std::vector<MultivariatePolynomial> widened;
  widened.reserve(psi.size());
  for (const MultivariatePolynomial& entry : psi) {
    if (entry.nvars() == p) {
      widened.push_back(entry.widen(dim));
    } else if (entry.nvars() == dim) {
      if (entry.depends_on_var_at_least(p))
        throw PreconditionError(
            "psi metric: entries may depend only on the x variables");
      widened.push_back(entry);
    } else {
      throw PreconditionError("psi metric: psi entries in wrong ring");
    }
  }
  std::vector<MultivariatePolynomial> entries(
      static_cast<size_t>(dim * dim), MultivariatePolynomial(dim));
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) {
      if (!(widened[static_cast<size_t>(i * p + j)] ==
            widened[static_cast<size_t>(j * p + i)]))
        throw SymmetryError("psi metric: psi is not symmetric");
      entries[static_cast<size_t>(i * dim + j)] =
          widened[static_cast<size_t>(i * p + j)];
    }
  for (Index i = 0; i < p; ++i) {
    entries[static_cast<size_t>(i * dim + (p + i))] =
        MultivariatePolynomial::constant(dim, 1);
    entries[static_cast<size_t>((p + i) * dim + i)] =
        MultivariatePolynomial::constant(dim, 1);
  }
  return PolynomialMetric(dim, std::move(entries));
}

Rank3Array christoffel_first(const PolynomialMetric& metric,
                             const VectorXq& point) {
  const Index m = metric.dim();
  const MatrixXq gram = metric.gram_at(point);
  if (signature_of(gram).zero != 0)
    throw PreconditionError("christoffel: Gram matrix degenerate at point");
  // dg(i,j,k) = d_k g_ij evaluated at the point
  Rank3Array dg(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = i; j < m; ++j)
      for (Index k = 0; k < m; ++k) {
        const Rational v = metric.at(i, j).derivative(k).evaluate(point);
        dg.at(i, j, k) = v;
        dg.at(j, i, k) = v;
      }
  Rank3Array gamma(m);
  const Rational half = rat(1, 2);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        gamma.at(i, j, k) =
            half * (dg.at(j, k, i) + dg.at(i, k, j) - dg.at(i, j, k));
  return gamma;
}

CurvatureTensor curvature_at(const PolynomialMetric& metric,
                             const VectorXq& point) {
  const Index m = metric.dim();
  InnerProductSpace space(metric.gram_at(point));
  const MatrixXq& ginv = space.inverse_gram();
  const Rank3Array gamma = christoffel_first(metric, point);

  // d2g(i,j,k,l) = d_k d_l g_ij at the point
  Rank4Array d2g(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = i; j < m; ++j) {
      const MultivariatePolynomial& gij = metric.at(i, j);
      if (gij.total_degree() < 2) continue;
      for (Index k = 0; k < m; ++k) {
        const MultivariatePolynomial dk = gij.derivative(k);
        if (dk.is_zero()) continue;
        for (Index l = 0; l < m; ++l) {
          const Rational v = dk.derivative(l).evaluate(point);
          d2g.at(i, j, k, l) = v;
          d2g.at(j, i, k, l) = v;
        }
      }
    }

  Rank4Array a(m);
  const Rational half = rat(1, 2);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l) {
          Rational v = half * (d2g.at(j, l, i, k) + d2g.at(i, k, j, l) -
                               d2g.at(j, k, i, l) - d2g.at(i, l, j, k));
          for (Index aa = 0; aa < m; ++aa)
            for (Index bb = 0; bb < m; ++bb) {
              if (is_zero(ginv(aa, bb))) continue;
              v += ginv(aa, bb) * (gamma.at(i, k, aa) * gamma.at(j, l, bb) -
                                   gamma.at(i, l, aa) * gamma.at(j, k, bb));
            }
          a.at(i, j, k, l) = v;
        }
  return CurvatureTensor(std::move(space), std::move(a));
}

PsiFamilyReport verify_thm_1_10(Index p,
                                const std::vector<MultivariatePolynomial>& psi,
                                const std::vector<VectorXq>& points) {
  const PolynomialMetric metric = psi_metric(p, psi);
  PsiFamilyReport report;
  for (const VectorXq& point : points) {
    const CurvatureTensor a = curvature_at(metric, point);
    PointVerdict verdict;
    verdict.point = point;
    verdict.symmetries_ok = validate_symmetries(a).ok;
    verdict.signature_ok =
        a.space().signature() == Signature{p, p, 0};
    const PolarizedJacobiTable table(a);
    verdict.two_step_jacobi = is_2step_jacobi_nilpotent(a, table).holds;
    verdict.two_step_skew =
        is_2step_skew_nilpotent(a, CurvatureOperatorTable(a)).holds;
    verdict.nonzero_curvature = false;
    for (Index i = 0; i < a.dim() && !verdict.nonzero_curvature; ++i)
      for (Index j = 0; j < a.dim() && !verdict.nonzero_curvature; ++j)
        for (Index k = 0; k < a.dim() && !verdict.nonzero_curvature; ++k)
          for (Index l = 0; l < a.dim(); ++l)
            if (!is_zero(a.at(i, j, k, l))) {
              verdict.nonzero_curvature = true;
              break;
            }
    report.points.push_back(std::move(verdict));
  }
  return report;
}

}  // namespace curvops
