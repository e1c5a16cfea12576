#ifndef CURVOPS_TESTS_ORACLES_HPP
#define CURVOPS_TESTS_ORACLES_HPP

// Test-only oracles, all independent of the library's primary code
// paths: brute-force evaluation of the defining conditions on random
// exact vectors, an Eigen LU rank/kernel oracle, and a fully symbolic
// curvature computation for the block polynomial metrics.

#include <Eigen/LU>
#include <optional>
#include <random>

#include "curvops/curvature.hpp"
#include "curvops/metric.hpp"

namespace curvops::oracles {

/// Random vector with entries in [-3,3] cap Z/2 (half-integers).
inline VectorXq random_half_integer_vector(std::mt19937_64& rng, Index dim) {
  VectorXq v(dim);
  for (Index i = 0; i < dim; ++i)
    v(i) = rat(static_cast<long>(rng() % 13) - 6, 2);
  return v;
}

/// Rank via Eigen's full-pivot LU, an elimination route independent of
/// the project's row_reduce.
inline Index lu_rank(const MatrixXq& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::FullPivLU<MatrixXq> lu(m);
  return lu.rank();
}

inline MatrixXq lu_kernel(const MatrixXq& m) {
  Eigen::FullPivLU<MatrixXq> lu(m);
  return lu.kernel();
}

/// J(x) straight from the tensor definition <J(x)y, w> = A(y,x,x,w),
/// bypassing the polarized table.
inline MatrixXq jacobi_direct(const CurvatureTensor& a, const VectorXq& x) {
  return jacobi(a, x);
}

struct Violation {
  std::vector<VectorXq> vectors;
};

inline std::optional<Violation> bf_jacobi_tsankov(const CurvatureTensor& a,
                                                  std::mt19937_64& rng,
                                                  int trials) {
  for (int t = 0; t < trials; ++t) {
    const VectorXq x = random_half_integer_vector(rng, a.dim());
    const VectorXq y = random_half_integer_vector(rng, a.dim());
    const MatrixXq jx = jacobi(a, x), jy = jacobi(a, y);
    if (MatrixXq(jx * jy) != MatrixXq(jy * jx)) return Violation{{x, y}};
  }
  return std::nullopt;
}

inline std::optional<Violation> bf_2step_jacobi(const CurvatureTensor& a,
                                                std::mt19937_64& rng,
                                                int trials) {
  for (int t = 0; t < trials; ++t) {
    const VectorXq x = random_half_integer_vector(rng, a.dim());
    const VectorXq y = random_half_integer_vector(rng, a.dim());
    if (!is_zero_matrix(MatrixXq(jacobi(a, x) * jacobi(a, y))))
      return Violation{{x, y}};
  }
  return std::nullopt;
}

inline std::optional<Violation> bf_square_zero(const CurvatureTensor& a,
                                               std::mt19937_64& rng,
                                               int trials) {
  for (int t = 0; t < trials; ++t) {
    const VectorXq x = random_half_integer_vector(rng, a.dim());
    const MatrixXq jx = jacobi(a, x);
    if (!is_zero_matrix(MatrixXq(jx * jx))) return Violation{{x}};
  }
  return std::nullopt;
}

inline std::optional<Violation> bf_orthogonal_jacobi_tsankov(
    const CurvatureTensor& a, std::mt19937_64& rng, int trials) {
  for (int t = 0; t < trials; ++t) {
    const VectorXq x = random_half_integer_vector(rng, a.dim());
    VectorXq y = random_half_integer_vector(rng, a.dim());
    const Rational xx = a.space().inner(x, x);
    if (is_zero(xx)) continue;  // cannot project onto an isotropic direction
    y -= (a.space().inner(x, y) / xx) * x;
    const MatrixXq jx = jacobi(a, x), jy = jacobi(a, y);
    if (MatrixXq(jx * jy) != MatrixXq(jy * jx)) return Violation{{x, y}};
  }
  return std::nullopt;
}

inline std::optional<Violation> bf_skew_tsankov(const CurvatureTensor& a,
                                                std::mt19937_64& rng,
                                                int trials) {
  for (int t = 0; t < trials; ++t) {
    const VectorXq x1 = random_half_integer_vector(rng, a.dim());
    const VectorXq x2 = random_half_integer_vector(rng, a.dim());
    const VectorXq x3 = random_half_integer_vector(rng, a.dim());
    const VectorXq x4 = random_half_integer_vector(rng, a.dim());
    const MatrixXq p = curvature_operator(a, x1, x2);
    const MatrixXq q = curvature_operator(a, x3, x4);
    if (MatrixXq(p * q) != MatrixXq(q * p)) return Violation{{x1, x2, x3, x4}};
  }
  return std::nullopt;
}

inline std::optional<Violation> bf_2step_skew(const CurvatureTensor& a,
                                              std::mt19937_64& rng,
                                              int trials) {
  for (int t = 0; t < trials; ++t) {
    const VectorXq x1 = random_half_integer_vector(rng, a.dim());
    const VectorXq x2 = random_half_integer_vector(rng, a.dim());
    const VectorXq x3 = random_half_integer_vector(rng, a.dim());
    const VectorXq x4 = random_half_integer_vector(rng, a.dim());
    if (!is_zero_matrix(MatrixXq(curvature_operator(a, x1, x2) *
                                 curvature_operator(a, x3, x4))))
      return Violation{{x1, x2, x3, x4}};
  }
  return std::nullopt;
}

/// Fully symbolic curvature of a psi-block metric: for these metrics the
/// inverse Gram is itself polynomial ([[0,I],[I,-psi]]), so the whole
/// lowered curvature is assembled in the polynomial ring and only
/// evaluated at the very end. Completely separate route from
/// curvature_at's evaluate-then-contract strategy.
inline Rank4Array symbolic_psi_curvature_at(
    Index p, const std::vector<MultivariatePolynomial>& psi,
    const VectorXq& point) {
  const Index m = 2 * p;
  using Poly = MultivariatePolynomial;
  std::vector<Poly> g(static_cast<size_t>(m * m), Poly(m));
  std::vector<Poly> ginv(static_cast<size_t>(m * m), Poly(m));
  const auto idx = [m](Index i, Index j) {
    return static_cast<size_t>(i * m + j);
  };
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) {
      const Poly w = psi[static_cast<size_t>(i * p + j)].nvars() == p
                         ? psi[static_cast<size_t>(i * p + j)].widen(m)
                         : psi[static_cast<size_t>(i * p + j)];
      g[idx(i, j)] = w;
      ginv[idx(p + i, p + j)] = -w;
    }
  for (Index i = 0; i < p; ++i) {
    g[idx(i, p + i)] = Poly::constant(m, 1);
    g[idx(p + i, i)] = Poly::constant(m, 1);
    ginv[idx(i, p + i)] = Poly::constant(m, 1);
    ginv[idx(p + i, i)] = Poly::constant(m, 1);
  }
  // Gamma_{ij,k} symbolically
  std::vector<Poly> gamma(static_cast<size_t>(m * m * m), Poly(m));
  const auto gidx = [m](Index i, Index j, Index k) {
    return static_cast<size_t>((i * m + j) * m + k);
  };
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        gamma[gidx(i, j, k)] = (g[idx(j, k)].derivative(i) +
                                g[idx(i, k)].derivative(j) -
                                g[idx(i, j)].derivative(k)) *
                               rat(1, 2);
  Rank4Array out(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l) {
          Poly r = (g[idx(j, l)].derivative(i).derivative(k) +
                    g[idx(i, k)].derivative(j).derivative(l) -
                    g[idx(j, k)].derivative(i).derivative(l) -
                    g[idx(i, l)].derivative(j).derivative(k)) *
                   rat(1, 2);
          for (Index aa = 0; aa < m; ++aa)
            for (Index bb = 0; bb < m; ++bb) {
              if (ginv[idx(aa, bb)].is_zero()) continue;
              r += ginv[idx(aa, bb)] *
                   (gamma[gidx(i, k, aa)] * gamma[gidx(j, l, bb)] -
                    gamma[gidx(i, l, aa)] * gamma[gidx(j, k, bb)]);
            }
          out.at(i, j, k, l) = r.evaluate(point);
        }
  return out;
}

/// Deterministic random symmetric psi grid of polynomials in p variables
/// with total degree <= 3.
inline std::vector<MultivariatePolynomial> random_psi(std::uint64_t seed,
                                                      Index p) {
  std::mt19937_64 rng(seed);
  using Poly = MultivariatePolynomial;
  std::vector<Poly> psi(static_cast<size_t>(p * p), Poly(p));
  for (Index i = 0; i < p; ++i)
    for (Index j = i; j < p; ++j) {
      Poly entry(p);
      const int terms = 1 + static_cast<int>(rng() % 3);
      for (int t = 0; t < terms; ++t) {
        Poly::Exponents exps(static_cast<size_t>(p), 0);
        int budget = 3;
        for (size_t v = 0; v < exps.size(); ++v) {
          const int e = static_cast<int>(rng() % (budget + 1));
          exps[v] = static_cast<unsigned>(e);
          budget -= e;
        }
        entry.add_term(exps, rat(static_cast<long>(rng() % 7) - 3,
                                 1 + static_cast<long>(rng() % 2)));
      }
      psi[static_cast<size_t>(i * p + j)] = entry;
      psi[static_cast<size_t>(j * p + i)] = entry;
    }
  return psi;
}

/// Deterministic rational sample points for a dim-n metric.
inline std::vector<VectorXq> sample_points(Index n, int count) {
  std::vector<VectorXq> pts;
  std::mt19937_64 rng(0xC0FFEE);
  for (int c = 0; c < count; ++c) {
    VectorXq p(n);
    for (Index i = 0; i < n; ++i)
      p(i) = rat(static_cast<long>(rng() % 9) - 4,
                 1 + static_cast<long>(rng() % 2));
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace curvops::oracles

#endif
