#ifndef CURVOPS_LINALG_HPP
#define CURVOPS_LINALG_HPP

#include <optional>
#include <vector>

#include "curvops/errors.hpp"
#include "curvops/rational.hpp"

// Exact rational linear algebra over pseudo-Euclidean inner product
// spaces: row reduction, inertia, solvers, basis completion. All pivot
// choices are first-nonzero in index order, so every result is
// deterministic and reproducible.

namespace curvops {

using Index = Eigen::Index;

/// Reduced row echelon form of A together with the transform that
/// produced it (transform * A == rref). Pivots are the first nonzero
/// entry of each row, normalized to 1, with zeros above and below.
struct RowEchelonForm {
  MatrixXq rref;
  MatrixXq transform;
  std::vector<Index> pivot_cols;
  Index rank = 0;

  bool is_pivot_col(Index c) const;
};

RowEchelonForm row_reduce(const MatrixXq& a);

Index rank_of(const MatrixXq& a);

/// Inertia counts of a symmetric matrix: p negative, q positive, z zero.
struct Signature {
  Index negative = 0;
  Index positive = 0;
  Index zero = 0;

  bool operator==(const Signature&) const = default;
};

/// Sylvester inertia by exact symmetric congruence diagonalization.
/// When no nonzero diagonal pivot remains, a rank-2 hyperbolic pair is
/// split off by adding one row/column into another. Throws SymmetryError
/// on non-symmetric input.
Signature signature_of(const MatrixXq& gram);

/// Result of solving a (possibly rectangular, possibly singular) linear
/// system A x = b for one or more right-hand sides. When inconsistent,
/// `certificate` is a row u with u A = 0 and u b != 0 for column
/// `inconsistent_column` of the right-hand side.
struct LinearSolution {
  bool consistent = false;
  MatrixXq solution;  // one column per right-hand side; free vars set to 0
  Index rank = 0;
  std::optional<RowVectorXq> certificate;
  Index inconsistent_column = -1;
};

LinearSolution solve_linear(const MatrixXq& a, const MatrixXq& rhs);

/// Canonical basis of the null space (one column per free variable of
/// the reduced echelon form). Satisfies dim kernel + rank == cols.
MatrixXq kernel_of(const MatrixXq& a);

/// Extends linearly independent columns to a basis of Q^dim by greedily
/// appending standard basis vectors in ascending index order. Returns
/// only the appended complement. Throws PreconditionError if the input
/// columns are dependent.
MatrixXq complete_to_basis(const MatrixXq& independent, Index dim);

/// Matrix product that skips zero entries of either factor. Same result
/// as operator*, much faster on the sparse operators that dominate the
/// curvature checks.
MatrixXq sparse_product(const MatrixXq& a, const MatrixXq& b);

bool is_zero_matrix(const MatrixXq& a);

/// Non-degenerate symmetric bilinear form on Q^dim. Signature convention:
/// (p, q) = (#negative, #positive); p = 0 is Riemannian, p = 1 Lorentzian.
/// The inverse Gram matrix is computed once and cached.
class InnerProductSpace {
 public:
  explicit InnerProductSpace(MatrixXq gram);

  Index dim() const { return gram_.rows(); }
  const MatrixXq& gram() const { return gram_; }
  const MatrixXq& inverse_gram() const { return inverse_gram_; }
  const Signature& signature() const { return signature_; }

  Rational inner(const VectorXq& x, const VectorXq& y) const;

  static InnerProductSpace euclidean(Index dim);
  /// Totally isotropic pairing of two k-dim factors: <e_i, ebar_j> = delta_ij.
  static InnerProductSpace hyperbolic_pairs(Index k);

 private:
  MatrixXq gram_;
  MatrixXq inverse_gram_;
  Signature signature_;
};

}  // namespace curvops

#endif
