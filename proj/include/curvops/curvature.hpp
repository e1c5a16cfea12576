#ifndef CURVOPS_CURVATURE_HPP
#define CURVOPS_CURVATURE_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include "curvops/linalg.hpp"

// Algebraic curvature tensors on inner product spaces, their symmetry
// validation, and the associated operators: the curvature operator
// A(x,y), the Jacobi operator J(x), its polarization J(x,y), and the
// generalized (non-metric) curvature operator.

namespace curvops {

/// Dense rank-4 array of exact scalars, row-major in (i,j,k,l).
/// Also used for curvature components on a space without a metric.
class Rank4Array {
 public:
  Rank4Array() = default;
  explicit Rank4Array(Index dim)
      : dim_(dim), data_(static_cast<size_t>(dim * dim * dim * dim)) {}

  Index dim() const { return dim_; }
  const Rational& at(Index i, Index j, Index k, Index l) const {
    return data_[flat(i, j, k, l)];
  }
  Rational& at(Index i, Index j, Index k, Index l) {
    return data_[flat(i, j, k, l)];
  }

  bool operator==(const Rank4Array& other) const {
    return dim_ == other.dim_ && data_ == other.data_;
  }

  Rank4Array& operator+=(const Rank4Array& other) {
    for (size_t t = 0; t < data_.size(); ++t) data_[t] += other.data_[t];
    return *this;
  }
  Rank4Array& operator*=(const Rational& c) {
    for (Rational& v : data_) v *= c;
    return *this;
  }

 private:
  size_t flat(Index i, Index j, Index k, Index l) const {
    return static_cast<size_t>(((i * dim_ + j) * dim_ + k) * dim_ + l);
  }
  Index dim_ = 0;
  std::vector<Rational> data_;
};

struct ComponentEntry {
  Index i, j, k, l;
  Rational value;
};

enum class AssemblyMode { kGenerate, kVerbatim };

/// First violated identity of the curvature symmetries, if any.
struct SymmetryReport {
  bool ok = true;
  std::string identity;
  std::array<Index, 4> indices{};

  std::string describe() const;
};

class CurvatureTensor {
 public:
  CurvatureTensor(InnerProductSpace space, Rank4Array components);

  Index dim() const { return space_.dim(); }
  const InnerProductSpace& space() const { return space_; }
  const Rank4Array& components() const { return components_; }
  const Rational& at(Index i, Index j, Index k, Index l) const {
    return components_.at(i, j, k, l);
  }

  /// A(x,y,z,w) by full multilinear contraction.
  Rational evaluate(const VectorXq& x, const VectorXq& y, const VectorXq& z,
                    const VectorXq& w) const;

 private:
  InnerProductSpace space_;
  Rank4Array components_;
};

/// Checks the four symmetry families over all index tuples; reports the
/// first violation in lexicographic order.
SymmetryReport validate_symmetries(const Rank4Array& a);
SymmetryReport validate_symmetries(const CurvatureTensor& a);

/// Assembles curvature components from sparse entries. In generate mode
/// each entry is propagated through its Z2-symmetry orbit (skew first
/// pair, skew second pair, pair swap) and conflicting orbit values are
/// rejected; in verbatim mode every entry is written as given. Throws
/// SymmetryError on orbit conflicts or if the assembled array fails
/// validate_symmetries.
Rank4Array components_from_entries(Index dim, std::span<const ComponentEntry>,
                                   AssemblyMode mode);

CurvatureTensor tensor_from_components(InnerProductSpace space,
                                       std::span<const ComponentEntry>,
                                       AssemblyMode mode);

CurvatureTensor zero_tensor(InnerProductSpace space);

/// The endomorphism A(x,y): contract the first two slots with x, y and
/// raise the last index with the inverse Gram matrix.
MatrixXq curvature_operator(const CurvatureTensor& a, const VectorXq& x,
                            const VectorXq& y);

/// The Jacobi operator J(x): y -> A(y,x)x. Satisfies J(x)x = 0 and is
/// self-adjoint with respect to the Gram form.
MatrixXq jacobi(const CurvatureTensor& a, const VectorXq& x);

/// The symmetric table of polarized Jacobi operators J(e_a, e_b), with
/// <J(e_a,e_b) z, w> = (A(z,e_a,e_b,w) + A(z,e_b,e_a,w)) / 2. Since
/// J(x,y) is bilinear in (x,y), the table carries the full coefficient
/// system of the quadratic map x -> J(x): every identity in J that is
/// polynomial in the arguments is equivalent to its basis-indexed form.
class PolarizedJacobiTable {
 public:
  explicit PolarizedJacobiTable(const CurvatureTensor& a);

  Index dim() const { return dim_; }
  const MatrixXq& operator()(Index a, Index b) const {
    return table_[pair_index(a, b)];
  }

  /// J(x,y) = sum x_a y_b J(e_a,e_b), exact by bilinearity.
  MatrixXq polarized(const VectorXq& x, const VectorXq& y) const;
  /// J(x) = J(x,x).
  MatrixXq jacobi_of(const VectorXq& x) const;

  size_t pair_index(Index a, Index b) const;
  Index pair_count() const { return dim_ * (dim_ + 1) / 2; }

 private:
  Index dim_ = 0;
  std::vector<MatrixXq> table_;  // upper-triangular (a <= b) storage
};

/// Table of curvature operators A(e_a, e_b) for a < b; A is bilinear and
/// antisymmetric, so these determine A(x,y) for all x, y.
class CurvatureOperatorTable {
 public:
  explicit CurvatureOperatorTable(const CurvatureTensor& a);

  Index dim() const { return dim_; }
  /// Requires a < b.
  const MatrixXq& operator()(Index a, Index b) const;

 private:
  Index dim_ = 0;
  std::vector<MatrixXq> table_;
};

/// Curvature-type operator with only the torsion-free connection
/// symmetries: C(x,y)z = -C(y,x)z and the cyclic sum vanishes. Stored as
/// components C[i][j][k][l] = l-th coefficient of C(e_i,e_j)e_k.
class GeneralizedCurvatureOperator {
 public:
  GeneralizedCurvatureOperator(Index dim, Rank4Array components);

  static GeneralizedCurvatureOperator from_curvature_tensor(
      const CurvatureTensor& a);

  Index dim() const { return dim_; }
  const Rank4Array& components() const { return components_; }

 private:
  Index dim_;
  Rank4Array components_;
};

/// Validation for the two generalized symmetries.
SymmetryReport validate_generalized(const Rank4Array& c);

/// J_C(x): y -> C(y,x)x.
MatrixXq jacobi_of_generalized(const GeneralizedCurvatureOperator& c,
                               const VectorXq& x);

/// Pullback along a basis change: components A(P e_i, P e_j, P e_k, P e_l)
/// and Gram P^T G P. P must be invertible.
CurvatureTensor pull_back(const CurvatureTensor& a, const MatrixXq& p);

/// Pullback of raw components (no metric): staged one-slot contractions.
Rank4Array pull_back_components(const Rank4Array& a, const MatrixXq& p);

/// Canonical representative of the Z2-symmetry orbit of an index tuple:
/// the lexicographically least signed tuple. `sign` is +1 or -1 such that
/// A[tuple] = sign * A[canonical].
struct CanonicalIndex {
  std::array<Index, 4> indices;
  int sign;
};
CanonicalIndex canonical_orbit_index(Index i, Index j, Index k, Index l);

}  // namespace curvops

#endif
