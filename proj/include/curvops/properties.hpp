#ifndef CURVOPS_PROPERTIES_HPP
#define CURVOPS_PROPERTIES_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvops/curvature.hpp"

// Exact decision procedures for the curvature-operator commutativity and
// nilpotency conditions. Every check is reduced to a finite basis-indexed
// computation: J(x) = sum_{a,b} x_a x_b J(e_a,e_b) exactly, so an identity
// that is polynomial in its vector arguments holds for all vectors iff its
// symmetrized basis coefficients vanish. Failing verdicts always carry a
// witness that re-evaluates to a nonzero exact value.

namespace curvops {

struct FailureWitness {
  /// Basis tuple (a,b,c,d) for commutator/product/square witnesses.
  std::array<Index, 4> indices{-1, -1, -1, -1};
  /// Offending entry of the witness matrix and its exact nonzero value.
  Index row = -1, col = -1;
  Rational value;
  /// Explicit vectors: {x} for square witnesses, {x, y} for orthogonal pairs.
  std::vector<VectorXq> vectors;
  /// One of "commutator", "product", "square", "orthogonal-pair".
  std::string kind;
};

/// Bidegree-(1,1) endomorphism-valued factor G with
/// [J(x),J(y)] = <x,y> G(x,y); blocks indexed a*dim + c.
using OrthogonalCertificate = std::vector<MatrixXq>;

struct PropertyVerdict {
  std::string property;
  bool holds = true;
  std::optional<FailureWitness> witness;
  std::shared_ptr<const OrthogonalCertificate> certificate;
  /// Number of distinct basis identities evaluated.
  Index identities_checked = 0;
};

/// J(x)J(y) = J(y)J(x) for all x, y.
PropertyVerdict is_jacobi_tsankov(const CurvatureTensor& a);
PropertyVerdict is_jacobi_tsankov(const CurvatureTensor& a,
                                  const PolarizedJacobiTable& table);

/// J(x)J(y) = 0 for all x, y.
PropertyVerdict is_2step_jacobi_nilpotent(const CurvatureTensor& a);
PropertyVerdict is_2step_jacobi_nilpotent(const CurvatureTensor& a,
                                          const PolarizedJacobiTable& table);

/// J(x)^2 = 0 as a degree-4 polynomial identity in x, decided by full
/// symmetrization over index multisets.
PropertyVerdict jacobi_square_zero(const CurvatureTensor& a);
PropertyVerdict jacobi_square_zero(const CurvatureTensor& a,
                                   const PolarizedJacobiTable& table);

/// J(x)J(y) = J(y)J(x) for all orthogonal x, y. Decided exactly as a
/// polynomial divisibility question: the commutator field [J(x),J(y)]
/// (bidegree (2,2)) vanishes on the quadric <x,y> = 0 iff it is divisible
/// by <x,y>, iff an endomorphism-valued bidegree-(1,1) factor G exists.
/// The candidate G is produced in closed form by contracting the
/// coefficient equations with the inverse Gram matrix and then verified
/// against every coefficient. Holds carries G; fails carries an explicit
/// orthogonal rational pair with nonzero commutator.
PropertyVerdict is_orthogonally_jacobi_tsankov(const CurvatureTensor& a);
PropertyVerdict is_orthogonally_jacobi_tsankov(
    const CurvatureTensor& a, const PolarizedJacobiTable& table);

/// A(x1,x2)A(x3,x4) = A(x3,x4)A(x1,x2) for all inputs.
PropertyVerdict is_skew_tsankov(const CurvatureTensor& a);
PropertyVerdict is_skew_tsankov(const CurvatureTensor& a,
                                const CurvatureOperatorTable& table);

/// A(x1,x2)A(x3,x4) = 0 for all inputs.
PropertyVerdict is_2step_skew_nilpotent(const CurvatureTensor& a);
PropertyVerdict is_2step_skew_nilpotent(const CurvatureTensor& a,
                                        const CurvatureOperatorTable& table);

/// Returns c iff A equals c * A_id entrywise, where
/// A_id(x,y,z,w) = <x,w><y,z> - <x,z><y,w>.
std::optional<Rational> constant_sectional_curvature(const CurvatureTensor& a);

/// Recomputes a failing verdict's witness from the tensor alone (no shared
/// tables) and confirms the reported entry value.
bool recheck_witness(const CurvatureTensor& a, const PropertyVerdict& verdict);

/// All checkers on one tensor, with the definitional implications
/// asserted: 2-step skew => 2-step Jacobi (and trivially => skew-Tsankov),
/// 2-step Jacobi => Jacobi-Tsankov => orthogonally Jacobi-Tsankov.
/// A violated implication raises InternalConsistencyError.
struct AuditResult {
  PropertyVerdict two_step_skew;
  PropertyVerdict two_step_jacobi;
  PropertyVerdict jacobi_tsankov;
  PropertyVerdict square_zero;
  PropertyVerdict orthogonal_jacobi_tsankov;
  PropertyVerdict skew_tsankov;
  std::optional<Rational> constant_curvature;

  std::vector<const PropertyVerdict*> ordered() const;
};

AuditResult implication_audit(const CurvatureTensor& a);

}  // namespace curvops

#endif
