#ifndef CURVOPS_STRUCTURE_HPP
#define CURVOPS_STRUCTURE_HPP

#include <optional>
#include <string>

#include "curvops/properties.hpp"

// Structure theory of 2-step Jacobi nilpotent tensors: the span of all
// Jacobi images, the common Jacobi kernel, the constructive splitting
// V = (W + Wbar) + T into a dual-pair extension and a flat factor, and
// the 14-vector witness set that bounds the dimension of a
// Jacobi-Tsankov tensor with J(x)J(y) != 0 from below.

namespace curvops {

/// Basis (columns) of span{ J(e_a,e_b) e_c } over all a, b, c; equals
/// span{ J(v1) v2 } by bilinearity. Deterministic: candidates enter in
/// lexicographic (a,b,c) order and are kept when they enlarge the span.
MatrixXq jacobi_image_span(const CurvatureTensor& a);
MatrixXq jacobi_image_span(const CurvatureTensor& a,
                           const PolarizedJacobiTable& table);

/// Basis (columns) of { v : J(x) v = 0 for all x }, the intersection of
/// the kernels of the polarized operators.
MatrixXq jacobi_common_kernel(const CurvatureTensor& a);
MatrixXq jacobi_common_kernel(const CurvatureTensor& a,
                              const PolarizedJacobiTable& table);

/// Certificate splitting of a 2-step Jacobi nilpotent tensor:
/// columns of w_basis and wbar_basis pair as <w_i, wbar_j> = delta_ij
/// with both families totally isotropic, t_basis spans a flat factor
/// orthogonal to both, and a_w holds the components on the W block.
/// certificate = [w_basis | wbar_basis | t_basis] as one basis change.
struct DecompositionResult {
  MatrixXq w_basis;
  MatrixXq wbar_basis;
  MatrixXq t_basis;
  Rank4Array a_w;
  MatrixXq certificate;
};

/// Constructive direction of the classification: requires (and checks)
/// 2-step Jacobi nilpotency, then builds the decomposition and verifies
/// every claimed relation exactly, raising InternalConsistencyError on
/// any failure.
DecompositionResult decompose_2step(const CurvatureTensor& a);

/// Re-validates every DecompositionResult invariant from scratch against
/// the tensor: the dual-pair relations, orthogonality and
/// non-degeneracy of the flat factor, and the transformed block form of
/// Gram matrix and components.
bool verify_decomposition(const CurvatureTensor& a,
                          const DecompositionResult& result);

/// The 14-vector configuration extracted from x, y, w with
/// <J(x)J(y)w, w> != 0 on a Jacobi-Tsankov tensor.
struct WitnessSet {
  VectorXq x, y, w;
  Rational pairing;  // <J(x)J(y)w, w>
  // rows indexed 2..5 as stored 0..3: e = (JxJyw, Jxw, Jyw, Jxyw),
  // f = (JyJwx, Jyx, Jwx, Jywx), g = (JwJxy, Jwy, Jxy, Jwxy)
  std::array<VectorXq, 4> e, f, g;
  Index independence_rank = 0;

  /// The independence set S = {w, x, y, e2..e5, f2..f5, g2..g4}; g5 is
  /// recorded but excluded.
  MatrixXq independence_set() const;
};

enum class WitnessOutcome { kFound, kNoneTwoStep, kSearchExhausted };

struct WitnessResult {
  WitnessOutcome outcome;
  std::optional<WitnessSet> witness;
};

/// Returns kNoneTwoStep iff the tensor is 2-step Jacobi nilpotent;
/// otherwise hunts (x, y) with J(x)J(y) != 0 among small rational
/// combinations of basis pairs, produces w by the quadratic perturbation
/// w -> w + eps f when no basis vector pairs nontrivially, and assembles
/// the witness set. Throws PreconditionError when the tensor is not
/// Jacobi-Tsankov.
WitnessResult lemma31_witness(const CurvatureTensor& a);

/// The six operator relations satisfied by any Jacobi-Tsankov tensor for
/// every pair (x, y):
///   Jx^2 = 0, Jy^2 = 0, JxJy = JyJx, JxJxy = JxyJx = 0,
///   JyJxy = JxyJy = 0, Jxy^2 = -1/2 JxJy.
struct RelationsReport {
  bool ok = true;
  std::string violated;
};
RelationsReport verify_relations_table(const CurvatureTensor& a,
                                       const VectorXq& x, const VectorXq& y);

/// The cyclic pairing equalities
/// <J(x)J(y)w, w> = <J(y)J(w)x, x> = <J(w)J(x)y, y>.
struct MeanPairings {
  Rational xy_w, yw_x, wx_y;
  bool equal() const { return xy_w == yw_x && yw_x == wx_y; }
};
MeanPairings mean_pairing_identities(const CurvatureTensor& a,
                                     const VectorXq& x, const VectorXq& y,
                                     const VectorXq& w);

}  // namespace curvops

#endif
