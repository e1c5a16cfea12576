#ifndef CURVOPS_CONSTRUCTIONS_HPP
#define CURVOPS_CONSTRUCTIONS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "curvops/curvature.hpp"

// Executable constructors for the named example tensors: rank-one-skew
// tensors A_phi, Gauss-equation tensors of shape operators, the Clifford
// example on signature (4,4), the 14-dimensional Jacobi-Tsankov tensor,
// the totally isotropic dual-pair extension, constant curvature tensors,
// and seeded pseudo-random tensors via the Bianchi projector.

namespace curvops {

/// Endomorphism with <phi x, y> = -<x, phi y>; validated on construction.
struct SkewEndomorphism {
  SkewEndomorphism(InnerProductSpace space, MatrixXq matrix);
  InnerProductSpace space;
  MatrixXq matrix;
};

/// A_phi(x,y,z,w) = <phi x,z><phi y,w> - <phi y,z><phi x,w>
///                  + 2 <phi x,y><phi z,w>.
/// Signed so that the associated Jacobi operator is exactly
/// J_phi(x) y = -3 <y, phi x> phi x, which is the normalization the
/// Clifford example below depends on.
CurvatureTensor a_from_skew(const SkewEndomorphism& phi);

/// Gauss-equation tensor of a self-adjoint shape operator:
/// A_S(x,y,z,w) = <Sy,z><Sx,w> - <Sx,z><Sy,w>. S = id gives A_id.
CurvatureTensor a_from_symmetric(const InnerProductSpace& space,
                                 const MatrixXq& s);

/// Four anticommuting skew-adjoint generators on signature (4,4) with
/// e1^2 = e2^2 = id and e3^2 = e4^2 = -id. Fixed constants built from
/// Kronecker products of 2x2 blocks, not searched at runtime.
struct CliffordFamily {
  InnerProductSpace space;
  std::array<MatrixXq, 4> generators;

  MatrixXq phi1() const { return generators[0] + generators[2]; }
  MatrixXq phi2() const { return generators[1] + generators[3]; }
};

CliffordFamily clifford_family_44();

/// A = -1/3 (A_{phi1} + A_{phi2}) on the Clifford space: J_A(x)^2 = 0 for
/// every x, yet A is not Jacobi-Tsankov.
CurvatureTensor lemma22_tensor();

/// A triple with J(x1)J(x2)y != 0 = J(x2)J(x1)y for the tensor above,
/// found by the deterministic basis scan: x1 with phi2 phi1 x1 != 0,
/// y = phi1 x1, then x2 with <phi1 x1, phi2 x2> != 0.
struct NoncommutingTriple {
  VectorXq x1, x2, y;
};
NoncommutingTriple lemma22_noncommuting_triple();

/// The 14-dimensional Jacobi-Tsankov tensor of signature (8,6) that is
/// not 2-step Jacobi nilpotent; basis order
/// (e1..e4, ebar1..ebar4, etilde1..etilde4, f1, f2).
CurvatureTensor lemma32_tensor();

/// Totally isotropic dual-pair extension: W and a dual copy Wbar with
/// <e_i, ebar_j> = delta_ij, tensor A_W on pure-W slots and 0 on any
/// Wbar slot. a_w needs only curvature symmetries, no inner product.
CurvatureTensor dual_extension(Index k, const Rank4Array& a_w);

/// c * A_id with A_id(x,y,z,w) = <x,w><y,z> - <x,z><y,w>; in the
/// Riemannian case J(x) restricted to the orthogonal complement of x is
/// <x,x> c times the identity.
CurvatureTensor constant_curvature(const Rational& c,
                                   const InnerProductSpace& space);

/// Average over the eight signed Z2 symmetries (skew pairs, pair swap).
Rank4Array pair_symmetrize(const Rank4Array& raw);

/// Projection of a pair-symmetric array onto the Bianchi kernel:
/// A - b(A)/3 with b the cyclic sum. Idempotent and fixes every valid
/// curvature array.
Rank4Array bianchi_project(const Rank4Array& pair_symmetric);

/// Same projection for generalized curvature components (skew in the
/// first two slots, cyclic sum zero).
Rank4Array generalized_bianchi_project(const Rank4Array& skew12);

/// Deterministic pseudo-random valid curvature components: sparse random
/// entries pushed through pair_symmetrize and bianchi_project.
Rank4Array random_components(std::uint64_t seed, Index dim, int orbit_count);

CurvatureTensor random_tensor(std::uint64_t seed, const InnerProductSpace&,
                              int orbit_count);

/// Orthogonal direct sum of two tensors: block Gram, block components.
CurvatureTensor direct_sum(const CurvatureTensor& a, const CurvatureTensor& b);

/// True iff no nonzero w has A_W(w, a, b, .) + A_W(w, b, a, .) = 0 for
/// all a, b; exactly when the dual extension of a_w has common Jacobi
/// kernel equal to the Wbar factor, so decomposition recovers dim W = k.
bool components_have_trivial_jacobi_kernel(const Rank4Array& a_w);

/// diag(-1 x p, +1 x q) inner product space.
InnerProductSpace diagonal_space(Index p, Index q);

/// Gauss tensor of the diagonal shape operator with the given spectrum,
/// on Euclidean space.
CurvatureTensor gauss_tensor(const std::vector<Rational>& spectrum);

/// Resolves a stable example identifier:
///   "lemma-2.2", "lemma-3.2", "defn-1.8:k=<n>:seed=<s>",
///   "const-curv:c=<a/b>:sig=<p>,<q>", "gauss:spectrum=<l1>,<l2>,...".
/// Throws ParseError for unknown or malformed ids.
CurvatureTensor example_by_id(const std::string& id);

}  // namespace curvops

#endif
