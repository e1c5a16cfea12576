#include <doctest.h>

#include "curvops/constructions.hpp"
#include "curvops/metric.hpp"
#include "curvops/properties.hpp"
#include "oracles.hpp"

using namespace curvops;
using Poly = MultivariatePolynomial;

namespace {

/// psi grid for p = 2 with psi_11 = x2^2, all other entries zero.
std::vector<Poly> psi_x2_squared() {
  std::vector<Poly> psi(4, Poly(2));
  psi[0] = Poly::monomial(2, {0, 2}, 1);
  return psi;
}

VectorXq point4(long x1, long x2, long y1, long y2) {
  VectorXq p(4);
  p << x1, x2, y1, y2;
  return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic, derivatives, evaluation") {
  const Poly x = Poly::variable(2, 0);
  const Poly y = Poly::variable(2, 1);
  const Poly f = x * x * y + y * rat(-1, 2);
  CHECK(f.derivative(0) == Poly::monomial(2, {1, 1}, 2));
  CHECK(f.derivative(1) == x * x + Poly::constant(2, rat(-1, 2)));
  CHECK(f.derivative(0).derivative(1) == Poly::monomial(2, {1, 0}, 2));
  VectorXq at(2);
  at << rat(1, 2), 3;
  CHECK(f.evaluate(at) == rat(3, 4) - rat(3, 2));
  CHECK((f - f).is_zero());
  CHECK(f.total_degree() == 3);
  CHECK((x * y).depends_on_var_at_least(1));
  CHECK(!(x * x).depends_on_var_at_least(1));
}

TEST_CASE("block metric determinant is constant +-1") {
  const PolynomialMetric metric = psi_metric(2, psi_x2_squared());
  const Poly det = poly_determinant(metric.entries(), 4);
  // [[psi, I], [I, 0]] has determinant independent of psi
  const PolynomialMetric flat = psi_metric(2, std::vector<Poly>(4, Poly(2)));
  const Poly det_flat = poly_determinant(flat.entries(), 4);
  CHECK(det == det_flat);
  CHECK(det.total_degree() == 0);
  const Rational value = det.evaluate(VectorXq::Zero(4));
  CHECK((value == 1 || value == -1));
}

TEST_CASE("psi metric structure and validation") {
  const PolynomialMetric flat = psi_metric(2, std::vector<Poly>(4, Poly(2)));
  const MatrixXq g = flat.gram_at(point4(1, 2, 3, 4));
  CHECK(g == MatrixXq(InnerProductSpace::hyperbolic_pairs(2).gram()));

  // signature is (p,p) at every sample point
  const PolynomialMetric metric = psi_metric(2, psi_x2_squared());
  for (const VectorXq& pt : oracles::sample_points(4, 5))
    CHECK(signature_of(metric.gram_at(pt)) == Signature{2, 2, 0});

  std::vector<Poly> asym(4, Poly(2));
  asym[1] = Poly::variable(2, 0);  // psi_12 != psi_21
  CHECK_THROWS_AS(psi_metric(2, asym), SymmetryError);

  std::vector<Poly> ydep(4, Poly(4));
  ydep[0] = Poly::variable(4, 2);  // depends on y_1
  CHECK_THROWS_AS(psi_metric(2, ydep), PreconditionError);

  CHECK_THROWS_AS(psi_metric(1, std::vector<Poly>(1, Poly(1))),
                  PreconditionError);
}

TEST_CASE("christoffel symbols of the x2^2 fixture") {
  const PolynomialMetric metric = psi_metric(2, psi_x2_squared());
  const VectorXq pt = point4(0, 1, 0, 0);
  const Rank3Array gamma = christoffel_first(metric, pt);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      for (Index k = 0; k < 4; ++k) {
        Rational want = 0;
        if (i == 0 && j == 0 && k == 1) want = -1;
        if ((i == 0 && j == 1 && k == 0) || (i == 1 && j == 0 && k == 0))
          want = 1;
        CHECK(gamma.at(i, j, k) == want);
      }

  // constant metric: all symbols vanish
  const PolynomialMetric flat = psi_metric(3, std::vector<Poly>(9, Poly(3)));
  const Rank3Array zero = christoffel_first(flat, VectorXq::Zero(6));
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j)
      for (Index k = 0; k < 6; ++k) CHECK(is_zero(zero.at(i, j, k)));

  // any y-index kills the symbol for psi metrics
  const Rank3Array g2 = christoffel_first(metric, point4(2, -3, 1, 5));
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      for (Index k = 0; k < 4; ++k)
        if (i >= 2 || j >= 2 || k >= 2) CHECK(is_zero(g2.at(i, j, k)));
}

TEST_CASE("curvature of the flat and x2^2 fixtures") {
  const PolynomialMetric flat = psi_metric(2, std::vector<Poly>(4, Poly(2)));
  CHECK(curvature_at(flat, point4(1, -2, 0, 3)).components() == Rank4Array(4));

  const PolynomialMetric metric = psi_metric(2, psi_x2_squared());
  const CurvatureTensor a = curvature_at(metric, point4(0, 1, 0, 0));
  CHECK(validate_symmetries(a).ok);
  // the single nonzero orbit A(dx1, dx2, dx1, dx2) has value of size 1
  CHECK(a.at(0, 1, 0, 1) == 1);
  Index nonzero_orbits = 0;
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      for (Index k = 0; k < 4; ++k)
        for (Index l = 0; l < 4; ++l) {
          if (is_zero(a.at(i, j, k, l))) continue;
          if (canonical_orbit_index(i, j, k, l).indices ==
              std::array<Index, 4>{i, j, k, l})
            ++nonzero_orbits;
        }
  CHECK(nonzero_orbits == 1);
}

TEST_CASE("curvature matches the symbolic oracle") {
  VectorXq pt(4);
  pt << 1, -2, 3, rat(1, 2);
  for (std::uint64_t seed : {11u, 12u}) {
    const auto psi = oracles::random_psi(seed, 2);
    const CurvatureTensor a = curvature_at(psi_metric(2, psi), pt);
    const Rank4Array want = oracles::symbolic_psi_curvature_at(2, psi, pt);
    CHECK(a.components() == want);
  }
  const auto fixture = psi_x2_squared();
  for (const VectorXq& sample : oracles::sample_points(4, 3))
    CHECK(curvature_at(psi_metric(2, fixture), sample).components() ==
          oracles::symbolic_psi_curvature_at(2, fixture, sample));
}

TEST_CASE("sign convention pin: diag(1, 1 + x1^2) at the origin") {
  // Gaussian curvature of this surface at x1 = 0 is -1, so the tensor
  // must equal -A_id there under the fixed orientation of A_id
  std::vector<Poly> grid(4, Poly(2));
  grid[0] = Poly::constant(2, 1);
  grid[3] = Poly::constant(2, 1) + Poly::monomial(2, {2, 0}, 1);
  const PolynomialMetric surface(2, grid);
  const CurvatureTensor a = curvature_at(surface, VectorXq::Zero(2));
  CHECK(constant_sectional_curvature(a) == Rational(-1));
}

TEST_CASE("psi curvature blocks: x-only components, images in the y span") {
  const auto psi = oracles::random_psi(21, 3);
  const PolynomialMetric metric = psi_metric(3, psi);
  std::mt19937_64 rng(55);
  for (const VectorXq& pt : oracles::sample_points(6, 3)) {
    const CurvatureTensor a = curvature_at(metric, pt);
    for (Index i = 0; i < 6; ++i)
      for (Index j = 0; j < 6; ++j)
        for (Index k = 0; k < 6; ++k)
          for (Index l = 0; l < 6; ++l)
            if (i >= 3 || j >= 3 || k >= 3 || l >= 3)
              CHECK(is_zero(a.at(i, j, k, l)));
    for (int t = 0; t < 3; ++t) {
      const VectorXq u = oracles::random_half_integer_vector(rng, 6);
      const VectorXq v = oracles::random_half_integer_vector(rng, 6);
      const MatrixXq op = curvature_operator(a, u, v);
      for (Index r = 0; r < 3; ++r)   // x-rows of the image vanish
        for (Index c = 0; c < 6; ++c) CHECK(is_zero(op(r, c)));
    }
  }
}

TEST_CASE("curvature commutes with affine shifts of the psi entries") {
  const auto psi = oracles::random_psi(31, 2);
  const PolynomialMetric metric = psi_metric(2, psi);
  const Poly x1 = Poly::variable(2, 0), x2 = Poly::variable(2, 1);
  for (long c : {1L, -2L, 3L}) {
    // substitute x -> x + c by expanding (binomials stay exact)
    std::vector<Poly> shifted(4, Poly(2));
    for (size_t e = 0; e < 4; ++e) {
      Poly acc(2);
      for (const auto& [exps, coeff] : psi[e].terms()) {
        Poly term = Poly::constant(2, coeff);
        const Poly sx1 = x1 + Poly::constant(2, c);
        const Poly sx2 = x2 + Poly::constant(2, c);
        for (unsigned rep = 0; rep < exps[0]; ++rep) term = term * sx1;
        for (unsigned rep = 0; rep < exps[1]; ++rep) term = term * sx2;
        acc += term;
      }
      shifted[e] = acc;
    }
    const PolynomialMetric shifted_metric = psi_metric(2, shifted);
    for (const VectorXq& pt : oracles::sample_points(4, 2)) {
      VectorXq moved = pt;
      moved(0) += c;
      moved(1) += c;
      CHECK(curvature_at(shifted_metric, pt).components() ==
            curvature_at(metric, moved).components());
    }
  }
}

TEST_CASE("theorem 1.10 family verification") {
  // flat: everything passes with zero curvature
  const PsiFamilyReport flat =
      verify_thm_1_10(2, std::vector<Poly>(4, Poly(2)),
                      oracles::sample_points(4, 3));
  CHECK(flat.all_ok());
  for (const PointVerdict& v : flat.points) CHECK(!v.nonzero_curvature);

  // the x2^2 fixture passes with nonzero curvature where x2 != 0
  const PsiFamilyReport fixture =
      verify_thm_1_10(2, psi_x2_squared(), {point4(0, 1, 0, 0),
                                            point4(3, -2, 1, 1),
                                            point4(1, 1, 2, 2)});
  CHECK(fixture.all_ok());
  for (const PointVerdict& v : fixture.points) CHECK(v.nonzero_curvature);

  // seeded degree <= 3 psi grids for p = 2 and 3
  for (Index p : {2, 3})
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const PsiFamilyReport rep = verify_thm_1_10(
          p, oracles::random_psi(seed, p), oracles::sample_points(2 * p, 3));
      CHECK_MESSAGE(rep.all_ok(), "p=" << p << " seed=" << seed);
    }
}

TEST_CASE("degenerate evaluation points are rejected") {
  // dim-2 metric degenerating at x1 = 0
  std::vector<Poly> grid(4, Poly(2));
  grid[0] = Poly::variable(2, 0);
  grid[3] = Poly::constant(2, 1);
  const PolynomialMetric metric(2, grid);
  CHECK_THROWS_AS(christoffel_first(metric, VectorXq::Zero(2)),
                  PreconditionError);
  CHECK_THROWS_AS(curvature_at(metric, VectorXq::Zero(2)), PreconditionError);
}
