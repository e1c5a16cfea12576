#include <doctest.h>

#include <random>

#include "curvops/constructions.hpp"
#include "curvops/properties.hpp"
#include "oracles.hpp"

using namespace curvops;

namespace {

struct NamedFixture {
  std::string name;
  CurvatureTensor tensor;
};

std::vector<NamedFixture> oracle_fixtures() {
  std::vector<NamedFixture> out;
  out.push_back({"zero-3", zero_tensor(InnerProductSpace::euclidean(3))});
  out.push_back({"const-2", constant_curvature(2, InnerProductSpace::euclidean(4))});
  out.push_back({"const-neg", constant_curvature(rat(-1, 2), diagonal_space(2, 2))});
  out.push_back({"gauss-mixed", gauss_tensor({1, 2, 0})});
  out.push_back({"gauss-rank1", gauss_tensor({0, 0, 0, 5})});
  out.push_back({"defn18-k2", example_by_id("defn-1.8:k=2:seed=5")});
  out.push_back({"defn18-k3", example_by_id("defn-1.8:k=3:seed=1")});
  out.push_back({"random-4", random_tensor(101, diagonal_space(1, 3), 6)});
  out.push_back({"random-5", random_tensor(55, diagonal_space(2, 3), 8)});
  out.push_back({"random-6", random_tensor(7, diagonal_space(3, 3), 8)});
  return out;
}

CurvatureTensor scaled(const CurvatureTensor& a, const Rational& lambda) {
  Rank4Array comps = a.components();
  comps *= lambda;
  return CurvatureTensor(a.space(), std::move(comps));
}

}  // namespace

TEST_CASE("jacobi-tsankov: named examples") {
  CHECK(is_jacobi_tsankov(zero_tensor(InnerProductSpace::euclidean(4))).holds);
  CHECK(is_jacobi_tsankov(lemma32_tensor()).holds);
  const CurvatureTensor l22 = lemma22_tensor();
  const PropertyVerdict v = is_jacobi_tsankov(l22);
  CHECK(!v.holds);
  REQUIRE(v.witness.has_value());
  CHECK(recheck_witness(l22, v));
}

TEST_CASE("2-step jacobi nilpotency: named examples") {
  for (int seed : {1, 2, 3})
    for (int k : {2, 3}) {
      const CurvatureTensor a = example_by_id(
          "defn-1.8:k=" + std::to_string(k) + ":seed=" + std::to_string(seed));
      CHECK(is_2step_jacobi_nilpotent(a).holds);
    }
  const CurvatureTensor l32 = lemma32_tensor();
  const PropertyVerdict v = is_2step_jacobi_nilpotent(l32);
  CHECK(!v.holds);
  REQUIRE(v.witness.has_value());
  CHECK(recheck_witness(l32, v));
  CHECK(is_2step_jacobi_nilpotent(zero_tensor(diagonal_space(2, 2))).holds);
}

TEST_CASE("jacobi square zero: named examples") {
  CHECK(jacobi_square_zero(lemma22_tensor()).holds);
  CHECK(jacobi_square_zero(lemma32_tensor()).holds);
  const CurvatureTensor round = constant_curvature(3, InnerProductSpace::euclidean(3));
  const PropertyVerdict v = jacobi_square_zero(round);
  CHECK(!v.holds);
  REQUIRE(v.witness.has_value());
  REQUIRE(!v.witness->vectors.empty());
  CHECK(recheck_witness(round, v));
}

TEST_CASE("orthogonal jacobi-tsankov: constant curvature and Gauss spectra") {
  for (long c : {1L, -2L})
    for (Index m : {3, 4, 5}) {
      const CurvatureTensor a =
          constant_curvature(c, InnerProductSpace::euclidean(m));
      const PropertyVerdict v = is_orthogonally_jacobi_tsankov(a);
      CHECK(v.holds);
      CHECK(v.certificate != nullptr);
      // c != 0 constant curvature commutes only orthogonally
      CHECK(!is_jacobi_tsankov(a).holds);
    }
  CHECK(is_orthogonally_jacobi_tsankov(gauss_tensor({0, 0, 0, 7})).holds);
  CHECK(is_orthogonally_jacobi_tsankov(
            gauss_tensor({rat(3, 2), rat(3, 2), rat(3, 2)}))
            .holds);
  for (Index m : {3, 4, 5}) {
    std::vector<Rational> spectrum(static_cast<size_t>(m), Rational(0));
    spectrum[0] = 1;
    spectrum[1] = 2;
    const CurvatureTensor a = gauss_tensor(spectrum);
    const PropertyVerdict v = is_orthogonally_jacobi_tsankov(a);
    CHECK(!v.holds);
    REQUIRE(v.witness.has_value());
    REQUIRE(v.witness->vectors.size() == 2);
    // the witness pair is exactly orthogonal with nonzero commutator
    CHECK(is_zero(a.space().inner(v.witness->vectors[0], v.witness->vectors[1])));
    CHECK(recheck_witness(a, v));
  }
}

TEST_CASE("skew-tsankov and 2-step skew: named examples") {
  CHECK(is_skew_tsankov(zero_tensor(diagonal_space(1, 2))).holds);
  CHECK(is_skew_tsankov(example_by_id("defn-1.8:k=2:seed=5")).holds);
  CHECK(is_2step_skew_nilpotent(example_by_id("defn-1.8:k=3:seed=4")).holds);

  const CurvatureTensor round = constant_curvature(1, InnerProductSpace::euclidean(3));
  const PropertyVerdict v = is_skew_tsankov(round);
  CHECK(!v.holds);
  CHECK(recheck_witness(round, v));

  const CurvatureTensor l22 = lemma22_tensor();
  const PropertyVerdict w = is_2step_skew_nilpotent(l22);
  CHECK(!w.holds);
  CHECK(recheck_witness(l22, w));
}

TEST_CASE("constant sectional curvature detection") {
  CHECK(constant_sectional_curvature(zero_tensor(diagonal_space(2, 1))) ==
        Rational(0));
  for (const Rational& c : {Rational(1), Rational(-2), rat(5, 3)}) {
    const CurvatureTensor a = constant_curvature(c, InnerProductSpace::euclidean(4));
    CHECK(constant_sectional_curvature(a) == c);
    const CurvatureTensor b = constant_curvature(c, diagonal_space(2, 2));
    CHECK(constant_sectional_curvature(b) == c);
  }
  CHECK(!constant_sectional_curvature(lemma32_tensor()).has_value());
  CHECK(!constant_sectional_curvature(gauss_tensor({1, 2, 0})).has_value());
}

TEST_CASE("implication audit: profiles and chain consistency") {
  const AuditResult defn = implication_audit(example_by_id("defn-1.8:k=2:seed=5"));
  CHECK(defn.two_step_skew.holds);
  CHECK(defn.two_step_jacobi.holds);
  CHECK(defn.jacobi_tsankov.holds);
  CHECK(defn.orthogonal_jacobi_tsankov.holds);
  CHECK(defn.skew_tsankov.holds);

  const AuditResult l32 = implication_audit(lemma32_tensor());
  CHECK(l32.jacobi_tsankov.holds);
  CHECK(!l32.two_step_jacobi.holds);
  CHECK(l32.square_zero.holds);

  // square-zero holds while plain commutativity fails: the converse of
  // the nilpotency implication is false
  const AuditResult l22 = implication_audit(lemma22_tensor());
  CHECK(l22.square_zero.holds);
  CHECK(!l22.jacobi_tsankov.holds);
}

TEST_CASE("checker verdicts agree with brute force on random vectors") {
  std::mt19937_64 rng(2024);
  const int trials = 200;
  for (const NamedFixture& fx : oracle_fixtures()) {
    CAPTURE(fx.name);
    const CurvatureTensor& a = fx.tensor;
    REQUIRE(a.dim() <= 6);

    const PropertyVerdict jt = is_jacobi_tsankov(a);
    const auto jt_bf = oracles::bf_jacobi_tsankov(a, rng, trials);
    if (jt.holds)
      CHECK(!jt_bf.has_value());
    else
      CHECK((jt_bf.has_value() || recheck_witness(a, jt)));

    const PropertyVerdict ts = is_2step_jacobi_nilpotent(a);
    const auto ts_bf = oracles::bf_2step_jacobi(a, rng, trials);
    if (ts.holds)
      CHECK(!ts_bf.has_value());
    else
      CHECK((ts_bf.has_value() || recheck_witness(a, ts)));

    const PropertyVerdict sq = jacobi_square_zero(a);
    const auto sq_bf = oracles::bf_square_zero(a, rng, trials);
    if (sq.holds)
      CHECK(!sq_bf.has_value());
    else
      CHECK((sq_bf.has_value() || recheck_witness(a, sq)));

    const PropertyVerdict orth = is_orthogonally_jacobi_tsankov(a);
    const auto orth_bf = oracles::bf_orthogonal_jacobi_tsankov(a, rng, trials);
    if (orth.holds)
      CHECK(!orth_bf.has_value());
    else
      CHECK((orth_bf.has_value() || recheck_witness(a, orth)));

    const PropertyVerdict sk = is_skew_tsankov(a);
    const auto sk_bf = oracles::bf_skew_tsankov(a, rng, trials);
    if (sk.holds)
      CHECK(!sk_bf.has_value());
    else
      CHECK((sk_bf.has_value() || recheck_witness(a, sk)));

    const PropertyVerdict sk2 = is_2step_skew_nilpotent(a);
    const auto sk2_bf = oracles::bf_2step_skew(a, rng, trials);
    if (sk2.holds)
      CHECK(!sk2_bf.has_value());
    else
      CHECK((sk2_bf.has_value() || recheck_witness(a, sk2)));
  }
}

TEST_CASE("verdicts are invariant under tensor scaling") {
  for (const NamedFixture& fx : oracle_fixtures()) {
    CAPTURE(fx.name);
    const AuditResult base = implication_audit(fx.tensor);
    for (long lambda : {2L, -3L}) {
      const AuditResult s = implication_audit(scaled(fx.tensor, lambda));
      CHECK(s.jacobi_tsankov.holds == base.jacobi_tsankov.holds);
      CHECK(s.two_step_jacobi.holds == base.two_step_jacobi.holds);
      CHECK(s.square_zero.holds == base.square_zero.holds);
      CHECK(s.orthogonal_jacobi_tsankov.holds ==
            base.orthogonal_jacobi_tsankov.holds);
      CHECK(s.skew_tsankov.holds == base.skew_tsankov.holds);
      CHECK(s.two_step_skew.holds == base.two_step_skew.holds);
    }
  }
}

TEST_CASE("verdicts are invariant under change of basis") {
  std::mt19937_64 rng(31);
  for (const NamedFixture& fx : oracle_fixtures()) {
    if (fx.tensor.dim() > 5) continue;
    CAPTURE(fx.name);
    const AuditResult base = implication_audit(fx.tensor);
    const Index m = fx.tensor.dim();
    for (int trial = 0; trial < 5; ++trial) {
      MatrixXq p(m, m);
      do {
        for (Index i = 0; i < m; ++i)
          for (Index j = 0; j < m; ++j)
            p(i, j) = rat(static_cast<long>(rng() % 5) - 2,
                          1 + static_cast<long>(rng() % 2));
      } while (rank_of(p) != m);
      const AuditResult t = implication_audit(pull_back(fx.tensor, p));
      CHECK(t.jacobi_tsankov.holds == base.jacobi_tsankov.holds);
      CHECK(t.two_step_jacobi.holds == base.two_step_jacobi.holds);
      CHECK(t.square_zero.holds == base.square_zero.holds);
      CHECK(t.orthogonal_jacobi_tsankov.holds ==
            base.orthogonal_jacobi_tsankov.holds);
      CHECK(t.skew_tsankov.holds == base.skew_tsankov.holds);
      CHECK(t.two_step_skew.holds == base.two_step_skew.holds);
    }
  }
}

TEST_CASE("failing verdicts always carry re-evaluable witnesses") {
  std::vector<CurvatureTensor> fixtures;
  fixtures.push_back(lemma22_tensor());
  fixtures.push_back(lemma32_tensor());
  fixtures.push_back(gauss_tensor({1, 2, 0, 0}));
  fixtures.push_back(constant_curvature(2, InnerProductSpace::euclidean(4)));
  for (const CurvatureTensor& a : fixtures) {
    const AuditResult audit = implication_audit(a);
    for (const PropertyVerdict* v : audit.ordered()) {
      if (v->holds) continue;
      REQUIRE_MESSAGE(v->witness.has_value(), v->property);
      CHECK_MESSAGE(!is_zero(v->witness->value), v->property);
      CHECK_MESSAGE(recheck_witness(a, *v), v->property);
    }
  }
}
