#include "curvops/constructions.hpp"

#include <random>
#include <sstream>

namespace curvops {

SkewEndomorphism::SkewEndomorphism(InnerProductSpace sp, MatrixXq m)
    : space(std::move(sp)), matrix(std::move(m)) {
  if (matrix.rows() != space.dim() || matrix.cols() != space.dim())
    throw PreconditionError("skew endomorphism: size mismatch");
  const MatrixXq lowered = space.gram() * matrix;
  if (MatrixXq(lowered.transpose()) != MatrixXq(-lowered))
    throw SymmetryError("endomorphism is not skew-adjoint for the form");
}

CurvatureTensor a_from_skew(const SkewEndomorphism& phi) {
  const Index m = phi.space.dim();
  // B(i,j) = <phi e_i, e_j>, antisymmetric
  const MatrixXq b = phi.matrix.transpose() * phi.space.gram();
  Rank4Array a(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l)
          a.at(i, j, k, l) =
              b(i, k) * b(j, l) - b(j, k) * b(i, l) + 2 * b(i, j) * b(k, l);
  return CurvatureTensor(phi.space, std::move(a));
}

CurvatureTensor a_from_symmetric(const InnerProductSpace& space,
                                 const MatrixXq& s) {
  const Index m = space.dim();
  if (s.rows() != m || s.cols() != m)
    throw PreconditionError("shape operator: size mismatch");
  const MatrixXq lowered = space.gram() * s;
  if (MatrixXq(lowered.transpose()) != lowered)
    throw SymmetryError("shape operator is not self-adjoint for the form");
  const MatrixXq q = s.transpose() * space.gram();  // q(i,j) = <S e_i, e_j>
  Rank4Array a(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l)
          a.at(i, j, k, l) = q(j, k) * q(i, l) - q(i, k) * q(j, l);
  return CurvatureTensor(space, std::move(a));
}

namespace {

MatrixXq kron(const MatrixXq& a, const MatrixXq& b) {
  MatrixXq out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MatrixXq two_by_two(long a, long b, long c, long d) {
  MatrixXq m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

CliffordFamily clifford_family_44() {
  const MatrixXq id = two_by_two(1, 0, 0, 1);
  const MatrixXq p = two_by_two(1, 0, 0, -1);   // symmetric, squares to id
  const MatrixXq q = two_by_two(0, 1, 1, 0);    // symmetric, squares to id
  const MatrixXq r = two_by_two(0, -1, 1, 0);   // antisymmetric, squares to -id
  InnerProductSpace space(kron(r, kron(r, q)));  // signature (4,4)
  std::array<MatrixXq, 4> gens = {
      kron(q, kron(id, id)),  // squares to +id
      kron(p, kron(id, id)),  // squares to +id
      kron(r, kron(q, p)),    // squares to -id
      kron(r, kron(p, p)),    // squares to -id
  };
  return CliffordFamily{std::move(space), std::move(gens)};
}

CurvatureTensor lemma22_tensor() {
  const CliffordFamily fam = clifford_family_44();
  const CurvatureTensor a1 =
      a_from_skew(SkewEndomorphism(fam.space, fam.phi1()));
  const CurvatureTensor a2 =
      a_from_skew(SkewEndomorphism(fam.space, fam.phi2()));
  Rank4Array sum = a1.components();
  sum += a2.components();
  sum *= rat(-1, 3);
  return CurvatureTensor(fam.space, std::move(sum));
}

NoncommutingTriple lemma22_noncommuting_triple() {
  const CliffordFamily fam = clifford_family_44();
  const MatrixXq phi1 = fam.phi1();
  const MatrixXq phi2 = fam.phi2();
  const Index m = fam.space.dim();
  const MatrixXq prod = phi2 * phi1;
  NoncommutingTriple triple;
  Index i1 = -1;
  for (Index i = 0; i < m && i1 < 0; ++i)
    if (!is_zero_matrix(MatrixXq(prod.col(i)))) i1 = i;
  if (i1 < 0)
    throw InternalConsistencyError("phi2 phi1 = 0 in the Clifford family");
  triple.x1 = VectorXq::Unit(m, i1);
  triple.y = phi1 * triple.x1;
  for (Index j = 0; j < m; ++j) {
    VectorXq cand = VectorXq::Unit(m, j);
    if (!is_zero(fam.space.inner(triple.y, VectorXq(phi2 * cand)))) {
      triple.x2 = std::move(cand);
      return triple;
    }
  }
  throw InternalConsistencyError(
      "no basis vector pairs with phi1 x1 under phi2");
}

CurvatureTensor lemma32_tensor() {
  // basis order: e1..e4 (0-3), ebar1..ebar4 (4-7), etilde1..etilde4 (8-11),
  // f1 (12), f2 (13)
  const Index m = 14;
  MatrixXq gram = MatrixXq::Zero(m, m);
  for (Index block : {0, 2, 4, 6, 8, 10})
    gram(block, block + 1) = gram(block + 1, block) = 1;
  gram(12, 12) = gram(13, 13) = rat(-1, 2);
  gram(12, 13) = gram(13, 12) = rat(1, 4);

  const Index e1 = 0, e3 = 2, e4 = 3;
  const Index b1 = 4, b3 = 6, b4 = 7;  // ebar
  const Index t1 = 8, t3 = 10, t4 = 11;  // etilde
  const Index f1 = 12, f2 = 13;
  const Rational one = 1, mhalf = rat(-1, 2);
  const std::vector<ComponentEntry> entries = {
      {e1, t1, t1, e3, one},  {e1, b1, b1, e4, one},
      {b1, e1, e1, b3, one},  {b1, t1, t1, b4, one},
      {t1, e1, e1, t3, one},  {t1, b1, b1, t4, one},
      {e1, b1, t1, f1, mhalf}, {e1, t1, b1, f1, mhalf},
      {b1, t1, e1, f2, mhalf}, {b1, e1, t1, f2, mhalf},
  };
  return tensor_from_components(InnerProductSpace(std::move(gram)), entries,
                                AssemblyMode::kGenerate);
}

CurvatureTensor dual_extension(Index k, const Rank4Array& a_w) {
  if (a_w.dim() != k) throw PreconditionError("dual_extension: dim mismatch");
  const SymmetryReport report = validate_symmetries(a_w);
  if (!report.ok)
    throw SymmetryError("dual_extension: " + report.describe());
  InnerProductSpace space = InnerProductSpace::hyperbolic_pairs(k);
  Rank4Array a(2 * k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j)
      for (Index kk = 0; kk < k; ++kk)
        for (Index l = 0; l < k; ++l) a.at(i, j, kk, l) = a_w.at(i, j, kk, l);
  return CurvatureTensor(std::move(space), std::move(a));
}

CurvatureTensor constant_curvature(const Rational& c,
                                   const InnerProductSpace& space) {
  const Index m = space.dim();
  const MatrixXq& g = space.gram();
  Rank4Array a(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l)
          a.at(i, j, k, l) = c * (g(i, l) * g(j, k) - g(i, k) * g(j, l));
  return CurvatureTensor(space, std::move(a));
}

Rank4Array pair_symmetrize(const Rank4Array& raw) {
  const Index m = raw.dim();
  Rank4Array out(m);
  const Rational eighth = rat(1, 8);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l)
          out.at(i, j, k, l) =
              eighth * (raw.at(i, j, k, l) - raw.at(j, i, k, l) -
                        raw.at(i, j, l, k) + raw.at(j, i, l, k) +
                        raw.at(k, l, i, j) - raw.at(l, k, i, j) -
                        raw.at(k, l, j, i) + raw.at(l, k, j, i));
  return out;
}

namespace {

/// A - b(A)/3 where b is the cyclic sum over the first three slots. On
/// tensors that are skew in the leading pair, b(b(A)) = 3 b(A), so this
/// is the projector onto the Bianchi kernel.
Rank4Array cyclic_project(const Rank4Array& a) {
  const Index m = a.dim();
  Rank4Array out(m);
  const Rational third = rat(1, 3);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l)
          out.at(i, j, k, l) =
              third * (2 * a.at(i, j, k, l) - a.at(j, k, i, l) -
                       a.at(k, i, j, l));
  return out;
}

}  // namespace

Rank4Array bianchi_project(const Rank4Array& pair_symmetric) {
  return cyclic_project(pair_symmetric);
}

Rank4Array generalized_bianchi_project(const Rank4Array& skew12) {
  return cyclic_project(skew12);
}

Rank4Array random_components(std::uint64_t seed, Index dim, int orbit_count) {
  std::mt19937_64 rng(seed);
  Rank4Array raw(dim);
  const auto udim = static_cast<std::uint64_t>(dim);
  // sample slot pairs with distinct indices so the entries survive the
  // antisymmetrization (dim 1 has no valid tensors but zero)
  const auto distinct_pair = [&](Index& a, Index& b) {
    a = static_cast<Index>(rng() % udim);
    b = dim > 1 ? static_cast<Index>(
                      (a + 1 + static_cast<Index>(rng() % (udim - 1))) % dim)
                : a;
  };
  for (int n = 0; n < orbit_count; ++n) {
    Index i, j, k, l;
    distinct_pair(i, j);
    distinct_pair(k, l);
    const long num = static_cast<long>(rng() % 9) - 4;
    const long den = 1 + static_cast<long>(rng() % 3);
    raw.at(i, j, k, l) += rat(num, den);
  }
  return bianchi_project(pair_symmetrize(raw));
}

CurvatureTensor random_tensor(std::uint64_t seed, const InnerProductSpace& space,
                              int orbit_count) {
  return CurvatureTensor(space, random_components(seed, space.dim(), orbit_count));
}

CurvatureTensor direct_sum(const CurvatureTensor& a, const CurvatureTensor& b) {
  const Index ma = a.dim(), mb = b.dim(), m = ma + mb;
  MatrixXq gram = MatrixXq::Zero(m, m);
  gram.topLeftCorner(ma, ma) = a.space().gram();
  gram.bottomRightCorner(mb, mb) = b.space().gram();
  Rank4Array comps(m);
  for (Index i = 0; i < ma; ++i)
    for (Index j = 0; j < ma; ++j)
      for (Index k = 0; k < ma; ++k)
        for (Index l = 0; l < ma; ++l) comps.at(i, j, k, l) = a.at(i, j, k, l);
  for (Index i = 0; i < mb; ++i)
    for (Index j = 0; j < mb; ++j)
      for (Index k = 0; k < mb; ++k)
        for (Index l = 0; l < mb; ++l)
          comps.at(ma + i, ma + j, ma + k, ma + l) = b.at(i, j, k, l);
  return CurvatureTensor(InnerProductSpace(std::move(gram)), std::move(comps));
}

bool components_have_trivial_jacobi_kernel(const Rank4Array& a_w) {
  const Index k = a_w.dim();
  const Index rows = k * (k + 1) / 2 * k;
  MatrixXq m(rows, k);
  Index row = 0;
  for (Index a = 0; a < k; ++a)
    for (Index b = a; b < k; ++b)
      for (Index l = 0; l < k; ++l) {
        for (Index c = 0; c < k; ++c)
          m(row, c) = a_w.at(c, a, b, l) + a_w.at(c, b, a, l);
        ++row;
      }
  return rank_of(m) == k;
}

InnerProductSpace diagonal_space(Index p, Index q) {
  MatrixXq gram = MatrixXq::Zero(p + q, p + q);
  for (Index i = 0; i < p; ++i) gram(i, i) = -1;
  for (Index i = p; i < p + q; ++i) gram(i, i) = 1;
  return InnerProductSpace(std::move(gram));
}

CurvatureTensor gauss_tensor(const std::vector<Rational>& spectrum) {
  const Index m = static_cast<Index>(spectrum.size());
  MatrixXq s = MatrixXq::Zero(m, m);
  for (Index i = 0; i < m; ++i) s(i, i) = spectrum[static_cast<size_t>(i)];
  return a_from_symmetric(InnerProductSpace::euclidean(m), s);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

long parse_long(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("example id: bad " + what + " '" + s + "'");
  }
}

std::string expect_prefix(const std::string& part, const std::string& key) {
  if (part.rfind(key, 0) != 0)
    throw ParseError("example id: expected '" + key + "...', got '" + part +
                     "'");
  return part.substr(key.size());
}

}  // namespace

CurvatureTensor example_by_id(const std::string& id) {
  if (id == "lemma-2.2") return lemma22_tensor();
  if (id == "lemma-3.2") return lemma32_tensor();
  const std::vector<std::string> parts = split(id, ':');
  if (parts[0] == "defn-1.8") {
    if (parts.size() != 3)
      throw ParseError("example id: want defn-1.8:k=<n>:seed=<s>");
    const long k = parse_long(expect_prefix(parts[1], "k="), "k");
    const long seed = parse_long(expect_prefix(parts[2], "seed="), "seed");
    if (k < 1 || k > 8) throw ParseError("example id: k out of range");
    return dual_extension(
        k, random_components(static_cast<std::uint64_t>(seed), k,
                             static_cast<int>(k * k)));
  }
  if (parts[0] == "const-curv") {
    if (parts.size() != 3)
      throw ParseError("example id: want const-curv:c=<a/b>:sig=<p>,<q>");
    const Rational c = parse_rational(expect_prefix(parts[1], "c="));
    const std::vector<std::string> pq =
        split(expect_prefix(parts[2], "sig="), ',');
    if (pq.size() != 2) throw ParseError("example id: sig wants <p>,<q>");
    const long p = parse_long(pq[0], "p"), q = parse_long(pq[1], "q");
    if (p < 0 || q < 0 || p + q < 1 || p + q > 16)
      throw ParseError("example id: signature out of range");
    return constant_curvature(c, diagonal_space(p, q));
  }
  if (parts[0] == "gauss") {
    if (parts.size() != 2)
      throw ParseError("example id: want gauss:spectrum=<l1>,<l2>,...");
    std::vector<Rational> spectrum;
    for (const std::string& s : split(expect_prefix(parts[1], "spectrum="), ','))
      spectrum.push_back(parse_rational(s));
    if (spectrum.empty() || spectrum.size() > 16)
      throw ParseError("example id: spectrum size out of range");
    return gauss_tensor(spectrum);
  }
  throw ParseError("unknown example id '" + id + "'");
}

}  // namespace curvops
