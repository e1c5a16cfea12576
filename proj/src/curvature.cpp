#include "curvops/curvature.hpp"

#include <algorithm>

namespace curvops {

namespace {

/// The eight signed members of the Z2-symmetry orbit of (i,j,k,l).
std::array<std::pair<std::array<Index, 4>, int>, 8> orbit_of(Index i, Index j,
                                                             Index k, Index l) {
  return {{
      {{i, j, k, l}, +1},
      {{j, i, k, l}, -1},
      {{i, j, l, k}, -1},
      {{j, i, l, k}, +1},
      {{k, l, i, j}, +1},
      {{l, k, i, j}, -1},
      {{k, l, j, i}, -1},
      {{l, k, j, i}, +1},
  }};
}

}  // namespace

std::string SymmetryReport::describe() const {
  if (ok) return "ok";
  return identity + " violated at (" + std::to_string(indices[0]) + "," +
         std::to_string(indices[1]) + "," + std::to_string(indices[2]) + "," +
         std::to_string(indices[3]) + ")";
}

SymmetryReport validate_symmetries(const Rank4Array& a) {
  const Index m = a.dim();
  SymmetryReport report;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l) {
          const Rational& v = a.at(i, j, k, l);
          std::string violated;
          if (v != -a.at(j, i, k, l))
            violated = "A(x,y,z,w) = -A(y,x,z,w)";
          else if (v != -a.at(i, j, l, k))
            violated = "A(x,y,z,w) = -A(x,y,w,z)";
          else if (v != a.at(k, l, i, j))
            violated = "A(x,y,z,w) = A(z,w,x,y)";
          else if (!is_zero(v + a.at(j, k, i, l) + a.at(k, i, j, l)))
            violated = "first Bianchi identity";
          if (!violated.empty()) {
            report.ok = false;
            report.identity = violated;
            report.indices = {i, j, k, l};
            return report;
          }
        }
  return report;
}

SymmetryReport validate_symmetries(const CurvatureTensor& a) {
  return validate_symmetries(a.components());
}

Rank4Array components_from_entries(Index dim,
                                   std::span<const ComponentEntry> entries,
                                   AssemblyMode mode) {
  Rank4Array a(dim);
  std::vector<char> written(static_cast<size_t>(dim * dim * dim * dim), 0);
  const auto flat = [dim](Index i, Index j, Index k, Index l) {
    return static_cast<size_t>(((i * dim + j) * dim + k) * dim + l);
  };
  for (const ComponentEntry& e : entries) {
    for (Index idx : {e.i, e.j, e.k, e.l})
      if (idx < 0 || idx >= dim)
        throw PreconditionError("component index out of range");
    if (mode == AssemblyMode::kVerbatim) {
      const size_t f = flat(e.i, e.j, e.k, e.l);
      if (written[f])
        throw SymmetryError("verbatim entry listed twice at (" +
                            std::to_string(e.i) + "," + std::to_string(e.j) +
                            "," + std::to_string(e.k) + "," +
                            std::to_string(e.l) + ")");
      written[f] = 1;
      a.at(e.i, e.j, e.k, e.l) = e.value;
      continue;
    }
    for (const auto& [t, sign] : orbit_of(e.i, e.j, e.k, e.l)) {
      const Rational v = sign > 0 ? e.value : Rational(-e.value);
      const size_t f = flat(t[0], t[1], t[2], t[3]);
      if (written[f]) {
        if (a.at(t[0], t[1], t[2], t[3]) != v)
          throw SymmetryError(
              "orbit conflict: entries force inconsistent values at (" +
              std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
              std::to_string(t[2]) + "," + std::to_string(t[3]) + ")");
      } else {
        written[f] = 1;
        a.at(t[0], t[1], t[2], t[3]) = v;
      }
    }
  }
  if (mode == AssemblyMode::kVerbatim) {
    if (std::find(written.begin(), written.end(), 0) != written.end())
      throw SymmetryError("verbatim mode requires all dim^4 entries");
  }
  const SymmetryReport report = validate_symmetries(a);
  if (!report.ok) throw SymmetryError(report.describe());
  return a;
}

CurvatureTensor::CurvatureTensor(InnerProductSpace space, Rank4Array components)
    : space_(std::move(space)), components_(std::move(components)) {
  if (components_.dim() != space_.dim())
    throw PreconditionError("curvature tensor: component/space dim mismatch");
}

CurvatureTensor tensor_from_components(InnerProductSpace space,
                                       std::span<const ComponentEntry> entries,
                                       AssemblyMode mode) {
  Rank4Array a = components_from_entries(space.dim(), entries, mode);
  return CurvatureTensor(std::move(space), std::move(a));
}

CurvatureTensor zero_tensor(InnerProductSpace space) {
  Rank4Array a(space.dim());
  return CurvatureTensor(std::move(space), std::move(a));
}

Rational CurvatureTensor::evaluate(const VectorXq& x, const VectorXq& y,
                                   const VectorXq& z,
                                   const VectorXq& w) const {
  const Index m = dim();
  Rational acc = 0;
  for (Index i = 0; i < m; ++i) {
    if (is_zero(x(i))) continue;
    for (Index j = 0; j < m; ++j) {
      if (is_zero(y(j))) continue;
      for (Index k = 0; k < m; ++k) {
        if (is_zero(z(k))) continue;
        for (Index l = 0; l < m; ++l) {
          const Rational& v = components_.at(i, j, k, l);
          if (is_zero(v) || is_zero(w(l))) continue;
          acc += v * x(i) * y(j) * z(k) * w(l);
        }
      }
    }
  }
  return acc;
}

namespace {

/// Raises the r-index of a lowered bilinear form N(c,r) to the
/// endomorphism M with <M e_c, e_r> = N(c,r), that is M = G^{-1} N^T.
MatrixXq raise_lowered(const InnerProductSpace& space, const MatrixXq& lowered) {
  return sparse_product(space.inverse_gram(), lowered.transpose());
}

}  // namespace

MatrixXq curvature_operator(const CurvatureTensor& a, const VectorXq& x,
                            const VectorXq& y) {
  const Index m = a.dim();
  MatrixXq lowered = MatrixXq::Zero(m, m);  // lowered(c,r) = A(x,y,e_c,e_r)
  for (Index i = 0; i < m; ++i) {
    if (is_zero(x(i))) continue;
    for (Index j = 0; j < m; ++j) {
      if (is_zero(y(j))) continue;
      const Rational coeff = x(i) * y(j);
      for (Index c = 0; c < m; ++c)
        for (Index r = 0; r < m; ++r) {
          const Rational& v = a.at(i, j, c, r);
          if (!is_zero(v)) lowered(c, r) += coeff * v;
        }
    }
  }
  return raise_lowered(a.space(), lowered);
}

MatrixXq jacobi(const CurvatureTensor& a, const VectorXq& x) {
  const Index m = a.dim();
  MatrixXq lowered = MatrixXq::Zero(m, m);  // lowered(b,r) = A(e_b,x,x,e_r)
  for (Index i = 0; i < m; ++i) {
    if (is_zero(x(i))) continue;
    for (Index j = 0; j < m; ++j) {
      if (is_zero(x(j))) continue;
      const Rational coeff = x(i) * x(j);
      for (Index b = 0; b < m; ++b)
        for (Index r = 0; r < m; ++r) {
          const Rational& v = a.at(b, i, j, r);
          if (!is_zero(v)) lowered(b, r) += coeff * v;
        }
    }
  }
  return raise_lowered(a.space(), lowered);
}

size_t PolarizedJacobiTable::pair_index(Index a, Index b) const {
  if (a > b) std::swap(a, b);
  return static_cast<size_t>(a * dim_ - a * (a + 1) / 2 + b);
}

PolarizedJacobiTable::PolarizedJacobiTable(const CurvatureTensor& a)
    : dim_(a.dim()) {
  const Index m = dim_;
  table_.reserve(static_cast<size_t>(pair_count()));
  const Rational half = rat(1, 2);
  for (Index p = 0; p < m; ++p)
    for (Index q = p; q < m; ++q) {
      MatrixXq lowered(m, m);
      for (Index c = 0; c < m; ++c)
        for (Index r = 0; r < m; ++r)
          lowered(c, r) = half * (a.at(c, p, q, r) + a.at(c, q, p, r));
      table_.push_back(raise_lowered(a.space(), lowered));
    }
}

MatrixXq PolarizedJacobiTable::polarized(const VectorXq& x,
                                         const VectorXq& y) const {
  MatrixXq out = MatrixXq::Zero(dim_, dim_);
  for (Index a = 0; a < dim_; ++a)
    for (Index b = a; b < dim_; ++b) {
      const Rational coeff =
          a == b ? Rational(x(a) * y(a)) : Rational(x(a) * y(b) + x(b) * y(a));
      if (is_zero(coeff)) continue;
      out += coeff * (*this)(a, b);
    }
  return out;
}

MatrixXq PolarizedJacobiTable::jacobi_of(const VectorXq& x) const {
  return polarized(x, x);
}

CurvatureOperatorTable::CurvatureOperatorTable(const CurvatureTensor& a)
    : dim_(a.dim()) {
  const Index m = dim_;
  table_.reserve(static_cast<size_t>(m * (m - 1) / 2));
  for (Index p = 0; p < m; ++p)
    for (Index q = p + 1; q < m; ++q) {
      MatrixXq lowered(m, m);
      for (Index c = 0; c < m; ++c)
        for (Index r = 0; r < m; ++r) lowered(c, r) = a.at(p, q, c, r);
      table_.push_back(
          sparse_product(a.space().inverse_gram(), lowered.transpose()));
    }
}

const MatrixXq& CurvatureOperatorTable::operator()(Index a, Index b) const {
  // strict upper triangle: row a holds pairs (a, a+1..m-1)
  return table_[static_cast<size_t>(a * dim_ - a * (a + 1) / 2 + b - a - 1)];
}

GeneralizedCurvatureOperator::GeneralizedCurvatureOperator(Index dim,
                                                           Rank4Array comps)
    : dim_(dim), components_(std::move(comps)) {
  if (components_.dim() != dim_)
    throw PreconditionError("generalized operator: dim mismatch");
  const SymmetryReport report = validate_generalized(components_);
  if (!report.ok) throw SymmetryError(report.describe());
}

GeneralizedCurvatureOperator GeneralizedCurvatureOperator::from_curvature_tensor(
    const CurvatureTensor& a) {
  const Index m = a.dim();
  const MatrixXq& ginv = a.space().inverse_gram();
  Rank4Array c(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l) {
          Rational acc = 0;
          for (Index r = 0; r < m; ++r) {
            const Rational& v = a.at(i, j, k, r);
            if (!is_zero(v) && !is_zero(ginv(l, r))) acc += ginv(l, r) * v;
          }
          c.at(i, j, k, l) = acc;
        }
  return GeneralizedCurvatureOperator(m, std::move(c));
}

SymmetryReport validate_generalized(const Rank4Array& c) {
  const Index m = c.dim();
  SymmetryReport report;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l) {
          std::string violated;
          if (c.at(i, j, k, l) != -c.at(j, i, k, l))
            violated = "C(x,y)z = -C(y,x)z";
          else if (!is_zero(c.at(i, j, k, l) + c.at(j, k, i, l) +
                            c.at(k, i, j, l)))
            violated = "C(x,y)z + C(y,z)x + C(z,x)y = 0";
          if (!violated.empty()) {
            report.ok = false;
            report.identity = violated;
            report.indices = {i, j, k, l};
            return report;
          }
        }
  return report;
}

MatrixXq jacobi_of_generalized(const GeneralizedCurvatureOperator& c,
                               const VectorXq& x) {
  const Index m = c.dim();
  MatrixXq out = MatrixXq::Zero(m, m);  // out(l,b) = (C(e_b,x)x)_l
  for (Index j = 0; j < m; ++j) {
    if (is_zero(x(j))) continue;
    for (Index k = 0; k < m; ++k) {
      if (is_zero(x(k))) continue;
      const Rational coeff = x(j) * x(k);
      for (Index b = 0; b < m; ++b)
        for (Index l = 0; l < m; ++l) {
          const Rational& v = c.components().at(b, j, k, l);
          if (!is_zero(v)) out(l, b) += coeff * v;
        }
    }
  }
  return out;
}

Rank4Array pull_back_components(const Rank4Array& a, const MatrixXq& p) {
  const Index m = a.dim();
  // contract one slot at a time; each stage costs O(m^5)
  Rank4Array cur = a;
  for (int slot = 0; slot < 4; ++slot) {
    Rank4Array next(m);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j)
        for (Index k = 0; k < m; ++k)
          for (Index l = 0; l < m; ++l) {
            Rational acc = 0;
            for (Index s = 0; s < m; ++s) {
              // replace the leading slot, then rotate so that after four
              // stages each original slot has been contracted once
              const Rational& v = cur.at(s, j, k, l);
              if (!is_zero(v) && !is_zero(p(s, i))) acc += p(s, i) * v;
            }
            // rotate (i,j,k,l) -> (j,k,l,i) when storing
            next.at(j, k, l, i) = acc;
          }
    cur = std::move(next);
  }
  return cur;
}

CurvatureTensor pull_back(const CurvatureTensor& a, const MatrixXq& p) {
  MatrixXq new_gram = p.transpose() * a.space().gram() * p;
  return CurvatureTensor(InnerProductSpace(std::move(new_gram)),
                         pull_back_components(a.components(), p));
}

CanonicalIndex canonical_orbit_index(Index i, Index j, Index k, Index l) {
  const auto orbit = orbit_of(i, j, k, l);
  const auto* best = &orbit[0];
  for (const auto& cand : orbit)
    if (cand.first < best->first) best = &cand;
  return CanonicalIndex{best->first, best->second};
}

}  // namespace curvops
