#include "curvops/linalg.hpp"

#include <algorithm>
#include <cctype>

namespace curvops {

Rational parse_rational(std::string_view text) {
  const auto fail = [&] {
    throw ParseError("invalid rational literal: '" + std::string(text) + "'");
  };
  std::string_view s = text;
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) fail();
  const auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  if (num.empty() || !std::all_of(num.begin(), num.end(), [](unsigned char c) {
        return std::isdigit(c);
      }))
    fail();
  if (slash != std::string_view::npos) {
    std::string_view den = s.substr(slash + 1);
    // denominator must be a positive integer with no leading zero
    if (den.empty() || den.front() == '0' ||
        !std::all_of(den.begin(), den.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
      fail();
  }
  Rational q;
  if (q.set_str(std::string(text), 10) != 0) fail();
  q.canonicalize();
  return q;
}

bool RowEchelonForm::is_pivot_col(Index c) const {
  return std::find(pivot_cols.begin(), pivot_cols.end(), c) != pivot_cols.end();
}

RowEchelonForm row_reduce(const MatrixXq& a) {
  RowEchelonForm out;
  const Index rows = a.rows(), cols = a.cols();
  out.rref = a;
  out.transform = MatrixXq::Identity(rows, rows);
  MatrixXq& m = out.rref;
  MatrixXq& e = out.transform;

  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index pivot = -1;
    for (Index i = row; i < rows; ++i) {
      if (!is_zero(m(i, col))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) {
      m.row(pivot).swap(m.row(row));
      e.row(pivot).swap(e.row(row));
    }
    const Rational inv = Rational(1) / m(row, col);
    m.row(row) *= inv;
    e.row(row) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const Rational f = m(i, col);
      m.row(i) -= f * m.row(row);
      e.row(i) -= f * e.row(row);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.rank = static_cast<Index>(out.pivot_cols.size());
  return out;
}

Index rank_of(const MatrixXq& a) { return row_reduce(a).rank; }

Signature signature_of(const MatrixXq& gram) {
  const Index n = gram.rows();
  if (gram.cols() != n) throw SymmetryError("signature_of: matrix not square");
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (gram(i, j) != gram(j, i))
        throw SymmetryError("signature_of: matrix not symmetric");

  MatrixXq m = gram;
  Signature sig;
  for (Index r = 0; r < n; ++r) {
    Index pivot = -1;
    for (Index k = r; k < n; ++k) {
      if (!is_zero(m(k, k))) {
        pivot = k;
        break;
      }
    }
    if (pivot < 0) {
      // no diagonal pivot: either the remaining block is zero or some
      // off-diagonal entry supports a hyperbolic pair
      Index oi = -1, oj = -1;
      for (Index i = r; i < n && oi < 0; ++i)
        for (Index j = i + 1; j < n; ++j)
          if (!is_zero(m(i, j))) {
            oi = i;
            oj = j;
            break;
          }
      if (oi < 0) {
        sig.zero += n - r;
        break;
      }
      m.row(oi) += m.row(oj);
      m.col(oi) += m.col(oj);
      pivot = oi;  // now m(oi, oi) = 2 m(oi, oj) != 0
    }
    if (pivot != r) {
      m.row(pivot).swap(m.row(r));
      m.col(pivot).swap(m.col(r));
    }
    const Rational d = m(r, r);
    for (Index i = r + 1; i < n; ++i) {
      if (is_zero(m(i, r))) continue;
      const Rational f = m(i, r) / d;
      m.row(i) -= f * m.row(r);
      m.col(i) -= f * m.col(r);
    }
    if (sgn(d) > 0)
      ++sig.positive;
    else
      ++sig.negative;
  }
  return sig;
}

LinearSolution solve_linear(const MatrixXq& a, const MatrixXq& rhs) {
  if (rhs.rows() != a.rows())
    throw PreconditionError("solve_linear: rhs row count mismatch");
  const RowEchelonForm ech = row_reduce(a);
  LinearSolution out;
  out.rank = ech.rank;
  const MatrixXq reduced_rhs = ech.transform * rhs;
  // rows beyond the rank are zero rows of the echelon form
  for (Index i = ech.rank; i < a.rows(); ++i) {
    for (Index c = 0; c < rhs.cols(); ++c) {
      if (!is_zero(reduced_rhs(i, c))) {
        out.consistent = false;
        out.certificate = ech.transform.row(i);
        out.inconsistent_column = c;
        return out;
      }
    }
  }
  out.consistent = true;
  out.solution = MatrixXq::Zero(a.cols(), rhs.cols());
  for (Index r = 0; r < ech.rank; ++r)
    out.solution.row(ech.pivot_cols[static_cast<size_t>(r)]) =
        reduced_rhs.row(r);
  return out;
}

MatrixXq kernel_of(const MatrixXq& a) {
  const RowEchelonForm ech = row_reduce(a);
  const Index cols = a.cols();
  const Index nullity = cols - ech.rank;
  MatrixXq kernel = MatrixXq::Zero(cols, nullity);
  Index out = 0;
  for (Index free = 0; free < cols; ++free) {
    if (ech.is_pivot_col(free)) continue;
    kernel(free, out) = 1;
    for (Index r = 0; r < ech.rank; ++r)
      kernel(ech.pivot_cols[static_cast<size_t>(r)], out) = -ech.rref(r, free);
    ++out;
  }
  return kernel;
}

MatrixXq complete_to_basis(const MatrixXq& independent, Index dim) {
  if (independent.rows() != dim && independent.size() != 0)
    throw PreconditionError("complete_to_basis: vector dimension mismatch");
  MatrixXq current = independent.rows() == dim ? independent : MatrixXq(dim, 0);
  if (rank_of(current) != current.cols())
    throw PreconditionError("complete_to_basis: input vectors are dependent");

  MatrixXq complement(dim, dim - current.cols());
  Index added = 0;
  MatrixXq trial(dim, current.cols() + 1);
  for (Index i = 0; i < dim && current.cols() < dim; ++i) {
    trial.resize(dim, current.cols() + 1);
    trial.leftCols(current.cols()) = current;
    trial.col(current.cols()) = VectorXq::Unit(dim, i);
    if (rank_of(trial) == trial.cols()) {
      current = trial;
      complement.col(added++) = VectorXq::Unit(dim, i);
    }
  }
  return complement;
}

MatrixXq sparse_product(const MatrixXq& a, const MatrixXq& b) {
  const Index rows = a.rows(), inner = a.cols(), cols = b.cols();
  MatrixXq c = MatrixXq::Zero(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < inner; ++k) {
      const Rational& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (Index j = 0; j < cols; ++j) {
        const Rational& bkj = b(k, j);
        if (is_zero(bkj)) continue;
        c(i, j) += aik * bkj;
      }
    }
  return c;
}

bool is_zero_matrix(const MatrixXq& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!is_zero(a(i, j))) return false;
  return true;
}

InnerProductSpace::InnerProductSpace(MatrixXq gram) : gram_(std::move(gram)) {
  signature_ = signature_of(gram_);  // also rejects non-symmetric input
  if (signature_.zero != 0)
    throw PreconditionError("inner product space: Gram matrix is degenerate");
  const LinearSolution inv =
      solve_linear(gram_, MatrixXq::Identity(dim(), dim()));
  inverse_gram_ = inv.solution;
}

Rational InnerProductSpace::inner(const VectorXq& x, const VectorXq& y) const {
  Rational acc = 0;
  for (Index i = 0; i < dim(); ++i) {
    if (is_zero(x(i))) continue;
    for (Index j = 0; j < dim(); ++j) {
      if (is_zero(gram_(i, j)) || is_zero(y(j))) continue;
      acc += x(i) * gram_(i, j) * y(j);
    }
  }
  return acc;
}

InnerProductSpace InnerProductSpace::euclidean(Index dim) {
  return InnerProductSpace(MatrixXq::Identity(dim, dim));
}

InnerProductSpace InnerProductSpace::hyperbolic_pairs(Index k) {
  MatrixXq gram = MatrixXq::Zero(2 * k, 2 * k);
  for (Index i = 0; i < k; ++i) gram(i, k + i) = gram(k + i, i) = 1;
  return InnerProductSpace(std::move(gram));
}

}  // namespace curvops
