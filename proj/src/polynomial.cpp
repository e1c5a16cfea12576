#include "curvops/polynomial.hpp"

namespace curvops {

MultivariatePolynomial MultivariatePolynomial::constant(Index nvars,
                                                        const Rational& c) {
  MultivariatePolynomial p(nvars);
  p.add_term(Exponents(static_cast<size_t>(nvars), 0), c);
  return p;
}

MultivariatePolynomial MultivariatePolynomial::variable(Index nvars,
                                                        Index var) {
  MultivariatePolynomial p(nvars);
  Exponents e(static_cast<size_t>(nvars), 0);
  e[static_cast<size_t>(var)] = 1;
  p.add_term(e, 1);
  return p;
}

MultivariatePolynomial MultivariatePolynomial::monomial(Index nvars,
                                                        Exponents exps,
                                                        const Rational& c) {
  MultivariatePolynomial p(nvars);
  p.add_term(exps, c);
  return p;
}

void MultivariatePolynomial::add_term(const Exponents& exps,
                                      const Rational& c) {
  if (curvops::is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (curvops::is_zero(it->second)) terms_.erase(it);
  }
}

Index MultivariatePolynomial::total_degree() const {
  Index deg = 0;
  for (const auto& [exps, c] : terms_) {
    Index d = 0;
    for (unsigned e : exps) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

bool MultivariatePolynomial::depends_on_var_at_least(Index first) const {
  for (const auto& [exps, c] : terms_)
    for (size_t v = static_cast<size_t>(first); v < exps.size(); ++v)
      if (exps[v] > 0) return true;
  return false;
}

MultivariatePolynomial& MultivariatePolynomial::operator+=(
    const MultivariatePolynomial& other) {
  for (const auto& [exps, c] : other.terms_) add_term(exps, c);
  return *this;
}

MultivariatePolynomial& MultivariatePolynomial::operator-=(
    const MultivariatePolynomial& other) {
  for (const auto& [exps, c] : other.terms_) add_term(exps, Rational(-c));
  return *this;
}

MultivariatePolynomial MultivariatePolynomial::operator+(
    const MultivariatePolynomial& o) const {
  MultivariatePolynomial out = *this;
  out += o;
  return out;
}

MultivariatePolynomial MultivariatePolynomial::operator-(
    const MultivariatePolynomial& o) const {
  MultivariatePolynomial out = *this;
  out -= o;
  return out;
}

MultivariatePolynomial MultivariatePolynomial::operator*(
    const MultivariatePolynomial& o) const {
  MultivariatePolynomial out(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e = ea;
      for (size_t v = 0; v < e.size(); ++v) e[v] += eb[v];
      out.add_term(e, Rational(ca * cb));
    }
  return out;
}

MultivariatePolynomial MultivariatePolynomial::operator*(
    const Rational& c) const {
  MultivariatePolynomial out(nvars_);
  for (const auto& [e, v] : terms_) out.add_term(e, Rational(v * c));
  return out;
}

MultivariatePolynomial MultivariatePolynomial::operator-() const {
  return *this * Rational(-1);
}

MultivariatePolynomial MultivariatePolynomial::derivative(Index var) const {
  MultivariatePolynomial out(nvars_);
  const size_t v = static_cast<size_t>(var);
  for (const auto& [exps, c] : terms_) {
    if (exps[v] == 0) continue;
    Exponents e = exps;
    const unsigned power = e[v];
    e[v] -= 1;
    out.add_term(e, Rational(c * static_cast<long>(power)));
  }
  return out;
}

Rational MultivariatePolynomial::evaluate(const VectorXq& point) const {
  Rational acc = 0;
  for (const auto& [exps, c] : terms_) {
    Rational term = c;
    for (size_t v = 0; v < exps.size(); ++v)
      for (unsigned e = 0; e < exps[v]; ++e)
        term *= point(static_cast<Index>(v));
    acc += term;
  }
  return acc;
}

MultivariatePolynomial MultivariatePolynomial::widen(Index new_nvars) const {
  MultivariatePolynomial out(new_nvars);
  for (const auto& [exps, c] : terms_) {
    Exponents e = exps;
    e.resize(static_cast<size_t>(new_nvars), 0);
    out.add_term(e, c);
  }
  return out;
}

MultivariatePolynomial poly_determinant(
    const std::vector<MultivariatePolynomial>& grid, Index n) {
  if (n == 0) return MultivariatePolynomial();
  const Index nvars = grid[0].nvars();
  if (n == 1) return grid[0];
  MultivariatePolynomial det(nvars);
  std::vector<MultivariatePolynomial> minor(
      static_cast<size_t>((n - 1) * (n - 1)));
  for (Index col = 0; col < n; ++col) {
    for (Index i = 1; i < n; ++i) {
      Index out_col = 0;
      for (Index j = 0; j < n; ++j) {
        if (j == col) continue;
        minor[static_cast<size_t>((i - 1) * (n - 1) + out_col)] =
            grid[static_cast<size_t>(i * n + j)];
        ++out_col;
      }
    }
    MultivariatePolynomial term =
        grid[static_cast<size_t>(col)] * poly_determinant(minor, n - 1);
    if (col % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

}  // namespace curvops
