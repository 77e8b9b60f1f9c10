#include "hankel/linalg.hpp"

#include <algorithm>
#include <map>

#include "hankel/errors.hpp"

namespace hankel {

Echelon reduced_row_echelon(DenseMatrix m, const Field& field) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && m.at(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != row) {
      for (std::size_t j = col; j < cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    }
    mpq_class inv = field.inv(m.at(row, col));
    for (std::size_t j = col; j < cols; ++j) {
      if (m.at(row, j) != 0) m.at(row, j) = field.mul(m.at(row, j), inv);
    }
    // Nonzero tail of the pivot row, so elimination touches only those columns.
    std::vector<std::size_t> support;
    for (std::size_t j = col; j < cols; ++j) {
      if (m.at(row, j) != 0) support.push_back(j);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      mpq_class factor = m.at(i, col);
      for (auto j : support) {
        m.at(i, j) = field.sub(m.at(i, j), field.mul(factor, m.at(row, j)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const DenseMatrix& m, const Field& field) {
  return reduced_row_echelon(m, field).pivot_columns.size();
}

std::vector<std::vector<mpq_class>> nullspace(const DenseMatrix& m, const Field& field) {
  auto ech = reduced_row_echelon(m, field);
  const auto& piv = ech.pivot_columns;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::vector<mpq_class>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<mpq_class> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = field.neg(ech.reduced.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<mpq_class>> solve(const DenseMatrix& m, const std::vector<mpq_class>& b,
                                            const Field& field) {
  if (b.size() != m.rows()) throw ArityMismatch("right-hand side has wrong length");
  DenseMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = field.normalize(b[i]);
  }
  auto ech = reduced_row_echelon(std::move(aug), field);
  if (!ech.pivot_columns.empty() && ech.pivot_columns.back() == m.cols()) return std::nullopt;
  std::vector<mpq_class> x(m.cols(), 0);
  for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r) x[ech.pivot_columns[r]] = ech.reduced.at(r, m.cols());
  return x;
}

CoefficientMatrix coefficient_matrix(const std::vector<Polynomial>& polys) {
  std::map<Monomial, std::size_t> index;
  for (const auto& p : polys) {
    for (const auto& t : p.terms()) index.emplace(t.monomial, 0);
  }
  std::vector<Monomial> monomials;
  monomials.reserve(index.size());
  for (auto& [mono, idx] : index) {
    idx = monomials.size();
    monomials.push_back(mono);
  }
  DenseMatrix mat(polys.size(), monomials.size());
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (const auto& t : polys[i].terms()) mat.at(i, index.at(t.monomial)) = t.coefficient;
  }
  return {std::move(mat), std::move(monomials)};
}

std::size_t span_dimension(const std::vector<Polynomial>& polys) {
  if (polys.empty()) return 0;
  return rank(coefficient_matrix(polys).matrix, polys.front().field());
}

std::optional<std::vector<mpq_class>> express_in_span(const Polynomial& target, const std::vector<Polynomial>& polys) {
  std::vector<Polynomial> all(polys);
  all.push_back(target);
  auto cm = coefficient_matrix(all);
  // Transpose: unknown coefficients are columns.
  DenseMatrix a(cm.monomials.size(), polys.size());
  std::vector<mpq_class> b(cm.monomials.size());
  for (std::size_t j = 0; j < cm.monomials.size(); ++j) {
    for (std::size_t i = 0; i < polys.size(); ++i) a.at(j, i) = cm.matrix.at(i, j);
    b[j] = cm.matrix.at(polys.size(), j);
  }
  return solve(a, b, target.field());
}

}  // namespace hankel
