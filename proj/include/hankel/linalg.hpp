#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "hankel/field.hpp"
#include "hankel/polynomial.hpp"

namespace hankel {

/// Dense row-major matrix of field elements.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpq_class& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpq_class& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_, cols_;
  std::vector<mpq_class> data_;
};

struct Echelon {
  DenseMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form by Gauss-Jordan elimination over `field`.
Echelon reduced_row_echelon(DenseMatrix m, const Field& field);
std::size_t rank(const DenseMatrix& m, const Field& field);
/// Basis of {v : m v = 0}.
std::vector<std::vector<mpq_class>> nullspace(const DenseMatrix& m, const Field& field);
/// Some v with m v = b, if one exists.
std::optional<std::vector<mpq_class>> solve(const DenseMatrix& m, const std::vector<mpq_class>& b,
                                            const Field& field);

/// Coefficient matrix of a list of polynomials: one row per polynomial, one
/// column per monomial occurring in any of them (columns in `monomials`).
struct CoefficientMatrix {
  DenseMatrix matrix;
  std::vector<Monomial> monomials;
};
CoefficientMatrix coefficient_matrix(const std::vector<Polynomial>& polys);

/// Dimension of the k-linear span of `polys`.
std::size_t span_dimension(const std::vector<Polynomial>& polys);

/// Coefficients c with target = sum c_i polys[i], if target lies in the span.
std::optional<std::vector<mpq_class>> express_in_span(const Polynomial& target, const std::vector<Polynomial>& polys);

}  // namespace hankel
