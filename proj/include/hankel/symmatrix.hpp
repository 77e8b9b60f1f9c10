#pragma once

#include <cstddef>
#include <vector>

#include "hankel/groebner.hpp"
#include "hankel/polynomial.hpp"
#include "hankel/ring_map.hpp"
#include "json.hpp"

namespace hankel {

/// Matrix of polynomials over one field and one ring. Indices are 0-based.
class SymMatrix {
 public:
  SymMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries);
  static SymMatrix zero(Field field, std::size_t nvars, std::size_t rows, std::size_t cols);
  static SymMatrix identity(Field field, std::size_t nvars, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const Field& field() const { return entries_.front().field(); }
  std::size_t nvars() const { return entries_.front().nvars(); }

  const Polynomial& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Polynomial& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const std::vector<Polynomial>& entries() const { return entries_; }

  SymMatrix operator*(const SymMatrix& other) const;
  SymMatrix operator+(const SymMatrix& other) const;
  SymMatrix scaled(const Polynomial& c) const;
  SymMatrix transpose() const;
  SymMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  SymMatrix without(std::size_t row, std::size_t col) const;
  SymMatrix row_block(std::size_t first, std::size_t count) const;
  SymMatrix mapped(const RingMap& map) const;
  bool is_symmetric() const;

  friend bool operator==(const SymMatrix& a, const SymMatrix& b);

  /// Array of arrays of polynomial strings.
  nlohmann::json to_json() const;
  static SymMatrix from_json(const nlohmann::json& j, Field field, std::size_t nvars);

 private:
  std::size_t rows_, cols_;
  std::vector<Polynomial> entries_;
};

/// s x t Hankel matrix with entry (i,j) = x_{i+j-1} (1-based) when
/// i+j-1 <= s+t-1-zeros, else 0.
struct HankelSpec {
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::size_t zeros = 0;
  std::size_t nvars() const { return rows + cols - 1 - zeros; }
};

/// Throws ParameterError when the zeros leave no nonzero anti-diagonal product.
SymMatrix hankel_matrix(const HankelSpec& spec, Field field = Field::rationals());
/// The square degeneration H_m[r] in 2m-1-r variables.
SymMatrix hankel_square(std::size_t m, std::size_t r, Field field = Field::rationals());

/// Endomorphism of k[x_1..x_{2m-1}] killing the variables absent from
/// H_m[r], i.e. x_i -> 0 for i > 2m-1-r.
RingMap phi_endomorphism(std::size_t m, std::size_t r, Field field = Field::rationals());

/// Memoized expansion over column subsets (2^n subproblems).
Polynomial determinant(const SymMatrix& m);
/// Leibniz sum over all permutations; oracle for small n.
Polynomial determinant_by_permutations(const SymMatrix& m);
/// (-1)^{i+j} det(M without row i, column j).
Polynomial cofactor(const SymMatrix& m, std::size_t i, std::size_t j);
/// Delta_{i,j}: the signed cofactor of the (j,i) entry, i.e. adjugate(M)(i,j).
Polynomial delta(const SymMatrix& m, std::size_t i, std::size_t j);
/// adjugate(M) * M = det(M) * I.
SymMatrix adjugate(const SymMatrix& m);

struct Minor {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  Polynomial value;
};
/// All t-minors, lexicographic in (row set, column set).
std::vector<Minor> minors(const SymMatrix& m, std::size_t t);
std::vector<Polynomial> minor_values(const SymMatrix& m, std::size_t t);
/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

/// Rank over the fraction field, by fraction-free (Bareiss) elimination with
/// complete pivoting and exact polynomial division.
std::size_t rank_over_fraction_field(const SymMatrix& m);

/// I_t(H_{s,n-s+1}[r]) = I_t(H_{t,n-t+1}[r]), decided by mutual membership.
struct GpReport {
  std::size_t s, t, n, r;
  std::size_t generators_s = 0, generators_t = 0;
  bool equal = false;
};
GpReport gruson_peskine_check(std::size_t s, std::size_t t, std::size_t n, std::size_t r,
                              Field field = Field::rationals(), const gb::Options& options = {});

/// codim I_t(H_m[r]) against min{2(m-t)+1, 2m-t-r}.
struct MinorsCodimReport {
  std::size_t m, t, r;
  long codim = 0;
  long expected = 0;
  bool matches() const { return codim == expected; }
};
MinorsCodimReport minors_codim(std::size_t m, std::size_t t, std::size_t r, const gb::Options& options = {});

/// Row blocks of H_m[r] and the matching blocks of its adjugate ("cof"):
///   H = [U; D],  cof = [A B; B' C],  U has m-j rows, A is (m-j)x(m-j).
struct BlockPartition {
  std::size_t m, r, j;
  SymMatrix U, D, A, B, Bprime, C;
  Polynomial det;
  /// cof * H = [A U + B D ; B' U + C D] = det * I, checked blockwise.
  bool identity_holds() const;
};
BlockPartition block_partition(std::size_t m, std::size_t r, std::size_t j, Field field = Field::rationals());

}  // namespace hankel
