#include "hankel/symmatrix.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "hankel/errors.hpp"

namespace hankel {

SymMatrix::SymMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw ParameterError("matrix dimensions must be positive");
  if (entries_.size() != rows * cols) throw ArityMismatch("entry count does not match dimensions");
  for (const auto& e : entries_) {
    if (e.field() != entries_.front().field()) throw FieldMismatch("matrix entries over different fields");
    if (e.nvars() != entries_.front().nvars()) throw ArityMismatch("matrix entries in different rings");
  }
}

SymMatrix SymMatrix::zero(Field field, std::size_t nvars, std::size_t rows, std::size_t cols) {
  return SymMatrix(rows, cols, std::vector<Polynomial>(rows * cols, Polynomial(field, nvars)));
}

SymMatrix SymMatrix::identity(Field field, std::size_t nvars, std::size_t n) {
  auto m = zero(field, nvars, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Polynomial::constant(field, nvars, 1);
  return m;
}

SymMatrix SymMatrix::operator*(const SymMatrix& other) const {
  if (cols_ != other.rows_) throw ArityMismatch("matrix product dimension mismatch");
  auto out = zero(field(), nvars(), rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < other.cols_; ++j) {
      std::vector<Term> acc;
      for (std::size_t k = 0; k < cols_; ++k) {
        if (at(i, k).is_zero() || other.at(k, j).is_zero()) continue;
        auto prod = at(i, k) * other.at(k, j);
        acc.insert(acc.end(), prod.terms().begin(), prod.terms().end());
      }
      out.at(i, j) = Polynomial::from_terms(field(), nvars(), std::move(acc));
    }
  }
  return out;
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw ArityMismatch("matrix sum dimension mismatch");
  auto out = *this;
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] + other.entries_[k];
  return out;
}

SymMatrix SymMatrix::scaled(const Polynomial& c) const {
  auto out = *this;
  for (auto& e : out.entries_) e = e * c;
  return out;
}

SymMatrix SymMatrix::transpose() const {
  auto out = zero(field(), nvars(), cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  }
  return out;
}

SymMatrix SymMatrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  std::vector<Polynomial> e;
  e.reserve(rows.size() * cols.size());
  for (auto i : rows) {
    if (i >= rows_) throw IndexOutOfRange("row index out of range");
    for (auto j : cols) {
      if (j >= cols_) throw IndexOutOfRange("column index out of range");
      e.push_back(at(i, j));
    }
  }
  return SymMatrix(rows.size(), cols.size(), std::move(e));
}

SymMatrix SymMatrix::without(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) throw IndexOutOfRange("cofactor index out of range");
  if (rows_ == 1 || cols_ == 1) throw ParameterError("cannot delete the only row or column");
  std::vector<std::size_t> r, c;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i != row) r.push_back(i);
  }
  for (std::size_t j = 0; j < cols_; ++j) {
    if (j != col) c.push_back(j);
  }
  return submatrix(r, c);
}

SymMatrix SymMatrix::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_ || count == 0) throw IndexOutOfRange("row block out of range");
  std::vector<std::size_t> r(count), c(cols_);
  std::iota(r.begin(), r.end(), first);
  std::iota(c.begin(), c.end(), 0);
  return submatrix(r, c);
}

SymMatrix SymMatrix::mapped(const RingMap& map) const {
  std::vector<Polynomial> e;
  e.reserve(entries_.size());
  for (const auto& p : entries_) e.push_back(map.apply(p));
  return SymMatrix(rows_, cols_, std::move(e));
}

bool SymMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (!(at(i, j) == at(j, i))) return false;
    }
  }
  return true;
}

bool operator==(const SymMatrix& a, const SymMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

nlohmann::json SymMatrix::to_json() const {
  auto out = nlohmann::json::array();
  for (std::size_t i = 0; i < rows_; ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < cols_; ++j) row.push_back(at(i, j).to_string());
    out.push_back(std::move(row));
  }
  return out;
}

SymMatrix SymMatrix::from_json(const nlohmann::json& j, Field field, std::size_t nvars) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) throw ParseError("matrix JSON must be an array of arrays");
  const std::size_t rows = j.size(), cols = j.front().size();
  std::vector<Polynomial> e;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) throw ParseError("ragged matrix JSON");
    for (const auto& cell : row) {
      if (!cell.is_string()) throw ParseError("matrix entries must be polynomial strings");
      e.push_back(Polynomial::parse(cell.get<std::string>(), field, nvars));
    }
  }
  return SymMatrix(rows, cols, std::move(e));
}

SymMatrix hankel_matrix(const HankelSpec& spec, Field field) {
  if (spec.rows == 0 || spec.cols == 0) throw ParameterError("Hankel dimensions must be positive");
  // The anti-diagonal of the leading square block carries x_{min(s,t)}.
  if (spec.zeros >= std::max(spec.rows, spec.cols)) {
    throw ParameterError("too many zero anti-diagonals: the main anti-diagonal product would vanish");
  }
  const std::size_t n = spec.nvars();
  auto m = SymMatrix::zero(field, n, spec.rows, spec.cols);
  for (std::size_t i = 0; i < spec.rows; ++i) {
    for (std::size_t j = 0; j < spec.cols; ++j) {
      if (i + j < n) m.at(i, j) = Polynomial::variable(field, n, i + j);
    }
  }
  return m;
}

SymMatrix hankel_square(std::size_t m, std::size_t r, Field field) {
  return hankel_matrix({m, m, r}, field);
}

RingMap phi_endomorphism(std::size_t m, std::size_t r, Field field) {
  if (m < 2 || r > m - 2) throw ParameterError("phi needs 0 <= r <= m-2");
  const std::size_t n = 2 * m - 1;
  std::vector<std::size_t> zeroed;
  for (std::size_t i = n - r; i < n; ++i) zeroed.push_back(i);
  return RingMap::coordinate_section(field, n, zeroed);
}

Polynomial determinant(const SymMatrix& m) {
  if (!m.is_square()) throw ParameterError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n > 24) throw ParameterError("matrix too large for subset expansion");
  // memo[S] = det of the last |S| rows restricted to the column set S.
  std::vector<Polynomial> memo(std::size_t{1} << n, Polynomial(m.field(), m.nvars()));
  memo[0] = Polynomial::constant(m.field(), m.nvars(), 1);
  std::vector<std::vector<std::uint32_t>> by_size(n + 1);
  for (std::uint32_t s = 1; s < memo.size(); ++s) by_size[std::popcount(s)].push_back(s);
  for (std::size_t size = 1; size <= n; ++size) {
    const std::size_t row = n - size;
    for (auto s : by_size[size]) {
      std::vector<Term> acc;
      std::size_t pos = 0;
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(s & (1u << j))) continue;
        const auto& entry = m.at(row, j);
        const auto rest = s & ~(1u << j);
        if (!entry.is_zero() && !memo[rest].is_zero()) {
          auto prod = entry * memo[rest];
          if (pos % 2 == 1) prod = -prod;
          acc.insert(acc.end(), prod.terms().begin(), prod.terms().end());
          any = true;
        }
        ++pos;
      }
      if (any) memo[s] = Polynomial::from_terms(m.field(), m.nvars(), std::move(acc));
    }
    // Subsets two sizes down are no longer needed.
    if (size >= 2) {
      for (auto s : by_size[size - 2]) memo[s] = Polynomial(m.field(), m.nvars());
    }
  }
  return memo.back();
}

Polynomial determinant_by_permutations(const SymMatrix& m) {
  if (!m.is_square()) throw ParameterError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Term> acc;
  do {
    Polynomial prod = Polynomial::constant(m.field(), m.nvars(), 1);
    for (std::size_t i = 0; i < n && !prod.is_zero(); ++i) prod = prod * m.at(i, perm[i]);
    if (prod.is_zero()) continue;
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    if (inversions % 2 == 1) prod = -prod;
    acc.insert(acc.end(), prod.terms().begin(), prod.terms().end());
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Polynomial::from_terms(m.field(), m.nvars(), std::move(acc));
}

Polynomial cofactor(const SymMatrix& m, std::size_t i, std::size_t j) {
  if (!m.is_square()) throw ParameterError("cofactor of a non-square matrix");
  if (i >= m.rows() || j >= m.cols()) throw IndexOutOfRange("cofactor index out of range");
  if (m.rows() == 1) return Polynomial::constant(m.field(), m.nvars(), 1);
  auto d = determinant(m.without(i, j));
  return (i + j) % 2 == 0 ? d : -d;
}

Polynomial delta(const SymMatrix& m, std::size_t i, std::size_t j) { return cofactor(m, j, i); }

SymMatrix adjugate(const SymMatrix& m) {
  if (!m.is_square()) throw ParameterError("adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  auto out = SymMatrix::zero(m.field(), m.nvars(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = cofactor(m, j, i);
  }
  return out;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> c(k);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

std::vector<Minor> minors(const SymMatrix& m, std::size_t t) {
  if (t == 0 || t > std::min(m.rows(), m.cols())) throw ParameterError("minor size out of range");
  std::vector<Minor> out;
  for (const auto& rows : combinations(m.rows(), t)) {
    for (const auto& cols : combinations(m.cols(), t)) {
      out.push_back({rows, cols, determinant(m.submatrix(rows, cols))});
    }
  }
  return out;
}

std::vector<Polynomial> minor_values(const SymMatrix& m, std::size_t t) {
  std::vector<Polynomial> out;
  for (auto& mi : minors(m, t)) out.push_back(std::move(mi.value));
  return out;
}

std::size_t rank_over_fraction_field(const SymMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Polynomial>> a(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i].push_back(m.at(i, j));
  }
  Polynomial prev = Polynomial::constant(m.field(), m.nvars(), 1);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    // Pick the shortest nonzero pivot in the trailing block.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = k; i < rows; ++i) {
      for (std::size_t j = k; j < cols; ++j) {
        if (a[i][j].is_zero()) continue;
        if (pi == rows || a[i][j].size() < a[pi][pj].size()) pi = i, pj = j;
      }
    }
    if (pi == rows) break;
    std::swap(a[k], a[pi]);
    for (auto& row : a) std::swap(row[k], row[pj]);
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).divide_exact(prev);
      }
      a[i][k] = Polynomial(m.field(), m.nvars());
    }
    prev = a[k][k];
    ++rank;
  }
  return rank;
}

bool BlockPartition::identity_holds() const {
  const std::size_t top = m - j;
  auto upper = A * U + B * D;
  auto lower = Bprime * U + C * D;
  auto fi = SymMatrix::identity(det.field(), det.nvars(), m).scaled(det);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < m; ++c) {
      const auto& lhs = i < top ? upper.at(i, c) : lower.at(i - top, c);
      if (!(lhs == fi.at(i, c))) return false;
    }
  }
  return true;
}

BlockPartition block_partition(std::size_t m, std::size_t r, std::size_t j, Field field) {
  if (m < 3 || j < 1 || j > m - 2) throw ParameterError("block partition needs 1 <= j <= m-2");
  auto h = hankel_square(m, r, field);
  auto adj = adjugate(h);
  const std::size_t top = m - j;
  std::vector<std::size_t> first(top), last(j);
  std::iota(first.begin(), first.end(), 0);
  std::iota(last.begin(), last.end(), top);
  return BlockPartition{m,
                        r,
                        j,
                        h.row_block(0, top),
                        h.row_block(top, j),
                        adj.submatrix(first, first),
                        adj.submatrix(first, last),
                        adj.submatrix(last, first),
                        adj.submatrix(last, last),
                        determinant(h)};
}

}  // namespace hankel
