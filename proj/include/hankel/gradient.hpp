#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hankel/groebner.hpp"
#include "hankel/polynomial.hpp"
#include "hankel/symmatrix.hpp"
#include "hankel/verdict.hpp"

namespace hankel::grad {

/// f = det H_m[r] with its partials f_1..f_n (n = 2m-r-1) and the cofactors
/// Delta_{i,j} = signed cofactor of the (j,i) entry.
struct GradientData {
  std::size_t m = 0, r = 0;
  Polynomial f;
  std::vector<Polynomial> partials;
  /// cofactor_table[i][j] = Delta_{i+1,j+1}.
  std::vector<std::vector<Polynomial>> cofactor_table;

  std::size_t nvars() const { return 2 * m - r - 1; }
  /// M_{i,j}: signed cofactor of the (i,j) entry, 1-based.
  const Polynomial& signed_cofactor(std::size_t i, std::size_t j) const { return cofactor_table[j - 1][i - 1]; }
  const Polynomial& partial(std::size_t k) const { return partials[k - 1]; }
  gb::Ideal ideal() const { return gb::Ideal::from(partials); }
};

/// Requires 2 <= m and r <= m-2. Checks the derivative and Euler invariants
/// before returning.
GradientData gradient(std::size_t m, std::size_t r, Field field = Field::rationals());

/// Per-k verdict of f_k = sum_{i+j=k+1} M_{i,j}.
struct CofactorDecompositionReport {
  std::size_t m = 0, r = 0;
  std::vector<bool> holds;
  bool euler = false;
  bool all() const;
};
CofactorDecompositionReport cofactor_decomposition_check(std::size_t m, std::size_t r,
                                                         Field field = Field::rationals());

/// Variables {x_1, x_{m-r-1}, x_{2m-r-1}} kept by the closed-form degeneration (0-based).
std::vector<std::size_t> appendix_variables(std::size_t m, std::size_t r);

struct HessianData {
  SymMatrix H;
  /// det of H with every variable off appendix_variables sent to 0.
  Polynomial degenerated;
};
HessianData hessian(std::size_t m, std::size_t r, Field field = Field::rationals());
Polynomial hessian_degenerated(std::size_t m, std::size_t r, Field field = Field::rationals());

/// Proof that det H(f) != 0: the degeneration, else a nonzero value at a
/// random rational point (up to 5 points), else the symbolic determinant.
struct HessianCertificate {
  bool nonzero = false;
  std::string method;
  Polynomial degenerated;
  std::vector<mpq_class> point;
  std::uint64_t seed = 0;
  unsigned attempts = 0;
};
HessianCertificate certify_hessian_nonzero(std::size_t m, std::size_t r, std::uint64_t seed = 1,
                                           Field field = Field::rationals());

/// The closed-form product
///   C p^{2m-2r-4} q^{r+1} (+- r(m-r-2) p x_{m-r-1}^{m-r-1} x_{2m-r-1}^{r-1}
///                          +- (m-r-1)(r+1) x_{m-r-1}^{2m-2r-4} x_{2m-r-1}^{2r})
/// with p = x_{m-r-1}^{m-r-3} x_{2m-r-1}^{r+1}, q = x_1 x_{m-r-1}^{m-r-3} x_{2m-r-1}^r and
/// C = 2^{r+1}(r+1)(m-r-1)!(m-r-2)!. Signs of the inner terms are left open.
struct ClosedForm {
  std::size_t m = 0, r = 0;
  mpz_class prefactor;
  Monomial outer;
  /// Absent when r = 0.
  std::optional<Monomial> inner_first;
  Monomial inner_second;
  mpz_class inner_first_coefficient;
  mpz_class inner_second_coefficient;

  /// Expansion with the second inner term taken with sign inner_sign.
  Polynomial expansion(int inner_sign) const;
  /// Distinct nonzero expansions over both relative signs.
  std::vector<Polynomial> expansions() const;
  bool inner_monomials_coincide() const { return inner_first && *inner_first == inner_second; }
  /// Sorted support over all expansions.
  std::vector<Monomial> support() const;
};
/// Requires r <= m-3; r = m-2 raises ParameterError.
ClosedForm appendix_closed_form(std::size_t m, std::size_t r);

struct AppendixComparison {
  bool matches = false;
  /// "same" or "opposite" relative sign of the inner terms; empty if none fits.
  std::string inner_signs;
  int global_sign = 0;
  Polynomial degenerated;
};
/// Compares hessian_degenerated with the closed form up to one global sign.
AppendixComparison compare_with_closed_form(std::size_t m, std::size_t r);

/// det of the leading (m+1)x(m+1) block of H(f) after x_{m+2},...,x_{2m-r-1} -> 0.
struct ThetaReport {
  std::size_t m = 0, r = 0;
  Polynomial det;
  unsigned expected_exponent = 0;
  mpq_class scalar;
  bool holds = false;
};
ThetaReport theta_check(std::size_t m, std::size_t r, Field field = Field::rationals());

struct RelationCheck {
  std::string name;
  bool holds = false;
  /// The relation equals f rather than 0.
  bool modulo_f = false;
};
struct CofactorRelationsReport {
  std::size_t m = 0, r = 0;
  std::vector<RelationCheck> relations;
  bool all_hold() const;
};
/// Row relations of H * cof = f I for m-r = 3, and the blockwise identity for every 1 <= j <= m-2.
CofactorRelationsReport cofactor_relations_check(std::size_t m, std::size_t r, Field field = Field::rationals());

struct CodimReport {
  std::size_t m = 0, r = 0;
  long codim = 0;
  long expected = 0;
  bool matches() const { return codim == expected; }
};
/// Requires m-r >= 2.
CodimReport gradient_codim(std::size_t m, std::size_t r, const gb::Options& options = {});

struct MinimalPrimesReport {
  std::size_t m = 0, r = 0;
  bool a_in_q = false;
  bool b_in_p = false;
  long codim_q = 0;
  long codim_p = 0;
  bool c_codims = false;
  /// Radical spot check verdict: pass, fail or budget-exceeded.
  Verdict d_radical = Verdict::BudgetExceeded;
  std::vector<std::string> d_checked;
  bool core_holds() const { return a_in_q && b_in_p && c_codims; }
};
/// Requires 1 <= r <= m-3.
MinimalPrimesReport minimal_primes_checks(std::size_t m, std::size_t r, const gb::Options& options = {},
                                          std::uint64_t seed = 1, std::size_t spot_checks = 3);

struct RegularStep {
  std::size_t variable = 0;
  bool regular = false;
};
struct RegularSequenceReport {
  std::size_t m = 0;
  std::vector<std::size_t> sequence;
  std::vector<RegularStep> steps;
  Verdict verdict = Verdict::Consistent;
  std::optional<std::size_t> first_failure;
};
/// Tests x_{2m-1}, ..., x_{m+3} in turn for regularity modulo J + previous variables (r = 0).
RegularSequenceReport regular_sequence_experiment(std::size_t m, const gb::Options& options = {});

}  // namespace hankel::grad
