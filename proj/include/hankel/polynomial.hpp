#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hankel/field.hpp"

namespace hankel {

/// Exponent vector. Variable x_k of the text grammar is index k-1.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint16_t> exps);
  static Monomial variable(std::size_t nvars, std::size_t var, std::uint16_t power = 1);

  std::size_t nvars() const { return exps_.size(); }
  std::uint32_t degree() const { return degree_; }
  std::uint16_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint16_t>& exponents() const { return exps_; }
  bool is_one() const { return degree_ == 0; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divides(other); returns other / *this.
  Monomial quotient_of(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Plain lexicographic comparison of exponent vectors (container key order).
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.exps_ <=> b.exps_; }

 private:
  std::vector<std::uint16_t> exps_;
  std::uint32_t degree_ = 0;
};

/// Global monomial orders, all with x_1 > x_2 > ... > x_n.
struct MonomialOrder {
  enum class Kind { DegRevLex, Lex, Block };
  Kind kind = Kind::DegRevLex;
  /// Block: the first elim_count variables form a degrevlex block that is
  /// compared first; the rest form a second degrevlex block.
  std::size_t elim_count = 0;

  static MonomialOrder degrevlex() { return {Kind::DegRevLex, 0}; }
  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder block(std::size_t elim) { return {Kind::Block, elim}; }
  std::string name() const;
  static MonomialOrder parse(std::string_view text);

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

/// Negative, zero or positive as a <, =, > b under `order`.
int compare(const Monomial& a, const Monomial& b, const MonomialOrder& order);
int compare_degrevlex(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b);

struct Term {
  Monomial monomial;
  mpq_class coefficient;
};

/// Sparse multivariate polynomial over a Field.
///
/// Terms are stored without zero coefficients and sorted in decreasing
/// degrevlex order, which is also the printing order.
class Polynomial {
 public:
  Polynomial() : field_(Field::rationals()) {}
  Polynomial(Field field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static Polynomial constant(Field field, std::size_t nvars, const mpq_class& c);
  /// x_{var+1}
  static Polynomial variable(Field field, std::size_t nvars, std::size_t var);
  static Polynomial monomial(Field field, const Monomial& m, const mpq_class& c = 1);
  /// Combines duplicates and drops zeros; coefficients are normalized into the field.
  static Polynomial from_terms(Field field, std::size_t nvars, std::vector<Term> terms);

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// -1 for the zero polynomial.
  long total_degree() const;
  bool is_homogeneous() const;
  mpq_class coefficient(const Monomial& m) const;
  /// Largest index of a variable that occurs, or -1.
  long max_variable() const;
  bool uses_variable(std::size_t var) const;

  Polynomial operator+(const Polynomial& q) const;
  Polynomial operator-(const Polynomial& q) const;
  Polynomial operator*(const Polynomial& q) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& q) { return *this = *this + q; }
  Polynomial& operator-=(const Polynomial& q) { return *this = *this - q; }
  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }
  Polynomial scaled(const mpq_class& c) const;
  Polynomial times_monomial(const Monomial& m, const mpq_class& c) const;
  Polynomial pow(unsigned e) const;

  /// d/dx_{var+1}. Over F_p the exponent factor is taken mod p.
  Polynomial partial_derivative(std::size_t var) const;
  mpq_class evaluate(std::span<const mpq_class> point) const;
  /// Throws ZeroPolynomial for p = 0.
  Term initial_term(const MonomialOrder& order) const;
  /// Coefficient of x_{var+1}^degree.
  mpq_class pure_term_coefficient(std::size_t var, std::uint32_t degree) const;
  /// Exact quotient p / q; throws NotDivisible when q does not divide p.
  Polynomial divide_exact(const Polynomial& q) const;
  /// Same polynomial viewed in a ring with more (or equally many) variables.
  Polynomial extended(std::size_t new_nvars) const;
  /// Drops trailing variables; they must not occur.
  Polynomial restricted(std::size_t new_nvars) const;

  /// Over Q: integer-primitive with positive leading coefficient. Over F_p: monic.
  Polynomial normalized() const;

  std::string to_string() const;
  /// Parses the canonical grammar; `nvars` fixes the ring.
  static Polynomial parse(std::string_view text, Field field, std::size_t nvars);

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void check_compatible(const Polynomial& q) const;
  Field field_;
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

std::string coefficient_to_string(const mpq_class& c);

}  // namespace hankel
