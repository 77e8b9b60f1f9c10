#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hankel {

/// Coefficient field: the rationals or a prime field F_p.
///
/// Elements are carried as mpq_class. Over F_p they are kept as canonical
/// residues in [0, p) with denominator 1, so equality of canonical forms is
/// plain mpq equality in both cases.
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint32_t p);
  /// Accepts "q" / "Q" / "QQ" and "f<p>" / "F<p>".
  static Field parse(std::string_view text);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  mpq_class normalize(const mpq_class& a) const;
  mpq_class from_int(long v) const { return normalize(mpq_class(v)); }
  mpq_class add(const mpq_class& a, const mpq_class& b) const;
  mpq_class sub(const mpq_class& a, const mpq_class& b) const;
  mpq_class mul(const mpq_class& a, const mpq_class& b) const;
  mpq_class neg(const mpq_class& a) const;
  /// Throws hankel::Error on zero.
  mpq_class inv(const mpq_class& a) const;
  mpq_class div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.p_ != b.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace hankel
