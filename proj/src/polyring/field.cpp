#include "hankel/field.hpp"

#include <cctype>
#include <charconv>

#include "hankel/errors.hpp"

namespace hankel {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw ParameterError("field characteristic " + std::to_string(p) + " is not prime");
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "q" || text == "Q" || text == "QQ") return rationals();
  if (text.size() >= 2 && (text[0] == 'f' || text[0] == 'F')) {
    std::uint32_t p = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), p);
    if (ec == std::errc() && ptr == text.data() + text.size()) return prime(p);
  }
  throw ParameterError("unknown field '" + std::string(text) + "' (expected q or f<p>)");
}

std::string Field::name() const { return p_ == 0 ? "q" : "f" + std::to_string(p_); }

mpq_class Field::normalize(const mpq_class& a) const {
  if (p_ == 0) {
    mpq_class r(a);
    r.canonicalize();
    return r;
  }
  // a = num/den; map den to its inverse mod p.
  mpz_class mod(p_);
  mpz_class num = a.get_num() % mod;
  if (num < 0) num += mod;
  mpz_class den = a.get_den() % mod;
  if (den < 0) den += mod;
  if (den == 0) throw Error("denominator divisible by field characteristic");
  if (den != 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    num = (num * inv) % mod;
  }
  return mpq_class(num);
}

mpq_class Field::add(const mpq_class& a, const mpq_class& b) const {
  if (p_ == 0) return a + b;
  mpz_class s = a.get_num() + b.get_num();
  if (s >= p_) s -= p_;
  return mpq_class(s);
}

mpq_class Field::sub(const mpq_class& a, const mpq_class& b) const {
  if (p_ == 0) return a - b;
  mpz_class s = a.get_num() - b.get_num();
  if (s < 0) s += p_;
  return mpq_class(s);
}

mpq_class Field::mul(const mpq_class& a, const mpq_class& b) const {
  if (p_ == 0) return a * b;
  mpz_class s = (a.get_num() * b.get_num()) % p_;
  return mpq_class(s);
}

mpq_class Field::neg(const mpq_class& a) const {
  if (p_ == 0) return -a;
  if (a == 0) return a;
  return mpq_class(mpz_class(p_) - a.get_num());
}

mpq_class Field::inv(const mpq_class& a) const {
  if (a == 0) throw Error("division by zero in " + name());
  if (p_ == 0) return 1 / a;
  mpz_class r;
  mpz_class mod(p_);
  mpz_invert(r.get_mpz_t(), a.get_num().get_mpz_t(), mod.get_mpz_t());
  return mpq_class(r);
}

}  // namespace hankel
