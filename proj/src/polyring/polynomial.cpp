#include "hankel/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "hankel/errors.hpp"

namespace hankel {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint16_t> exps) : exps_(std::move(exps)) {
  degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

Monomial Monomial::variable(std::size_t nvars, std::size_t var, std::uint16_t power) {
  if (var >= nvars) throw IndexOutOfRange("variable index out of range");
  Monomial m(nvars);
  m.exps_[var] = power;
  m.degree_ = power;
  return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  r.degree_ += other.degree_;
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r(other);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= exps_[i];
  r.degree_ -= degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(*this);
  r.degree_ = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    r.exps_[i] = std::max(exps_[i], other.exps_[i]);
    r.degree_ += r.exps_[i];
  }
  return r;
}

// ------------------------------------------------------------------ orders

std::string MonomialOrder::name() const {
  switch (kind) {
    case Kind::DegRevLex:
      return "degrevlex";
    case Kind::Lex:
      return "lex";
    case Kind::Block:
      return "block(" + std::to_string(elim_count) + ")";
  }
  return "?";
}

MonomialOrder MonomialOrder::parse(std::string_view text) {
  if (text == "degrevlex") return degrevlex();
  if (text == "lex") return lex();
  if (text.starts_with("block(") && text.ends_with(")")) {
    auto inner = text.substr(6, text.size() - 7);
    std::size_t k = 0;
    for (char c : inner) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParameterError("bad block order");
      k = k * 10 + static_cast<std::size_t>(c - '0');
    }
    return block(k);
  }
  throw ParameterError("unknown monomial order '" + std::string(text) + "'");
}

int compare_degrevlex(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b) {
  std::uint32_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

namespace {

int degrevlex_known_degree(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int compare(const Monomial& a, const Monomial& b, const MonomialOrder& order) {
  switch (order.kind) {
    case MonomialOrder::Kind::DegRevLex:
      return degrevlex_known_degree(a, b);
    case MonomialOrder::Kind::Lex:
      for (std::size_t i = 0; i < a.nvars(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      }
      return 0;
    case MonomialOrder::Kind::Block: {
      const auto& ea = a.exponents();
      const auto& eb = b.exponents();
      std::size_t k = std::min(order.elim_count, ea.size());
      int c = compare_degrevlex(std::span(ea).first(k), std::span(eb).first(k));
      if (c != 0) return c;
      return compare_degrevlex(std::span(ea).subspan(k), std::span(eb).subspan(k));
    }
  }
  return 0;
}

// -------------------------------------------------------------- Polynomial

namespace {

bool term_greater(const Term& a, const Term& b) {
  return degrevlex_known_degree(a.monomial, b.monomial) > 0;
}

}  // namespace

Polynomial Polynomial::constant(Field field, std::size_t nvars, const mpq_class& c) {
  Polynomial p(field, nvars);
  mpq_class v = field.normalize(c);
  if (v != 0) p.terms_.push_back({Monomial(nvars), v});
  return p;
}

Polynomial Polynomial::variable(Field field, std::size_t nvars, std::size_t var) {
  Polynomial p(field, nvars);
  p.terms_.push_back({Monomial::variable(nvars, var), mpq_class(1)});
  return p;
}

Polynomial Polynomial::monomial(Field field, const Monomial& m, const mpq_class& c) {
  Polynomial p(field, m.nvars());
  mpq_class v = field.normalize(c);
  if (v != 0) p.terms_.push_back({m, v});
  return p;
}

Polynomial Polynomial::from_terms(Field field, std::size_t nvars, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.monomial.nvars() != nvars) throw ArityMismatch("term arity differs from ring arity");
  }
  std::sort(terms.begin(), terms.end(), term_greater);
  Polynomial p(field, nvars);
  p.terms_.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size();) {
    mpq_class acc = 0;
    std::size_t j = i;
    for (; j < terms.size() && terms[j].monomial == terms[i].monomial; ++j) acc += terms[j].coefficient;
    acc = field.normalize(acc);
    if (acc != 0) p.terms_.push_back({std::move(terms[i].monomial), std::move(acc)});
    i = j;
  }
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

long Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<long>(terms_.front().monomial.degree());
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.front().monomial.degree() == terms_.back().monomial.degree();
}

mpq_class Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& key) {
    return degrevlex_known_degree(t.monomial, key) > 0;
  });
  if (it != terms_.end() && it->monomial == m) return it->coefficient;
  return 0;
}

long Polynomial::max_variable() const {
  long best = -1;
  for (const auto& t : terms_) {
    for (std::size_t i = t.monomial.nvars(); i-- > 0;) {
      if (t.monomial[i] != 0) {
        best = std::max(best, static_cast<long>(i));
        break;
      }
    }
  }
  return best;
}

bool Polynomial::uses_variable(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.monomial[var] != 0; });
}

void Polynomial::check_compatible(const Polynomial& q) const {
  if (field_ != q.field_) throw FieldMismatch("polynomials over different fields");
  if (nvars_ != q.nvars_) {
    throw ArityMismatch("polynomials in " + std::to_string(nvars_) + " and " + std::to_string(q.nvars_) +
                        " variables");
  }
}

Polynomial Polynomial::operator+(const Polynomial& q) const {
  check_compatible(q);
  Polynomial r(field_, nvars_);
  r.terms_.reserve(terms_.size() + q.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < q.terms_.size()) {
    int c = degrevlex_known_degree(terms_[i].monomial, q.terms_[j].monomial);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(q.terms_[j++]);
    } else {
      mpq_class s = field_.add(terms_[i].coefficient, q.terms_[j].coefficient);
      if (s != 0) r.terms_.push_back({terms_[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < q.terms_.size(); ++j) r.terms_.push_back(q.terms_[j]);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coefficient = field_.neg(t.coefficient);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& q) const { return *this + (-q); }

Polynomial Polynomial::operator*(const Polynomial& q) const {
  check_compatible(q);
  if (terms_.empty() || q.terms_.empty()) return Polynomial(field_, nvars_);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * q.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : q.terms_) {
      prod.push_back({a.monomial * b.monomial, field_.mul(a.coefficient, b.coefficient)});
    }
  }
  return from_terms(field_, nvars_, std::move(prod));
}

Polynomial Polynomial::scaled(const mpq_class& c) const {
  mpq_class v = field_.normalize(c);
  Polynomial r(field_, nvars_);
  if (v == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coefficient = field_.mul(t.coefficient, v);
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const mpq_class& c) const {
  if (m.nvars() != nvars_) throw ArityMismatch("monomial arity differs from ring arity");
  mpq_class v = field_.normalize(c);
  Polynomial r(field_, nvars_);
  if (v == 0) return r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the order.
  for (const auto& t : terms_) r.terms_.push_back({t.monomial * m, field_.mul(t.coefficient, v)});
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(field_, nvars_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::partial_derivative(std::size_t var) const {
  if (var >= nvars_) throw IndexOutOfRange("derivative variable index out of range");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::uint16_t e = t.monomial[var];
    if (e == 0) continue;
    auto exps = t.monomial.exponents();
    exps[var] -= 1;
    out.push_back({Monomial(std::move(exps)), field_.mul(t.coefficient, field_.from_int(e))});
  }
  return from_terms(field_, nvars_, std::move(out));
}

mpq_class Polynomial::evaluate(std::span<const mpq_class> point) const {
  if (point.size() != nvars_) throw ArityMismatch("evaluation point has wrong length");
  mpq_class total = 0;
  for (const auto& t : terms_) {
    mpq_class v = t.coefficient;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (std::uint16_t k = 0; k < t.monomial[i]; ++k) v = field_.mul(v, field_.normalize(point[i]));
    }
    total = field_.add(total, v);
  }
  return field_.normalize(total);
}

Term Polynomial::initial_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw ZeroPolynomial("initial term of the zero polynomial");
  if (order.kind == MonomialOrder::Kind::DegRevLex) return terms_.front();
  const Term* best = &terms_.front();
  for (const auto& t : terms_) {
    if (compare(t.monomial, best->monomial, order) > 0) best = &t;
  }
  return *best;
}

mpq_class Polynomial::pure_term_coefficient(std::size_t var, std::uint32_t degree) const {
  if (var >= nvars_) throw IndexOutOfRange("variable index out of range");
  return coefficient(Monomial::variable(nvars_, var, static_cast<std::uint16_t>(degree)));
}

Polynomial Polynomial::divide_exact(const Polynomial& q) const {
  check_compatible(q);
  if (q.is_zero()) throw NotDivisible("division by the zero polynomial");
  Polynomial rem = *this;
  std::vector<Term> quot;
  const Term& lead = q.terms_.front();
  mpq_class lead_inv = field_.inv(lead.coefficient);
  while (!rem.is_zero()) {
    const Term& t = rem.terms_.front();
    if (!lead.monomial.divides(t.monomial)) throw NotDivisible("polynomial does not divide");
    Term qt{lead.monomial.quotient_of(t.monomial), field_.mul(t.coefficient, lead_inv)};
    rem = rem - q.times_monomial(qt.monomial, qt.coefficient);
    quot.push_back(std::move(qt));
  }
  return from_terms(field_, nvars_, std::move(quot));
}

Polynomial Polynomial::extended(std::size_t new_nvars) const {
  if (new_nvars < nvars_) return restricted(new_nvars);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    auto exps = t.monomial.exponents();
    exps.resize(new_nvars, 0);
    out.push_back({Monomial(std::move(exps)), t.coefficient});
  }
  return from_terms(field_, new_nvars, std::move(out));
}

Polynomial Polynomial::restricted(std::size_t new_nvars) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    auto exps = t.monomial.exponents();
    for (std::size_t i = new_nvars; i < exps.size(); ++i) {
      if (exps[i] != 0) throw ArityMismatch("cannot drop a variable that occurs");
    }
    exps.resize(new_nvars);
    out.push_back({Monomial(std::move(exps)), t.coefficient});
  }
  return from_terms(field_, new_nvars, std::move(out));
}

Polynomial Polynomial::normalized() const {
  if (terms_.empty()) return *this;
  if (!field_.is_rational()) return scaled(field_.inv(terms_.front().coefficient));
  mpz_class den_lcm = 1, num_gcd = 0;
  for (const auto& t : terms_) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coefficient.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coefficient.get_num_mpz_t());
  }
  mpq_class factor(den_lcm, num_gcd);
  factor.canonicalize();
  if (terms_.front().coefficient < 0) factor = -factor;
  return scaled(factor);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.field_ != b.field_ || a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].monomial != b.terms_[i].monomial || a.terms_[i].coefficient != b.terms_[i].coefficient) {
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------- text format

std::string coefficient_to_string(const mpq_class& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class c = t.coefficient;
    bool negative = c < 0;
    if (negative) c = -c;
    if (negative) {
      out += '-';
    } else if (!first) {
      out += '+';
    }
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < nvars_; ++i) {
      auto e = t.monomial[i];
      if (e == 0) continue;
      if (!factors.empty()) factors += '*';
      factors += 'x' + std::to_string(i + 1);
      if (e != 1) factors += '^' + std::to_string(e);
    }
    if (factors.empty()) {
      out += coefficient_to_string(c);
    } else if (c == 1) {
      out += factors;
    } else {
      out += coefficient_to_string(c) + '*' + factors;
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view s, std::size_t nvars) : s_(s), nvars_(nvars) {}

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skip();
    if (pos_ == s_.size()) throw ParseError("empty polynomial text");
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        throw error("expected '+' or '-'");
      }
      first = false;
      skip();
      terms.push_back(term(sign));
    }
    return terms;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  ParseError error(const std::string& what) const {
    return ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw error("expected digits");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }
  Term term(int sign) {
    Term t{Monomial(nvars_), mpq_class(sign)};
    std::vector<std::uint16_t> exps(nvars_, 0);
    bool need_factor = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      mpz_class num = integer();
      mpz_class den = 1;
      skip();
      if (peek() == '/') {
        ++pos_;
        den = integer();
        if (den == 0) throw error("zero denominator");
      }
      mpq_class c(num, den);
      c.canonicalize();
      t.coefficient *= c;
      skip();
      if (peek() == '*') {
        ++pos_;
      } else {
        need_factor = false;
      }
    }
    while (need_factor) {
      skip();
      if (peek() != 'x') throw error("expected variable");
      ++pos_;
      mpz_class idx = integer();
      if (idx < 1 || idx > static_cast<unsigned long>(nvars_)) throw error("variable index out of range");
      unsigned long e = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        mpz_class ez = integer();
        if (ez > 65535) throw error("exponent too large");
        e = ez.get_ui();
      }
      std::size_t k = idx.get_ui() - 1;
      if (exps[k] + e > 65535) throw error("exponent too large");
      exps[k] = static_cast<std::uint16_t>(exps[k] + e);
      skip();
      if (peek() == '*') {
        ++pos_;
      } else {
        need_factor = false;
      }
    }
    t.monomial = Monomial(std::move(exps));
    return t;
  }

  std::string_view s_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, Field field, std::size_t nvars) {
  Parser parser(text, nvars);
  auto terms = parser.parse();
  return from_terms(field, nvars, std::move(terms));
}

}  // namespace hankel
