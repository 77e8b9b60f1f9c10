#include "hankel/groebner.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <sstream>

#include "engine.hpp"
#include "hankel/errors.hpp"
#include "hankel/ring_map.hpp"

namespace hankel::gb {

using detail::Cmp;
using detail::Engine;
using detail::Exp;
using detail::IntegerDomain;
using detail::Limits;
using detail::Poly;
using detail::PrimeDomain;

// ------------------------------------------------------------------- Ideal

Ideal::Ideal(Field field, std::size_t nvars, const std::vector<Polynomial>& gens) : field_(field), nvars_(nvars) {
  for (const auto& g : gens) {
    if (g.field() != field_) throw FieldMismatch("ideal generator over a different field");
    if (g.nvars() != nvars_) throw ArityMismatch("ideal generator in a different ring");
    if (g.is_zero()) continue;
    auto n = g.normalized();
    if (std::find(gens_.begin(), gens_.end(), n) == gens_.end()) gens_.push_back(std::move(n));
  }
}

Ideal Ideal::from(const std::vector<Polynomial>& gens) {
  if (gens.empty()) throw ParameterError("Ideal::from needs at least one generator");
  return Ideal(gens.front().field(), gens.front().nvars(), gens);
}

Ideal Ideal::operator+(const Ideal& other) const {
  if (other.field_ != field_) throw FieldMismatch("ideals over different fields");
  if (other.nvars_ != nvars_) throw ArityMismatch("ideals in different rings");
  auto all = gens_;
  all.insert(all.end(), other.gens_.begin(), other.gens_.end());
  return Ideal(field_, nvars_, all);
}

Ideal Ideal::operator*(const Ideal& other) const {
  if (other.field_ != field_) throw FieldMismatch("ideals over different fields");
  if (other.nvars_ != nvars_) throw ArityMismatch("ideals in different rings");
  std::vector<Polynomial> prods;
  for (const auto& a : gens_) {
    for (const auto& b : other.gens_) prods.push_back(a * b);
  }
  return Ideal(field_, nvars_, prods);
}

Ideal Ideal::power(unsigned e) const {
  Ideal result(field_, nvars_, {Polynomial::constant(field_, nvars_, 1)});
  for (unsigned k = 0; k < e; ++k) result = result * *this;
  return result;
}

bool Ideal::is_homogeneous() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& p) { return p.is_homogeneous(); });
}

// ------------------------------------------------------------ conversions

namespace {

Exp to_exp(const Monomial& m) {
  if (m.nvars() > detail::kMaxVars) throw ParameterError("Groebner engine supports at most 32 variables");
  Exp e;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    e.e[i] = m[i];
    if (m[i]) e.mask |= 1u << i;
  }
  e.deg = m.degree();
  return e;
}

Monomial from_exp(const Exp& e, std::size_t n) {
  std::vector<std::uint16_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = e.e[i];
  return Monomial(std::move(v));
}

Poly<IntegerDomain> to_integer_poly(const Polynomial& p) {
  mpz_class den = 1;
  for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coefficient.get_den_mpz_t());
  Poly<IntegerDomain> out;
  for (const auto& t : p.terms()) {
    mpz_class c = t.coefficient.get_num() * (den / t.coefficient.get_den());
    out.terms.push_back({to_exp(t.monomial), std::move(c)});
  }
  return out;
}

Poly<PrimeDomain> to_prime_poly(const Polynomial& p) {
  Poly<PrimeDomain> out;
  for (const auto& t : p.terms()) out.terms.push_back({to_exp(t.monomial), t.coefficient.get_num().get_ui()});
  return out;
}

template <class D>
Polynomial to_polynomial(const Poly<D>& p, const Field& field, std::size_t n) {
  std::vector<Term> terms;
  terms.reserve(p.terms.size());
  for (const auto& t : p.terms) {
    if constexpr (std::is_same_v<D, IntegerDomain>) {
      terms.push_back({from_exp(t.m, n), mpq_class(t.c)});
    } else {
      terms.push_back({from_exp(t.m, n), mpq_class(static_cast<unsigned long>(t.c))});
    }
  }
  return Polynomial::from_terms(field, n, std::move(terms));
}

Cmp make_cmp(std::size_t n, const MonomialOrder& order) { return Cmp{n, order.kind, order.elim_count}; }

Limits make_limits(const Budget& b, std::size_t term_bytes) {
  return Limits{b.max_pairs, b.max_basis, b.max_bytes / term_bytes};
}

std::vector<unsigned> make_weights(const Options& o, std::size_t n) {
  if (o.weights.empty()) return std::vector<unsigned>(n, 1);
  if (o.weights.size() != n) throw ArityMismatch("weight vector length differs from ring arity");
  return o.weights;
}

template <class D, class Conv>
std::vector<Polynomial> run_engine(D dom, const Ideal& ideal, const MonomialOrder& order, const Options& options,
                                   Conv conv) {
  const std::size_t n = ideal.nvars();
  Engine<D> engine(dom, make_cmp(n, order), make_weights(options, n),
                   make_limits(options.budget, sizeof(detail::Term<D>) + 16));
  std::vector<Poly<D>> input;
  for (const auto& g : ideal.generators()) input.push_back(conv(g));
  auto basis = engine.run(std::move(input));
  thread_stats().pairs_reduced += engine.pairs_done();
  std::vector<Polynomial> out;
  for (const auto& p : basis) out.push_back(to_polynomial(p, ideal.field(), n));
  return out;
}

std::atomic<BasisCache*> g_default_cache{nullptr};

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

void set_default_cache(BasisCache* cache) { g_default_cache.store(cache); }
BasisCache* default_cache() { return g_default_cache.load(); }

Stats& thread_stats() {
  thread_local Stats stats;
  return stats;
}

std::string cache_key(const Ideal& ideal, const MonomialOrder& order) {
  std::string material = std::string(kEngineVersion) + "\n" + ideal.field().name() + "\n" +
                         std::to_string(ideal.nvars()) + "\n" + order.name() + "\n";
  for (const auto& g : ideal.generators()) material += g.to_string() + "\n";
  return sha256_hex(material);
}

// --------------------------------------------------------- GroebnerBasis

std::vector<Polynomial> GroebnerBasis::monic() const {
  std::vector<Polynomial> out;
  for (const auto& p : basis_) out.push_back(p.scaled(field_.inv(p.initial_term(order_).coefficient)));
  return out;
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& p : basis_) out.push_back(p.initial_term(order_).monomial);
  return out;
}

bool GroebnerBasis::is_unit() const { return basis_.size() == 1 && basis_.front().is_constant(); }

std::string GroebnerBasis::to_text() const {
  std::string out = order_.name() + "\n" + field_.name() + "\n" + std::to_string(nvars_) + "\n";
  for (const auto& p : basis_) out += p.to_string() + "\n";
  return out;
}

GroebnerBasis GroebnerBasis::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string order_line, field_line, nvars_line, line;
  if (!std::getline(in, order_line) || !std::getline(in, field_line) || !std::getline(in, nvars_line)) {
    throw ParseError("truncated basis text");
  }
  auto order = MonomialOrder::parse(order_line);
  auto field = Field::parse(field_line);
  std::size_t nvars = 0;
  try {
    nvars = std::stoul(nvars_line);
  } catch (const std::exception&) {
    throw ParseError("bad variable count in basis text");
  }
  std::vector<Polynomial> basis;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    basis.push_back(Polynomial::parse(line, field, nvars));
  }
  if (basis.empty()) throw ParseError("empty basis text");
  return GroebnerBasis(field, nvars, order, std::move(basis));
}

// ------------------------------------------------------------ algorithms

GroebnerBasis groebner_basis(const Ideal& ideal, const MonomialOrder& order, const Options& options) {
  if (ideal.nvars() > detail::kMaxVars) throw ParameterError("Groebner engine supports at most 32 variables");
  if (ideal.is_zero()) return GroebnerBasis(ideal.field(), ideal.nvars(), order, {});
  BasisCache* cache = options.cache ? options.cache : default_cache();
  std::string key;
  if (cache) {
    key = cache_key(ideal, order);
    if (auto text = cache->load(key)) {
      try {
        auto g = GroebnerBasis::from_text(*text);
        if (g.field() == ideal.field() && g.nvars() == ideal.nvars() && g.order() == order) {
          ++thread_stats().cache_hits;
          return g;
        }
      } catch (const Error&) {
        // Unreadable entry: recompute and overwrite.
      }
    }
  }
  std::vector<Polynomial> basis;
  if (ideal.field().is_rational()) {
    basis = run_engine(IntegerDomain{}, ideal, order, options, to_integer_poly);
  } else {
    basis = run_engine(PrimeDomain{ideal.field().characteristic()}, ideal, order, options, to_prime_poly);
  }
  ++thread_stats().bases_computed;
  GroebnerBasis result(ideal.field(), ideal.nvars(), order, std::move(basis));
  if (options.verify && !verify_basis(result)) throw Error("Groebner basis failed S-polynomial verification");
  if (cache) cache->store(key, result.to_text());
  return result;
}

namespace {

template <class D, class Conv>
Polynomial nf_impl(D dom, const Polynomial& p, const GroebnerBasis& g, Conv conv) {
  const std::size_t n = g.nvars();
  Engine<D> engine(dom, make_cmp(n, g.order()), std::vector<unsigned>(n, 1),
                   Limits{SIZE_MAX, SIZE_MAX, SIZE_MAX});
  std::vector<Poly<D>> basis;
  for (const auto& b : g.elements()) basis.push_back(conv(b));
  engine.load(std::move(basis));
  auto q = conv(p);
  engine.sort_terms(q);
  typename D::C scale = 1;
  auto r = engine.reduce(std::move(q), engine.active(), &scale);
  auto out = to_polynomial(r, g.field(), n);
  if constexpr (std::is_same_v<D, IntegerDomain>) {
    // conv(p) = den * p, so NF(p) = r / (den * scale).
    mpz_class den = 1;
    for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coefficient.get_den_mpz_t());
    mpq_class factor(1, den * scale);
    factor.canonicalize();
    out = out.scaled(factor);
  }
  return out;
}

template <class D, class Conv>
bool verify_impl(D dom, const GroebnerBasis& g, Conv conv) {
  const std::size_t n = g.nvars();
  Engine<D> engine(dom, make_cmp(n, g.order()), std::vector<unsigned>(n, 1),
                   Limits{SIZE_MAX, SIZE_MAX, SIZE_MAX});
  std::vector<Poly<D>> basis;
  for (const auto& b : g.elements()) basis.push_back(conv(b));
  engine.load(std::move(basis));
  return engine.all_spolys_reduce();
}

}  // namespace

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& g) {
  if (p.field() != g.field()) throw FieldMismatch("normal form over a different field");
  if (p.nvars() != g.nvars()) throw ArityMismatch("normal form in a different ring");
  if (p.is_zero() || g.size() == 0) return p;
  if (g.field().is_rational()) return nf_impl(IntegerDomain{}, p, g, to_integer_poly);
  return nf_impl(PrimeDomain{g.field().characteristic()}, p, g, to_prime_poly);
}

bool verify_basis(const GroebnerBasis& g) {
  if (g.size() == 0) return true;
  if (g.field().is_rational()) return verify_impl(IntegerDomain{}, g, to_integer_poly);
  return verify_impl(PrimeDomain{g.field().characteristic()}, g, to_prime_poly);
}

bool ideal_membership(const Polynomial& p, const Ideal& ideal, const Options& options) {
  if (p.is_zero()) return true;
  if (ideal.is_zero()) return false;
  return normal_form(p, groebner_basis(ideal, MonomialOrder::degrevlex(), options)).is_zero();
}

bool ideal_contains(const Ideal& big, const Ideal& small, const Options& options) {
  if (small.is_zero()) return true;
  if (big.is_zero()) return false;
  auto g = groebner_basis(big, MonomialOrder::degrevlex(), options);
  for (const auto& p : small.generators()) {
    if (!normal_form(p, g).is_zero()) return false;
  }
  return true;
}

bool ideal_equal(const Ideal& a, const Ideal& b, const Options& options) {
  return ideal_contains(a, b, options) && ideal_contains(b, a, options);
}

long monomial_dimension(const std::vector<Monomial>& gens, std::size_t nvars) {
  if (nvars > 63) throw ParameterError("too many variables for subset search");
  std::vector<std::uint64_t> supports;
  for (const auto& m : gens) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < nvars; ++i) {
      if (m[i]) s |= std::uint64_t{1} << i;
    }
    if (s == 0) return -1;
    supports.push_back(s);
  }
  // Branch over variables: include (if still independent) or exclude.
  long best = 0;
  std::function<void(std::size_t, std::uint64_t, long)> search = [&](std::size_t i, std::uint64_t set, long size) {
    if (size + static_cast<long>(nvars - i) <= best) return;
    if (i == nvars) {
      best = size;
      return;
    }
    std::uint64_t with = set | (std::uint64_t{1} << i);
    bool ok = std::none_of(supports.begin(), supports.end(), [&](std::uint64_t s) { return (s & ~with) == 0; });
    if (ok) search(i + 1, with, size + 1);
    search(i + 1, set, size);
  };
  search(0, 0, 0);
  return best;
}

long dimension(const Ideal& ideal, const Options& options) {
  if (ideal.is_zero()) return static_cast<long>(ideal.nvars());
  auto g = groebner_basis(ideal, MonomialOrder::degrevlex(), options);
  return monomial_dimension(g.leading_monomials(), ideal.nvars());
}

long codimension(const Ideal& ideal, const Options& options) {
  long d = dimension(ideal, options);
  return static_cast<long>(ideal.nvars()) - d;
}

namespace {

/// Ring automorphism sending x_{perm[i]} of the source to x_i of the target,
/// i.e. new variable i is old variable perm[i].
std::pair<RingMap, RingMap> permutation_maps(const Field& field, const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  std::vector<Polynomial> fwd(n, Polynomial(field, n)), back(n, Polynomial(field, n));
  for (std::size_t i = 0; i < n; ++i) {
    fwd[perm[i]] = Polynomial::variable(field, n, i);
    back[i] = Polynomial::variable(field, n, perm[i]);
  }
  return {RingMap(field, n, fwd), RingMap(field, n, back)};
}

Ideal map_ideal(const Ideal& ideal, const RingMap& map) {
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(map.apply(g));
  return Ideal(ideal.field(), map.target_nvars(), gens);
}

bool free_of(const Polynomial& p, std::size_t first_vars) {
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < first_vars; ++i) {
      if (t.monomial[i]) return false;
    }
  }
  return true;
}

}  // namespace

Ideal elimination(const Ideal& ideal, const std::vector<std::size_t>& elim_vars, const Options& options) {
  const std::size_t n = ideal.nvars();
  std::vector<bool> is_elim(n, false);
  for (auto v : elim_vars) {
    if (v >= n) throw IndexOutOfRange("elimination variable out of range");
    is_elim[v] = true;
  }
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_elim[i]) perm.push_back(i);
  }
  const std::size_t k = perm.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_elim[i]) perm.push_back(i);
  }
  auto [fwd, back] = permutation_maps(ideal.field(), perm);
  Options opts = options;
  if (!options.weights.empty()) {
    opts.weights.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) opts.weights[i] = options.weights[perm[i]];
  }
  auto g = groebner_basis(map_ideal(ideal, fwd), MonomialOrder::block(k), opts);
  std::vector<Polynomial> kept;
  for (const auto& p : g.elements()) {
    if (free_of(p, k)) kept.push_back(back.apply(p));
  }
  return Ideal(ideal.field(), n, kept);
}

Ideal intersection(const Ideal& a, const Ideal& b, const Options& options) {
  if (a.field() != b.field()) throw FieldMismatch("ideals over different fields");
  if (a.nvars() != b.nvars()) throw ArityMismatch("ideals in different rings");
  const std::size_t n = a.nvars();
  if (a.is_zero() || b.is_zero()) return Ideal(a.field(), n);
  const Field& k = a.field();
  // Tag variable t is x_1 of the extended ring.
  std::vector<Polynomial> shift;
  for (std::size_t i = 0; i < n; ++i) shift.push_back(Polynomial::variable(k, n + 1, i + 1));
  RingMap up(k, n + 1, shift);
  auto t = Polynomial::variable(k, n + 1, 0);
  auto one_minus_t = Polynomial::constant(k, n + 1, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators()) gens.push_back(t * up.apply(g));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * up.apply(g));
  auto g = groebner_basis(Ideal(k, n + 1, gens), MonomialOrder::block(1), options);
  std::vector<Polynomial> down_images{Polynomial(k, n)};
  for (std::size_t i = 0; i < n; ++i) down_images.push_back(Polynomial::variable(k, n, i));
  RingMap down(k, n, down_images);
  std::vector<Polynomial> kept;
  for (const auto& p : g.elements()) {
    if (free_of(p, 1)) kept.push_back(down.apply(p));
  }
  return Ideal(k, n, kept);
}

Ideal ideal_quotient(const Ideal& ideal, const Polynomial& f, const Options& options) {
  if (f.is_zero()) throw ZeroPolynomial("quotient by the zero polynomial");
  auto meet = intersection(ideal, Ideal(ideal.field(), ideal.nvars(), {f}), options);
  std::vector<Polynomial> gens;
  for (const auto& g : meet.generators()) gens.push_back(g.divide_exact(f));
  return Ideal(ideal.field(), ideal.nvars(), gens);
}

namespace {

std::vector<std::size_t> move_last(std::size_t n, std::size_t var) {
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != var) perm.push_back(i);
  }
  perm.push_back(var);
  return perm;
}

}  // namespace

Ideal quotient_by_variable(const Ideal& ideal, std::size_t var, const Options& options) {
  const std::size_t n = ideal.nvars();
  if (var >= n) throw IndexOutOfRange("quotient variable out of range");
  if (!ideal.is_homogeneous()) return ideal_quotient(ideal, Polynomial::variable(ideal.field(), n, var), options);
  if (ideal.is_zero()) return ideal;
  auto [fwd, back] = permutation_maps(ideal.field(), move_last(n, var));
  auto g = groebner_basis(map_ideal(ideal, fwd), MonomialOrder::degrevlex(), options);
  auto x = Polynomial::variable(ideal.field(), n, n - 1);
  std::vector<Polynomial> gens;
  for (const auto& p : g.elements()) {
    bool divisible = p.initial_term(MonomialOrder::degrevlex()).monomial[n - 1] > 0;
    gens.push_back(back.apply(divisible ? p.divide_exact(x) : p));
  }
  return Ideal(ideal.field(), n, gens);
}

bool is_regular_variable(const Ideal& ideal, std::size_t var, const Options& options) {
  const std::size_t n = ideal.nvars();
  if (var >= n) throw IndexOutOfRange("variable out of range");
  if (!ideal.is_homogeneous()) {
    auto x = Polynomial::variable(ideal.field(), n, var);
    return ideal_contains(ideal, ideal_quotient(ideal, x, options), options);
  }
  if (ideal.is_zero()) return true;
  auto [fwd, back] = permutation_maps(ideal.field(), move_last(n, var));
  auto g = groebner_basis(map_ideal(ideal, fwd), MonomialOrder::degrevlex(), options);
  if (g.is_unit()) return true;
  for (const auto& m : g.leading_monomials()) {
    if (m[n - 1] > 0) return false;
  }
  return true;
}

bool radical_membership(const Polynomial& p, const Ideal& ideal, const Options& options) {
  const std::size_t n = ideal.nvars();
  const Field& k = ideal.field();
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.extended(n + 1));
  auto y = Polynomial::variable(k, n + 1, n);
  gens.push_back(Polynomial::constant(k, n + 1, 1) - y * p.extended(n + 1));
  return groebner_basis(Ideal(k, n + 1, gens), MonomialOrder::degrevlex(), options).is_unit();
}

Ideal kernel_of_algebra_map(const std::vector<Polynomial>& images, const Options& options) {
  if (images.empty()) throw ParameterError("kernel of an empty map");
  const Field& k = images.front().field();
  const std::size_t n = images.front().nvars();
  const std::size_t s = images.size();
  Options opts = options;
  opts.weights.assign(n + s, 1);
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < s; ++i) {
    if (!images[i].is_homogeneous() || images[i].is_zero()) throw ParameterError("kernel images must be nonzero forms");
    opts.weights[n + i] = static_cast<unsigned>(images[i].total_degree());
    gens.push_back(Polynomial::variable(k, n + s, n + i) - images[i].extended(n + s));
  }
  auto g = groebner_basis(Ideal(k, n + s, gens), MonomialOrder::block(n), opts);
  std::vector<Polynomial> down_images(n, Polynomial(k, s));
  for (std::size_t i = 0; i < s; ++i) down_images.push_back(Polynomial::variable(k, s, i));
  RingMap down(k, s, down_images);
  std::vector<Polynomial> kept;
  for (const auto& p : g.elements()) {
    if (free_of(p, n)) kept.push_back(down.apply(p));
  }
  return Ideal(k, s, kept);
}

}  // namespace hankel::gb
