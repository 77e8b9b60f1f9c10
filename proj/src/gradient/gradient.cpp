#include "hankel/gradient.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "hankel/errors.hpp"
#include "hankel/linalg.hpp"
#include "hankel/ring_map.hpp"

namespace hankel::grad {

namespace {

void check_range(std::size_t m, std::size_t r) {
  if (m < 2 || r + 2 > m) throw ParameterError("need m >= 2 and 0 <= r <= m-2");
}

SymMatrix hessian_matrix(const Polynomial& f) {
  const std::size_t n = f.nvars();
  std::vector<Polynomial> firsts;
  for (std::size_t i = 0; i < n; ++i) firsts.push_back(f.partial_derivative(i));
  std::vector<Polynomial> entries;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) entries.push_back(firsts[i].partial_derivative(j));
  }
  return SymMatrix(n, n, std::move(entries));
}

RingMap keep_only(const Field& field, std::size_t nvars, const std::vector<std::size_t>& kept) {
  std::vector<std::size_t> zeroed;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (std::find(kept.begin(), kept.end(), i) == kept.end()) zeroed.push_back(i);
  }
  return RingMap::coordinate_section(field, nvars, zeroed);
}

mpz_class factorial(std::size_t n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace

GradientData gradient(std::size_t m, std::size_t r, Field field) {
  check_range(m, r);
  GradientData g;
  g.m = m;
  g.r = r;
  auto h = hankel_square(m, r, field);
  g.f = determinant(h);
  const std::size_t n = g.nvars();
  for (std::size_t k = 0; k < n; ++k) g.partials.push_back(g.f.partial_derivative(k));
  auto adj = adjugate(h);
  g.cofactor_table.assign(m, {});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) g.cofactor_table[i].push_back(adj.at(i, j));
  }
  Polynomial euler(field, n);
  for (std::size_t k = 0; k < n; ++k) euler += Polynomial::variable(field, n, k) * g.partials[k];
  if (euler != g.f.scaled(field.from_int(static_cast<long>(m)))) throw Error("Euler identity failed");
  return g;
}

bool CofactorDecompositionReport::all() const {
  return euler && std::all_of(holds.begin(), holds.end(), [](bool b) { return b; });
}

CofactorDecompositionReport cofactor_decomposition_check(std::size_t m, std::size_t r, Field field) {
  auto g = gradient(m, r, field);
  CofactorDecompositionReport rep;
  rep.m = m;
  rep.r = r;
  rep.euler = true;
  const std::size_t n = g.nvars();
  for (std::size_t k = 1; k <= n; ++k) {
    Polynomial sum(field, n);
    for (std::size_t i = 1; i <= m; ++i) {
      if (k + 1 > i && k + 1 - i >= 1 && k + 1 - i <= m) sum += g.signed_cofactor(i, k + 1 - i);
    }
    rep.holds.push_back(sum == g.partial(k));
  }
  return rep;
}

std::vector<std::size_t> appendix_variables(std::size_t m, std::size_t r) {
  check_range(m, r);
  std::vector<std::size_t> v{0, m - r - 2, 2 * m - r - 2};
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

HessianData hessian(std::size_t m, std::size_t r, Field field) {
  check_range(m, r);
  auto f = determinant(hankel_square(m, r, field));
  auto H = hessian_matrix(f);
  auto phi = keep_only(field, f.nvars(), appendix_variables(m, r));
  auto degenerated = determinant(H.mapped(phi));
  return {std::move(H), std::move(degenerated)};
}

Polynomial hessian_degenerated(std::size_t m, std::size_t r, Field field) { return hessian(m, r, field).degenerated; }

HessianCertificate certify_hessian_nonzero(std::size_t m, std::size_t r, std::uint64_t seed, Field field) {
  auto data = hessian(m, r, field);
  HessianCertificate cert;
  cert.seed = seed;
  cert.degenerated = data.degenerated;
  if (!data.degenerated.is_zero()) {
    cert.nonzero = true;
    cert.method = "degeneration";
    return cert;
  }
  const std::size_t n = data.H.rows();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-97, 97);
  for (cert.attempts = 1; cert.attempts <= 5; ++cert.attempts) {
    std::vector<mpq_class> point(n);
    for (auto& x : point) x = field.from_int(dist(rng));
    DenseMatrix ev(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) ev.at(i, j) = data.H.at(i, j).evaluate(point);
    }
    if (rank(ev, field) == n) {
      cert.nonzero = true;
      cert.method = "evaluation";
      cert.point = std::move(point);
      return cert;
    }
  }
  cert.attempts = 5;
  cert.method = "symbolic";
  cert.nonzero = !determinant(data.H).is_zero();
  return cert;
}

Polynomial ClosedForm::expansion(int inner_sign) const {
  const Field q = Field::rationals();
  Polynomial inner = Polynomial::monomial(q, inner_second, mpq_class(inner_second_coefficient * inner_sign));
  if (inner_first) inner += Polynomial::monomial(q, *inner_first, mpq_class(inner_first_coefficient));
  return inner.times_monomial(outer, mpq_class(prefactor));
}

std::vector<Polynomial> ClosedForm::expansions() const {
  std::vector<Polynomial> out;
  for (int sign : {1, -1}) {
    auto e = expansion(sign);
    if (!e.is_zero() && std::find(out.begin(), out.end(), e) == out.end()) out.push_back(std::move(e));
  }
  return out;
}

std::vector<Monomial> ClosedForm::support() const {
  std::set<Monomial> s;
  for (const auto& e : expansions()) {
    for (const auto& t : e.terms()) s.insert(t.monomial);
  }
  return {s.begin(), s.end()};
}

ClosedForm appendix_closed_form(std::size_t m, std::size_t r) {
  check_range(m, r);
  if (r + 2 == m) throw ParameterError("r = m-2: the Hessian is a pure power of x_{m+1}; use theta-check");
  if (m < 3) throw ParameterError("closed form needs m >= 3");
  const std::size_t n = 2 * m - r - 1;
  const std::size_t a = m - r - 2;      // x_{m-r-1}
  const std::size_t b = 2 * m - r - 2;  // x_{2m-r-1}
  auto mono = [&](unsigned e1, unsigned ea, unsigned eb) {
    std::vector<std::uint16_t> e(n, 0);
    e[0] = static_cast<std::uint16_t>(e1);
    e[a] = static_cast<std::uint16_t>(e[a] + ea);
    e[b] = static_cast<std::uint16_t>(e[b] + eb);
    return Monomial(e);
  };
  const unsigned k = static_cast<unsigned>(m - r);
  const unsigned rr = static_cast<unsigned>(r);
  Monomial p = mono(0, k - 3, rr + 1);
  Monomial q = mono(1, k - 3, rr);
  Monomial outer(n);
  for (unsigned i = 0; i < 2 * k - 4; ++i) outer = outer * p;
  for (unsigned i = 0; i <= rr; ++i) outer = outer * q;
  ClosedForm cf;
  cf.m = m;
  cf.r = r;
  mpz_class two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, rr + 1);
  cf.prefactor = two_pow * (rr + 1) * factorial(k - 1) * factorial(k - 2);
  cf.outer = outer;
  if (r >= 1) cf.inner_first = p * mono(0, k - 1, rr - 1);
  cf.inner_second = mono(0, 2 * k - 4, 2 * rr);
  cf.inner_first_coefficient = mpz_class(rr * (k - 2));
  cf.inner_second_coefficient = mpz_class((k - 1) * (rr + 1));
  return cf;
}

AppendixComparison compare_with_closed_form(std::size_t m, std::size_t r) {
  auto cf = appendix_closed_form(m, r);
  AppendixComparison cmp;
  cmp.degenerated = hessian_degenerated(m, r);
  for (int sign : {1, -1}) {
    auto e = cf.expansion(sign);
    if (e.is_zero()) continue;
    int global = cmp.degenerated == e ? 1 : (cmp.degenerated == -e ? -1 : 0);
    if (global != 0) {
      cmp.matches = true;
      cmp.global_sign = global;
      cmp.inner_signs = r == 0 ? "undetermined" : (sign == 1 ? "same" : "opposite");
      break;
    }
  }
  return cmp;
}

ThetaReport theta_check(std::size_t m, std::size_t r, Field field) {
  check_range(m, r);
  if (m < 3) throw ParameterError("theta check needs m >= 3");
  auto f = determinant(hankel_square(m, r, field));
  const std::size_t n = f.nvars();
  auto H = hessian_matrix(f);
  std::vector<std::size_t> lead(m + 1);
  std::iota(lead.begin(), lead.end(), 0);
  std::vector<std::size_t> zeroed;
  for (std::size_t i = m + 1; i < n; ++i) zeroed.push_back(i);
  auto theta = H.submatrix(lead, lead).mapped(RingMap::coordinate_section(field, n, zeroed));
  ThetaReport rep;
  rep.m = m;
  rep.r = r;
  rep.det = determinant(theta);
  rep.expected_exponent = static_cast<unsigned>((m + 1) * (m - 2));
  auto target = Monomial::variable(n, m, static_cast<std::uint16_t>(rep.expected_exponent));
  rep.scalar = rep.det.coefficient(target);
  rep.holds = rep.det.size() == 1 && rep.scalar != 0;
  return rep;
}

bool CofactorRelationsReport::all_hold() const {
  return std::all_of(relations.begin(), relations.end(), [](const RelationCheck& c) { return c.holds; });
}

CofactorRelationsReport cofactor_relations_check(std::size_t m, std::size_t r, Field field) {
  check_range(m, r);
  CofactorRelationsReport rep;
  rep.m = m;
  rep.r = r;
  auto h = hankel_square(m, r, field);
  if (m - r == 3) {
    auto f = determinant(h);
    auto adj = adjugate(h);
    for (std::size_t k = 2; k + 1 <= m; ++k) {
      const std::size_t row = m - k + 2;
      for (std::size_t j = 1; j <= k + 1; ++j) {
        Polynomial lhs(field, h.nvars());
        for (std::size_t c = 1; c <= k + 1; ++c) lhs += h.at(row - 1, c - 1) * adj.at(c - 1, j - 1);
        RelationCheck rc;
        rc.name = (k == 2 && j == 1 ? "kequal2" : "eq-cod") + std::string(" k=") + std::to_string(k) +
                  " j=" + std::to_string(j);
        rc.modulo_f = j == row;
        rc.holds = rc.modulo_f ? lhs == f : lhs.is_zero();
        rep.relations.push_back(std::move(rc));
      }
    }
  }
  for (std::size_t j = 1; j + 2 <= m; ++j) {
    RelationCheck rc;
    rc.name = "block j=" + std::to_string(j);
    rc.holds = block_partition(m, r, j, field).identity_holds();
    rep.relations.push_back(std::move(rc));
  }
  return rep;
}

CodimReport gradient_codim(std::size_t m, std::size_t r, const gb::Options& options) {
  check_range(m, r);
  CodimReport rep;
  rep.m = m;
  rep.r = r;
  rep.expected = m - r == 2 ? 2 : 3;
  rep.codim = gb::codimension(gradient(m, r).ideal(), options);
  return rep;
}

MinimalPrimesReport minimal_primes_checks(std::size_t m, std::size_t r, const gb::Options& options,
                                          std::uint64_t seed, std::size_t spot_checks) {
  if (r < 1 || r + 3 > m) throw ParameterError("minimal prime checks need 1 <= r <= m-3");
  const Field q = Field::rationals();
  auto g = gradient(m, r, q);
  const std::size_t n = g.nvars();
  MinimalPrimesReport rep;
  rep.m = m;
  rep.r = r;
  std::vector<std::size_t> qvars;
  for (std::size_t i = m - 1; i < n; ++i) qvars.push_back(i);
  auto to_zero = RingMap::coordinate_section(q, n, qvars);
  rep.a_in_q = std::all_of(g.partials.begin(), g.partials.end(),
                           [&](const Polynomial& p) { return to_zero.apply(p).is_zero(); });
  std::vector<Polynomial> qgens;
  for (auto i : qvars) qgens.push_back(Polynomial::variable(q, n, i));
  gb::Ideal Q(q, n, qgens);
  gb::Ideal P = gb::Ideal::from(minor_values(hankel_square(m, r, q), m - 1));
  auto J = g.ideal();
  rep.b_in_p = gb::ideal_contains(P, J, options);
  rep.codim_q = gb::codimension(Q, options);
  rep.codim_p = gb::codimension(P, options);
  rep.c_codims = rep.codim_q == static_cast<long>(m - r) && rep.codim_p == 3;
  std::mt19937_64 rng(seed);
  try {
    bool all = true;
    for (std::size_t s = 0; s < spot_checks; ++s) {
      const auto& pg = P.generators()[rng() % P.generators().size()];
      const auto& qg = qgens[rng() % qgens.size()];
      auto prod = pg * qg;
      bool in = gb::radical_membership(prod, J, options);
      rep.d_checked.push_back(prod.to_string());
      all = all && in;
    }
    rep.d_radical = pass_if(all);
  } catch (const BudgetExceeded&) {
    rep.d_radical = Verdict::BudgetExceeded;
  }
  return rep;
}

RegularSequenceReport regular_sequence_experiment(std::size_t m, const gb::Options& options) {
  if (m < 2) throw ParameterError("need m >= 2");
  RegularSequenceReport rep;
  rep.m = m;
  for (std::size_t v = 2 * m - 1; v >= m + 3; --v) rep.sequence.push_back(v - 1);
  auto cur = gradient(m, 0).ideal();
  const std::size_t n = 2 * m - 1;
  try {
    for (auto v : rep.sequence) {
      RegularStep st{v, gb::is_regular_variable(cur, v, options)};
      rep.steps.push_back(st);
      if (!st.regular && !rep.first_failure) rep.first_failure = v;
      cur = cur + gb::Ideal(cur.field(), n, {Polynomial::variable(cur.field(), n, v)});
    }
    rep.verdict = consistent_if(!rep.first_failure);
  } catch (const BudgetExceeded&) {
    rep.verdict = Verdict::BudgetExceeded;
  }
  return rep;
}

}  // namespace hankel::grad
