#include <map>
#include <random>

#include "hankel/errors.hpp"
#include "hankel/groebner.hpp"
#include "hankel/linalg.hpp"
#include "hankel/symmatrix.hpp"

namespace hankel::gb {

namespace {

/// Exponent vectors of degree d in s variables, decreasing lexicographic.
void monomials_of_degree(std::size_t s, unsigned d, std::vector<std::uint16_t>& cur, std::size_t i,
                         std::vector<Monomial>& out) {
  if (i + 1 == s) {
    cur[i] = static_cast<std::uint16_t>(d);
    out.emplace_back(cur);
    cur[i] = 0;
    return;
  }
  for (unsigned e = d + 1; e-- > 0;) {
    cur[i] = static_cast<std::uint16_t>(e);
    monomials_of_degree(s, d - e, cur, i + 1, out);
  }
  cur[i] = 0;
}

std::vector<Monomial> monomials_of_degree(std::size_t s, unsigned d) {
  std::vector<Monomial> out;
  std::vector<std::uint16_t> cur(s, 0);
  monomials_of_degree(s, d, cur, 0, out);
  return out;
}

/// Clears denominators of a rational vector.
std::vector<mpq_class> integral(std::vector<mpq_class> v) {
  mpz_class den = 1;
  for (const auto& c : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  for (auto& c : v) c *= den;
  return v;
}

}  // namespace

GradedKernel graded_kernel(const std::vector<Polynomial>& images, unsigned max_degree) {
  if (images.empty()) throw ParameterError("kernel of an empty map");
  const Field& k = images.front().field();
  const std::size_t n = images.front().nvars();
  const std::size_t s = images.size();
  GradedKernel out;
  std::map<Monomial, Polynomial> image_of;  // t-monomial -> its image, previous degree
  image_of.emplace(Monomial(s), Polynomial::constant(k, n, 1));
  for (unsigned d = 0; d <= max_degree; ++d) {
    auto monos = monomials_of_degree(s, d);
    std::vector<Polynomial> imgs;
    std::map<Monomial, Polynomial> next;
    for (const auto& a : monos) {
      if (d == 0) {
        imgs.push_back(Polynomial::constant(k, n, 1));
      } else {
        std::size_t i = 0;
        while (a[i] == 0) ++i;
        auto exps = a.exponents();
        --exps[i];
        imgs.push_back(image_of.at(Monomial(exps)) * images[i]);
      }
      next.emplace(a, imgs.back());
    }
    image_of = std::move(next);
    // Kernel: coefficient vectors c with sum c_a img(a) = 0.
    auto cm = coefficient_matrix(imgs);
    DenseMatrix at(cm.monomials.size(), monos.size());
    for (std::size_t a = 0; a < monos.size(); ++a) {
      for (std::size_t j = 0; j < cm.monomials.size(); ++j) at.at(j, a) = cm.matrix.at(a, j);
    }
    std::vector<Polynomial> basis;
    for (auto& v : nullspace(at, k)) {
      v = k.is_rational() ? integral(std::move(v)) : v;
      std::vector<Term> terms;
      for (std::size_t a = 0; a < monos.size(); ++a) {
        if (v[a] != 0) terms.push_back({monos[a], v[a]});
      }
      basis.push_back(Polynomial::from_terms(k, s, std::move(terms)));
    }
    // Degree-d part of the ideal generated by lower kernels: t_j * K_{d-1}.
    std::vector<Polynomial> candidates;
    if (d > 0) {
      for (const auto& v : out.basis.back()) {
        for (std::size_t j = 0; j < s; ++j) candidates.push_back(Polynomial::variable(k, s, j) * v);
      }
    }
    const std::size_t lower = candidates.size();
    candidates.insert(candidates.end(), basis.begin(), basis.end());
    std::size_t mingens = 0;
    if (!basis.empty()) {
      // Pivot columns of the transposed matrix pick independent rows greedily.
      auto cc = coefficient_matrix(candidates);
      DenseMatrix tr(cc.monomials.size(), candidates.size());
      for (std::size_t r = 0; r < candidates.size(); ++r) {
        for (std::size_t c = 0; c < cc.monomials.size(); ++c) tr.at(c, r) = cc.matrix.at(r, c);
      }
      for (auto col : reduced_row_echelon(std::move(tr), k).pivot_columns) {
        if (col >= lower) {
          out.generators.push_back(candidates[col].normalized());
          ++mingens;
        }
      }
    }
    out.dims.push_back(basis.size());
    out.minimal_generators.push_back(mingens);
    out.basis.push_back(std::move(basis));
  }
  return out;
}

SyzygyReport linear_syzygies(const std::vector<Polynomial>& forms, std::uint64_t seed) {
  SyzygyReport rep;
  rep.generator_count = forms.size();
  if (forms.empty()) return rep;
  const Field& k = forms.front().field();
  const std::size_t n = forms.front().nvars();
  const std::size_t s = forms.size();
  long degree = -1;
  for (const auto& f : forms) {
    if (f.is_zero() || !f.is_homogeneous()) throw ParameterError("linear syzygies need nonzero forms");
    if (degree >= 0 && f.total_degree() != degree) throw ParameterError("forms must share one degree");
    degree = f.total_degree();
  }
  // Unknown (i, j) is the coefficient of x_j in the multiplier of F_i.
  std::map<Monomial, std::size_t> row_of;
  std::vector<Polynomial> products;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      products.push_back(Polynomial::variable(k, n, j) * forms[i]);
      for (const auto& t : products.back().terms()) row_of.emplace(t.monomial, 0);
    }
  }
  std::size_t r = 0;
  for (auto& [m, idx] : row_of) idx = r++;
  DenseMatrix a(row_of.size(), s * n);
  for (std::size_t u = 0; u < products.size(); ++u) {
    for (const auto& t : products[u].terms()) a.at(row_of.at(t.monomial), u) = t.coefficient;
  }
  for (auto& v : nullspace(a, k)) {
    if (k.is_rational()) v = integral(std::move(v));
    std::vector<Polynomial> syz;
    for (std::size_t i = 0; i < s; ++i) {
      Polynomial lam(k, n);
      for (std::size_t j = 0; j < n; ++j) {
        if (v[i * n + j] != 0) lam += Polynomial::variable(k, n, j).scaled(v[i * n + j]);
      }
      syz.push_back(std::move(lam));
    }
    rep.syzygies.push_back(std::move(syz));
  }
  rep.syzygy_dimension = rep.syzygies.size();
  if (rep.syzygies.empty()) return rep;
  const std::size_t cols = rep.syzygies.size();
  // Random evaluation gives a certified lower bound.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-97, 97);
  std::vector<mpq_class> point(n);
  for (auto& x : point) x = k.from_int(dist(rng));
  DenseMatrix ev(s, cols);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t c = 0; c < cols; ++c) ev.at(i, c) = rep.syzygies[c][i].evaluate(point);
  }
  rep.evaluated_rank = rank(ev, k);
  std::vector<Polynomial> entries;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t c = 0; c < cols; ++c) entries.push_back(rep.syzygies[c][i]);
  }
  rep.linear_rank = rank_over_fraction_field(SymMatrix(s, cols, std::move(entries)));
  if (rep.linear_rank < rep.evaluated_rank) throw Error("fraction-free rank below an evaluated minor rank");
  return rep;
}

ReductionResult reduction_check(const Ideal& j, const Ideal& i, unsigned nmax, const Options& options) {
  ReductionResult res;
  res.contained = ideal_contains(i, j, options);
  if (!res.contained) return res;
  auto gj = groebner_basis(j, MonomialOrder::degrevlex(), options);
  Ideal in = Ideal(i.field(), i.nvars(), {Polynomial::constant(i.field(), i.nvars(), 1)});
  for (unsigned n = 0; n <= nmax; ++n) {
    auto next = in * i;
    // J I^n lies in J, so a power g^{n+1} outside J already rules out equality.
    bool power_outside = false;
    for (const auto& g : i.generators()) {
      if (!normal_form(g.pow(n + 1), gj).is_zero()) {
        res.notes.push_back("n=" + std::to_string(n) + ": " + g.to_string() + " ^" + std::to_string(n + 1) +
                            " not in J");
        power_outside = true;
        break;
      }
    }
    if (!power_outside) {
      bool equal = ideal_contains(j * in, next, options);
      res.notes.push_back("n=" + std::to_string(n) + ": J*I^n " + (equal ? "=" : "!=") + " I^(n+1) by Groebner basis");
      if (equal) {
        res.reduction_number = n;
        return res;
      }
    }
    in = std::move(next);
  }
  return res;
}

}  // namespace hankel::gb
