#include <bit>
#include <map>
#include <algorithm>
#include <random>

#include "doctest.h"
#include "hankel/errors.hpp"
#include "hankel/groebner.hpp"
#include "hankel/symmatrix.hpp"
#include "test_util.hpp"

using namespace hankel;
using namespace hankel::gb;

namespace {

const Field Q = Field::rationals();

Polynomial P(const char* s, std::size_t n, Field f = Q) { return Polynomial::parse(s, f, n); }

Ideal I(std::initializer_list<const char*> gens, std::size_t n, Field f = Q) {
  std::vector<Polynomial> ps;
  for (auto g : gens) ps.push_back(P(g, n, f));
  return Ideal(f, n, ps);
}

std::vector<Polynomial> gradient_of(const Polynomial& f) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < f.nvars(); ++i) out.push_back(f.partial_derivative(i));
  return out;
}

/// Brute force over all subsets.
long brute_dimension(const std::vector<Monomial>& gens, std::size_t n) {
  long best = -1;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool ok = true;
    for (const auto& m : gens) {
      bool inside = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (m[i] && !(s & (1u << i))) inside = false;
      }
      if (inside) ok = false;
    }
    if (ok) best = std::max<long>(best, std::popcount(s));
  }
  return best;
}

}  // namespace

TEST_CASE("normal form examples") {
  auto g = P("x1*x3-x2^2", 3);
  auto gb1 = groebner_basis(Ideal(Q, 3, {g}));
  CHECK(normal_form(g, gb1).is_zero());
  CHECK(gb1.elements() == std::vector<Polynomial>{g.normalized()});
  CHECK(normal_form(P("x1", 2), groebner_basis(I({"x2"}, 2))) == P("x1", 2));
  auto f = determinant(hankel_square(3, 0));
  auto gj = groebner_basis(Ideal::from(gradient_of(f)));
  CHECK(normal_form(f, gj).is_zero());
  // Exact rational remainder.
  auto gx = groebner_basis(I({"2*x1-1"}, 1));
  CHECK(normal_form(P("x1^2", 1), gx) == P("1/4", 1));
  CHECK(normal_form(P("3*x1^2+x2", 2), groebner_basis(I({"x1-x2"}, 2))) == P("3*x2^2+x2", 2));
}

TEST_CASE("buchberger examples") {
  auto i224 = Ideal(Q, 5, minor_values(hankel_matrix({2, 4, 0}), 2));
  auto g = groebner_basis(i224);
  CHECK(verify_basis(g));
  // Anti-diagonal products x2*x3... in degrevlex: the initial ideal contains them.
  auto lead = g.leading_monomials();
  auto in_ideal = [&](const Monomial& m) {
    return std::any_of(lead.begin(), lead.end(), [&](const Monomial& l) { return l.divides(m); });
  };
  for (const auto& mi : minors(hankel_matrix({2, 4, 0}), 2)) {
    // anti-diagonal of the 2x2 minor: entries (0, c1) and (1, c0)
    Monomial anti = Monomial::variable(5, mi.cols[1]) * Monomial::variable(5, 1 + mi.cols[0]);
    CHECK(in_ideal(anti));
  }
  auto f31 = determinant(hankel_square(3, 1));
  auto gj = groebner_basis(Ideal::from(gradient_of(f31)));
  CHECK(monomial_dimension(gj.leading_monomials(), 4) == 2);
  CHECK(groebner_basis(I({"x1", "1+x1"}, 2)).is_unit());
  CHECK(groebner_basis(I({"x1^2*x2-1", "x1*x2^2-x2"}, 2), MonomialOrder::lex()).size() >= 1);
  Budget tiny;
  tiny.max_pairs = 1;
  Options o;
  o.budget = tiny;
  auto h = determinant(hankel_square(4, 0));
  CHECK_THROWS_AS(groebner_basis(Ideal::from(gradient_of(h)), MonomialOrder::degrevlex(), o), BudgetExceeded);
}

TEST_CASE("lex basis of an inhomogeneous ideal") {
  std::vector<Polynomial> gens;
  for (auto t : {"3*x2^2*x3+x2+15*x3", "2*x1^2*x3+x3^2+7", "5*x1*x3^2+3*x3^3-12*x2"}) gens.push_back(P(t, 3));
  auto g = groebner_basis(Ideal(Q, 3, gens), MonomialOrder::lex());
  CHECK(verify_basis(g));
  REQUIRE(g.size() == 3);
  // Eliminant computed independently.
  CHECK(g.elements().front() ==
        P("324*x3^12+900*x3^11+625*x3^10+6300*x3^9+9614*x3^8+1200*x3^7+82465*x3^6-63600*x3^5+576*x3^4-503200*x3^3+"
          "69120*x3^2+5600*x3+2073600",
          3));
}

TEST_CASE("property: random ideals over Q and F_p give verified, consistent bases") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Polynomial> gens;
    std::size_t n = 3 + trial % 2;
    for (int k = 0; k < 3; ++k) gens.push_back(testutil::random_poly(rng, Q, n, 3, 3));
    Ideal iq(Q, n, gens);
    if (iq.is_zero()) continue;
    std::vector<MonomialOrder> orders{MonomialOrder::degrevlex()};
    if (n == 3) orders.insert(orders.end(), {MonomialOrder::lex(), MonomialOrder::block(1)});
    for (const auto& order : orders) {
      auto g = groebner_basis(iq, order);
      CHECK(verify_basis(g));
      for (const auto& p : iq.generators()) CHECK(normal_form(p, g).is_zero());
      // random combination is a member; NF is idempotent
      Polynomial comb(Q, n);
      for (const auto& p : iq.generators()) comb += p * testutil::random_poly(rng, Q, n, 2, 2);
      CHECK(normal_form(comb, g).is_zero());
      auto x = testutil::random_poly(rng, Q, n, 3, 4);
      auto nf = normal_form(x, g);
      CHECK(normal_form(nf, g) == nf);
      CHECK(normal_form(x - nf, g).is_zero());
      // reduced: no term of any element divisible by another leading monomial
      auto lead = g.leading_monomials();
      for (std::size_t a = 0; a < g.size(); ++a) {
        for (const auto& t : g.elements()[a].terms()) {
          for (std::size_t b = 0; b < g.size(); ++b) {
            if (a != b) CHECK_FALSE(lead[b].divides(t.monomial));
          }
        }
      }
    }
    // Same ideal over F_32003: identical basis shape for generic inputs.
    std::vector<Polynomial> modp;
    Field fp = Field::prime(32003);
    for (const auto& p : gens) {
      std::vector<Term> ts(p.terms().begin(), p.terms().end());
      modp.push_back(Polynomial::from_terms(fp, n, ts));
    }
    auto gp = groebner_basis(Ideal(fp, n, modp));
    CHECK(verify_basis(gp));
    CHECK(gp.leading_monomials() == groebner_basis(iq).leading_monomials());
  }
}

TEST_CASE("property: determinism and shuffling") {
  auto f = determinant(hankel_square(4, 1));
  auto grad = gradient_of(f);
  auto a = groebner_basis(Ideal::from(grad));
  auto b = groebner_basis(Ideal::from(grad));
  CHECK(a.to_text() == b.to_text());
  std::reverse(grad.begin(), grad.end());
  CHECK(groebner_basis(Ideal::from(grad)).to_text() == a.to_text());
  CHECK(GroebnerBasis::from_text(a.to_text()).to_text() == a.to_text());
  CHECK(verify_basis(a));
}

TEST_CASE("dimension examples") {
  CHECK(codimension(Ideal(Q, 5, minor_values(hankel_square(3, 0), 2))) == 3);
  CHECK(codimension(Ideal(Q, 6, minor_values(hankel_square(4, 1), 3))) == 3);
  for (std::size_t m = 2; m <= 4; ++m) {
    for (std::size_t r = 0; r + 2 <= m; ++r) {
      auto h = hankel_square(m, r);
      CHECK(codimension(Ideal(Q, h.nvars(), minor_values(h, 1))) == long(2 * m - 1 - r));
    }
  }
  CHECK(dimension(I({"1"}, 3)) == -1);
  CHECK(dimension(Ideal(Q, 3)) == 3);
}

TEST_CASE("property: monomial dimension matches brute force") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 12;
    std::vector<Monomial> gens;
    std::size_t k = rng() % 6;
    for (std::size_t g = 0; g < k; ++g) {
      std::vector<std::uint16_t> e(n, 0);
      std::size_t deg = 1 + rng() % 3;
      for (std::size_t d = 0; d < deg; ++d) e[rng() % n] += 1;
      gens.emplace_back(e);
    }
    CHECK(monomial_dimension(gens, n) == brute_dimension(gens, n));
  }
}

TEST_CASE("equality and membership examples") {
  CHECK(ideal_equal(Ideal(Q, 5, minor_values(hankel_square(3, 0), 2)), Ideal(Q, 5, minor_values(hankel_matrix({2, 4, 0}), 2))));
  auto i = I({"x1*x2", "x3^2"}, 3);
  CHECK(ideal_equal(i, i));
  for (std::size_t m = 3; m <= 4; ++m) {
    for (std::size_t r = 0; r + 2 <= m; ++r) {
      auto h = hankel_square(m, r);
      Ideal sub(Q, h.nvars(), minor_values(h, m - 1));
      for (const auto& fk : gradient_of(determinant(h))) CHECK(ideal_membership(fk, sub));
    }
  }
  CHECK_FALSE(ideal_membership(P("x1", 2), I({"x2"}, 2)));
}

TEST_CASE("elimination, intersection, quotient") {
  // y is x1; eliminate it from (y - x2, y^2 - x3)
  auto e = elimination(I({"x1-x2", "x1^2-x3"}, 3), {0});
  CHECK(ideal_equal(e, I({"x2^2-x3"}, 3)));
  auto meet = intersection(I({"x1"}, 2), I({"x2"}, 2));
  CHECK(ideal_equal(meet, I({"x1*x2"}, 2)));
  CHECK(ideal_equal(ideal_quotient(I({"x1*x2"}, 2), P("x1", 2)), I({"x2"}, 2)));
  auto i224 = Ideal(Q, 5, minor_values(hankel_matrix({2, 4, 0}), 2));
  CHECK(ideal_equal(ideal_quotient(i224, P("x5", 5)), i224));
  CHECK(is_regular_variable(i224, 4));
  CHECK(ideal_equal(quotient_by_variable(i224, 4), i224));
  // Fast path agrees with the general route on a non-regular case.
  auto j = I({"x1*x3", "x2*x3^2", "x1^2"}, 3);
  CHECK(ideal_equal(quotient_by_variable(j, 2), ideal_quotient(j, P("x3", 3))));
  CHECK_FALSE(is_regular_variable(j, 2));
  // Strand x_{2m-r}, ..., x_{2m-1} is absent from H_4[1]; check x_6 = last variable of I_3(H_{3,5}[1]).
  auto i3 = Ideal(Q, 6, minor_values(hankel_square(4, 1), 3));
  CHECK(is_regular_variable(i3, 5));
  CHECK(ideal_equal(ideal_quotient(i3, P("x6", 6)), i3));
}

TEST_CASE("radical membership") {
  CHECK(radical_membership(P("x1", 2), I({"x1^2"}, 2)));
  CHECK_FALSE(radical_membership(P("x2", 2), I({"x1"}, 2)));
  auto f = determinant(hankel_square(3, 0));
  Ideal j = Ideal::from(gradient_of(f));
  for (const auto& d : minor_values(hankel_square(3, 0), 2)) {
    if (!d.is_zero()) CHECK(radical_membership(d, j));
  }
}

TEST_CASE("kernels of algebra maps") {
  auto mins = minor_values(hankel_matrix({2, 4, 0}), 2);
  auto k = kernel_of_algebra_map(mins);
  REQUIRE(k.generators().size() == 1);
  CHECK(k.generators().front().total_degree() == 2);
  CHECK(k.generators().front().size() == 3);
  CHECK(kernel_of_algebra_map({P("x1", 2)}).is_zero());
  auto gk = graded_kernel(mins, 3);
  CHECK(gk.dims[1] == 0);
  CHECK(gk.dims[2] == 1);
  CHECK(gk.minimal_generators[2] == 1);
  CHECK(gk.minimal_generators[3] == 0);
  CHECK(gk.dims[3] == 6);
  // Both routes describe the same ideal in degree 2.
  CHECK(ideal_equal(Ideal::from(gk.generators), k));
}

TEST_CASE("linear syzygies") {
  auto f = determinant(hankel_square(3, 0));
  auto rep = linear_syzygies(gradient_of(f));
  for (const auto& syz : rep.syzygies) {
    Polynomial sum(Q, 5);
    for (std::size_t i = 0; i < syz.size(); ++i) sum += syz[i] * gradient_of(f)[i];
    CHECK(sum.is_zero());
  }
  auto g = gradient_of(f);
  std::reverse(g.begin(), g.end());
  CHECK(linear_syzygies(g).linear_rank == rep.linear_rank);
  CHECK(rep.linear_rank >= rep.evaluated_rank);
  CHECK_THROWS_AS(linear_syzygies({P("x1", 2), P("x2^2", 2)}), ParameterError);
}

TEST_CASE("reduction check") {
  auto h = hankel_square(3, 0);
  auto f = determinant(h);
  Ideal j = Ideal::from(gradient_of(f));
  Ideal i(Q, 5, minor_values(h, 2));
  auto res = reduction_check(j, i, 2);
  CHECK(res.contained);
  REQUIRE(res.reduction_number.has_value());
  CHECK(*res.reduction_number == 1);
  CHECK(*reduction_check(i, i, 2).reduction_number == 0);
}

namespace {

class MemoryCache : public BasisCache {
 public:
  std::optional<std::string> load(const std::string& key) override {
    auto it = store_.find(key);
    if (it == store_.end()) return std::nullopt;
    return it->second;
  }
  void store(const std::string& key, const std::string& text) override { store_[key] = text; }
  std::map<std::string, std::string> store_;
};

}  // namespace

TEST_CASE("cache hook") {
  MemoryCache cache;
  Options o;
  o.cache = &cache;
  auto i = Ideal(Q, 5, minor_values(hankel_square(3, 0), 2));
  auto before = thread_stats().cache_hits;
  auto a = groebner_basis(i, MonomialOrder::degrevlex(), o);
  CHECK(cache.store_.size() == 1);
  auto b = groebner_basis(i, MonomialOrder::degrevlex(), o);
  CHECK(thread_stats().cache_hits == before + 1);
  CHECK(a.to_text() == b.to_text());
  CHECK(cache_key(i, MonomialOrder::degrevlex()).size() == 64);
  CHECK(cache_key(i, MonomialOrder::degrevlex()) != cache_key(i, MonomialOrder::lex()));
}
