#include <tuple>

#include "doctest.h"
#include "hankel/errors.hpp"
#include "hankel/gradient.hpp"

using namespace hankel;
using namespace hankel::grad;

namespace {

const Field Q = Field::rationals();

Polynomial P(const char* s, std::size_t n) { return Polynomial::parse(s, Q, n); }

}  // namespace

TEST_CASE("gradient examples") {
  auto g = gradient(3, 0);
  CHECK(g.nvars() == 5);
  CHECK(g.partial(1) == P("x3*x5-x4^2", 5));
  CHECK(g.partial(5) == P("x1*x3-x2^2", 5));
  auto d = gradient(3, 1);
  CHECK(d.partial(1) == P("-x4^2", 4));
  CHECK_THROWS_AS(gradient(3, 2), ParameterError);
  CHECK_THROWS_AS(gradient(1, 0), ParameterError);
}

TEST_CASE("euler identity and cofactor decomposition") {
  for (std::size_t m = 2; m <= 5; ++m) {
    for (std::size_t r = 0; r + 2 <= m; ++r) {
      auto g = gradient(m, r);
      Polynomial euler(Q, g.nvars());
      for (std::size_t k = 0; k < g.nvars(); ++k) {
        euler += Polynomial::variable(Q, g.nvars(), k) * g.partials[k];
      }
      CHECK(euler == g.f.scaled(m));
      auto rep = cofactor_decomposition_check(m, r);
      CHECK(rep.euler);
      CHECK(rep.all());
    }
  }
}

TEST_CASE("first partials as cofactors") {
  auto g = gradient(4, 0);
  CHECK(g.partial(1) == g.cofactor_table[0][0]);
  CHECK(g.partial(2) == g.cofactor_table[1][0].scaled(2));
  CHECK(g.partial(3) == g.cofactor_table[1][1] + g.cofactor_table[2][0].scaled(2));
}

TEST_CASE("hessian basics") {
  auto h2 = hessian(2, 0);
  CHECK(h2.H.is_symmetric());
  CHECK(determinant(h2.H) == P("2", 3));
  auto h31 = hessian(3, 1);
  auto det = determinant(h31.H);
  REQUIRE(det.size() == 1);
  CHECK(det.terms().front().monomial == Monomial::variable(4, 3, 4));
  CHECK(det == h31.degenerated);
  for (std::size_t m = 2; m <= 4; ++m) {
    for (std::size_t r = 0; r + 2 <= m; ++r) {
      auto h = hessian(m, r).H;
      for (std::size_t i = 0; i < h.rows(); ++i) {
        for (std::size_t j = 0; j < h.cols(); ++j) CHECK(h.at(i, j) == h.at(j, i));
      }
    }
  }
}

TEST_CASE("degenerated hessian values") {
  const std::vector<std::tuple<std::size_t, std::size_t, const char*>> table = {
      {3, 0, "-8*x1*x2^2*x5^2"},          {4, 0, "72*x1*x3^9*x7^4"},
      {4, 1, "-48*x1^2*x2^2*x6^8"},       {5, 0, "1152*x1*x4^20*x9^6"},
      {5, 1, "384*x1^2*x3^10*x8^12"},     {5, 2, "-192*x1^3*x2^2*x7^16"},
      {3, 1, "16*x4^4"},                  {4, 2, "72*x5^10"},
  };
  for (const auto& [m, r, value] : table) {
    CAPTURE(m);
    CAPTURE(r);
    CHECK(hessian_degenerated(m, r) == P(value, 2 * m - r - 1));
  }
}

TEST_CASE("hessian degeneration matches the closed form up to sign") {
  for (std::size_t m = 3; m <= 6; ++m) {
    for (std::size_t r = 0; r + 3 <= m; ++r) {
      if (m == 6 && r < 2) continue;
      CAPTURE(m);
      CAPTURE(r);
      auto cf = appendix_closed_form(m, r);
      auto cmp = compare_with_closed_form(m, r);
      CHECK(cmp.matches);
      CHECK(cmp.global_sign != 0);
      if (r == 0) {
        CHECK_FALSE(cf.inner_first.has_value());
        CHECK(cmp.inner_signs == "undetermined");
      } else {
        CHECK(cf.inner_monomials_coincide());
        CHECK(cmp.inner_signs == "opposite");
        CHECK(cf.support().size() == 1);
      }
    }
  }
  CHECK_THROWS_AS(appendix_closed_form(4, 2), ParameterError);
  auto cf = appendix_closed_form(4, 1);
  CHECK(cf.prefactor == 2 * 2 * 2 * 2 * 1);
}

TEST_CASE("theta determinant") {
  for (auto [m, r] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 0}, {3, 1}, {4, 0}, {4, 1}, {4, 2}}) {
    auto rep = theta_check(m, r);
    CHECK(rep.holds);
    CHECK(rep.expected_exponent == (m + 1) * (m - 2));
  }
  CHECK(theta_check(3, 0).scalar == 16);
  CHECK(theta_check(4, 1).scalar == 72);
}

TEST_CASE("cofactor relations") {
  for (std::size_t m = 3; m <= 5; ++m) {
    for (std::size_t r = 0; r + 2 <= m; ++r) {
      auto rep = cofactor_relations_check(m, r);
      CAPTURE(m);
      CAPTURE(r);
      CHECK(rep.all_hold());
      std::size_t block = 0, mod_f = 0;
      bool k2 = false;
      for (const auto& rc : rep.relations) {
        if (rc.name.rfind("block", 0) == 0) ++block;
        if (rc.modulo_f) ++mod_f;
        if (rc.name.rfind("kequal2", 0) == 0) k2 = true;
      }
      CHECK(block == m - 2);
      CHECK(k2 == (m - r == 3));
      if (m - r == 3) CHECK(mod_f >= 1);
    }
  }
}

TEST_CASE("gradient ideal codimension") {
  auto conic = gradient_codim(2, 0);
  CHECK(conic.codim == 3);
  CHECK_FALSE(conic.matches());
  for (std::size_t m = 3; m <= 5; ++m) {
    for (std::size_t r = 0; r + 2 <= m; ++r) {
      CAPTURE(m);
      CAPTURE(r);
      auto rep = gradient_codim(m, r);
      CHECK(rep.matches());
      CHECK(rep.expected == (m - r == 2 ? 2 : 3));
    }
  }
}

TEST_CASE("minimal primes of the gradient ideal") {
  for (auto [m, r] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 1}, {5, 1}, {5, 2}}) {
    auto rep = minimal_primes_checks(m, r);
    CAPTURE(m);
    CAPTURE(r);
    CHECK(rep.core_holds());
    CHECK(rep.codim_q == static_cast<long>(m - r));
    CHECK(rep.codim_p == 3);
    CHECK(rep.d_radical == Verdict::Pass);
    CHECK(rep.d_checked.size() == 3);
  }
  CHECK_THROWS_AS(minimal_primes_checks(4, 0), ParameterError);
  CHECK_THROWS_AS(minimal_primes_checks(4, 2), ParameterError);
}

TEST_CASE("regular sequence") {
  auto r3 = regular_sequence_experiment(3);
  CHECK(r3.sequence.empty());
  CHECK(r3.verdict == Verdict::Consistent);
  auto r4 = regular_sequence_experiment(4);
  CHECK(r4.sequence == std::vector<std::size_t>{6});
  auto r5 = regular_sequence_experiment(5);
  CHECK(r5.sequence == std::vector<std::size_t>{8, 7});
  CHECK(r5.verdict == Verdict::Consistent);
  CHECK(r5.steps.size() == 2);
  for (const auto& s : r5.steps) CHECK(s.regular);
  gb::Options tight;
  tight.budget.max_pairs = 1;
  CHECK(regular_sequence_experiment(5, tight).verdict == Verdict::BudgetExceeded);
}

TEST_CASE("hessian certificate paths") {
  auto q = certify_hessian_nonzero(4, 1);
  CHECK(q.nonzero);
  CHECK(q.method == "degeneration");
  auto ev = certify_hessian_nonzero(5, 2, 1, Field::prime(3));
  CHECK(ev.degenerated.is_zero());
  CHECK(ev.method == "evaluation");
  CHECK(ev.nonzero);
  CHECK(ev.point.size() == 7);
  auto sym = certify_hessian_nonzero(4, 1, 1, Field::prime(3));
  CHECK(sym.method == "symbolic");
  CHECK_FALSE(sym.nonzero);
  auto again = certify_hessian_nonzero(5, 2, 1, Field::prime(3));
  CHECK(again.point == ev.point);
}
