#include <random>

#include "doctest.h"
#include "hankel/errors.hpp"
#include "hankel/linalg.hpp"
#include "hankel/symmatrix.hpp"

using namespace hankel;

namespace {

const Field Q = Field::rationals();

Polynomial P(const char* s, std::size_t n) { return Polynomial::parse(s, Q, n); }

}  // namespace

TEST_CASE("hankel constructor") {
  auto h = hankel_matrix({3, 3, 0});
  CHECK(h.nvars() == 5);
  CHECK(h.to_json().dump() == R"([["x1","x2","x3"],["x2","x3","x4"],["x3","x4","x5"]])");
  auto d = hankel_matrix({3, 3, 1});
  CHECK(d.nvars() == 4);
  CHECK(d.to_json().dump() == R"([["x1","x2","x3"],["x2","x3","x4"],["x3","x4","0"]])");
  CHECK(hankel_matrix({1, 1, 0}).to_json().dump() == R"([["x1"]])");
  CHECK_THROWS_AS(hankel_matrix({3, 3, 3}), ParameterError);
  CHECK(SymMatrix::from_json(d.to_json(), Q, 4) == d);
  CHECK(hankel_matrix({2, 4, 0}).to_json().dump() == R"([["x1","x2","x3","x4"],["x2","x3","x4","x5"]])");
}

TEST_CASE("phi endomorphism") {
  auto phi = phi_endomorphism(3, 1);
  CHECK(phi.apply(P("x5+x4", 5)) == P("x4", 5));
  auto id = phi_endomorphism(4, 0);
  auto f = determinant(hankel_square(4, 0));
  CHECK(id.apply(f) == f);
  // Degeneration two ways, and t-minor lists agree.
  for (std::size_t m = 2; m <= 5; ++m) {
    for (std::size_t r = 0; r + 2 <= m; ++r) {
      auto generic = hankel_square(m, 0);
      auto direct = hankel_square(m, r);
      auto via_phi = generic.mapped(phi_endomorphism(m, r));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) CHECK(via_phi.at(i, j) == direct.at(i, j).extended(2 * m - 1));
      }
    }
  }
  for (std::size_t t = 1; t <= 3; ++t) {
    auto gm = minor_values(hankel_matrix({3, 4, 0}), t);
    auto dm = minor_values(hankel_matrix({3, 4, 1}), t);
    auto phi41 = RingMap::coordinate_section(Q, 6, {5});
    REQUIRE(gm.size() == dm.size());
    for (std::size_t k = 0; k < gm.size(); ++k) CHECK(phi41.apply(gm[k]) == dm[k].extended(6));
  }
}

TEST_CASE("determinant examples") {
  CHECK(determinant(hankel_square(2, 0)) == P("x1*x3-x2^2", 3));
  auto f3 = determinant(hankel_square(3, 0));
  CHECK(f3 == P("x1*x3*x5-x1*x4^2-x2^2*x5+2*x2*x3*x4-x3^3", 5));
  CHECK(f3 == determinant_by_permutations(hankel_square(3, 0)));
  CHECK_THROWS_AS(determinant(hankel_matrix({2, 3, 0})), ParameterError);
}

TEST_CASE("property: memoized determinant matches permutation sum") {
  for (std::size_t m = 1; m <= 5; ++m) {
    for (std::size_t r = 0; r < m; ++r) {
      auto h = hankel_square(m, r);
      CHECK(determinant(h) == determinant_by_permutations(h));
    }
  }
}

TEST_CASE("cofactors and adjugate") {
  auto h3 = hankel_square(3, 0);
  CHECK(cofactor(h3, 0, 0) == P("x3*x5-x4^2", 5));
  CHECK(delta(h3, 1, 0) == cofactor(h3, 0, 1));
  auto h2 = hankel_square(2, 0);
  auto f2 = determinant(h2);
  CHECK(adjugate(h2) * h2 == SymMatrix::identity(Q, 3, 2).scaled(f2));
  auto one = hankel_matrix({1, 1, 0});
  CHECK(adjugate(one).at(0, 0) == Polynomial::constant(Q, 1, 1));
  CHECK_THROWS_AS(cofactor(h3, 3, 0), IndexOutOfRange);
  CHECK_THROWS_AS(adjugate(hankel_matrix({2, 3, 0})), ParameterError);
}

TEST_CASE("property: adjugate identity, Laplace, alternation") {
  std::mt19937_64 rng(7);
  for (std::size_t m = 2; m <= 5; ++m) {
    for (std::size_t r = 0; r + 2 <= m; ++r) {
      auto h = hankel_square(m, r);
      auto f = determinant(h);
      auto adj = adjugate(h);
      auto fi = SymMatrix::identity(Q, h.nvars(), m).scaled(f);
      CHECK(adj * h == fi);
      CHECK(h * adj == fi);
      CHECK(adj.is_symmetric());
      Polynomial laplace(Q, h.nvars());
      for (std::size_t j = 0; j < m; ++j) laplace += h.at(0, j) * cofactor(h, 0, j);
      CHECK(laplace == f);
      if (m <= 4) {
        std::size_t a = rng() % m, b = (a + 1 + rng() % (m - 1)) % m;
        std::vector<std::size_t> rows(m);
        for (std::size_t i = 0; i < m; ++i) rows[i] = i;
        std::swap(rows[a], rows[b]);
        std::vector<std::size_t> cols(rows);
        std::sort(cols.begin(), cols.end());
        CHECK(determinant(h.submatrix(rows, cols)) == -f);
      }
    }
  }
}

TEST_CASE("minors") {
  auto h24 = hankel_matrix({2, 4, 0});
  auto ms = minors(h24, 2);
  CHECK(ms.size() == 6);
  CHECK(ms.front().cols == std::vector<std::size_t>{0, 1});
  CHECK(ms.front().value == P("x1*x3-x2^2", 5));
  CHECK(minors(hankel_matrix({3, 5, 0}), 3).size() == 10);
  auto h3 = hankel_square(3, 0);
  auto full = minors(h3, 3);
  REQUIRE(full.size() == 1);
  CHECK(full.front().value == determinant(h3));
  CHECK_THROWS_AS(minors(h3, 4), ParameterError);
  CHECK(combinations(4, 2).size() == 6);
}

TEST_CASE("property: span of t-minors is degeneration-invariant for t >= r+2") {
  for (std::size_t m = 2; m <= 5; ++m) {
    for (std::size_t t = 1; t <= m; ++t) {
      auto generic = span_dimension(minor_values(hankel_square(m, 0), t));
      for (std::size_t r = 1; r + 2 <= m && r + 2 <= t; ++r) {
        CHECK_MESSAGE(span_dimension(minor_values(hankel_square(m, r), t)) == generic, "m=" << m << " t=" << t << " r=" << r);
      }
    }
  }
}

TEST_CASE("span of t-minors drops for small t") {
  CHECK(span_dimension(minor_values(hankel_square(5, 3), 1)) == 6);
  CHECK(span_dimension(minor_values(hankel_square(5, 0), 1)) == 9);
  CHECK(span_dimension(minor_values(hankel_square(5, 2), 2)) == 21);
  CHECK(span_dimension(minor_values(hankel_square(5, 0), 2)) == 28);
}

TEST_CASE("rank over the fraction field") {
  CHECK(rank_over_fraction_field(hankel_square(3, 0)) == 3);
  CHECK(rank_over_fraction_field(hankel_matrix({2, 4, 0})) == 2);
  auto h = hankel_square(3, 0);
  // Rank-one matrix v v^T.
  std::vector<Polynomial> v{P("x1", 5), P("x2+x3", 5), P("x4", 5)};
  std::vector<Polynomial> e;
  for (auto& a : v) {
    for (auto& b : v) e.push_back(a * b);
  }
  CHECK(rank_over_fraction_field(SymMatrix(3, 3, e)) == 1);
  CHECK(rank_over_fraction_field(SymMatrix::zero(Q, 2, 2, 3)) == 0);
}

TEST_CASE("block partition") {
  auto bp = block_partition(3, 0, 1);
  CHECK(bp.U.rows() == 2);
  CHECK(bp.U.cols() == 3);
  CHECK(bp.D.rows() == 1);
  CHECK(bp.identity_holds());
  CHECK(bp.Bprime == bp.B.transpose());
  for (std::size_t m = 3; m <= 5; ++m) {
    for (std::size_t r = 0; r + 2 <= m; ++r) {
      for (std::size_t j = 1; j + 2 <= m; ++j) {
        auto b = block_partition(m, r, j);
        CHECK(b.identity_holds());
        CHECK(b.Bprime == b.B.transpose());
      }
    }
  }
  CHECK_THROWS_AS(block_partition(3, 0, 2), ParameterError);
}

TEST_CASE("gruson-peskine transfer") {
  auto rep = gruson_peskine_check(3, 2, 5, 0);
  CHECK(rep.equal);
  CHECK(gruson_peskine_check(3, 3, 5, 0).equal);
  CHECK(gruson_peskine_check(4, 3, 7, 1).equal);
  CHECK_THROWS_AS(gruson_peskine_check(3, 4, 5, 0), ParameterError);
}

TEST_CASE("codimension of ideals of minors") {
  CHECK(minors_codim(3, 2, 0).codim == 3);
  CHECK(minors_codim(4, 3, 1).codim == 3);
  CHECK(minors_codim(4, 1, 1).codim == 6);
  for (std::size_t m = 2; m <= 4; ++m) {
    for (std::size_t r = 0; r + 2 <= m; ++r) {
      for (std::size_t t = 1; t <= m; ++t) {
        CAPTURE(m);
        CAPTURE(r);
        CAPTURE(t);
        CHECK(minors_codim(m, t, r).matches());
      }
    }
  }
  CHECK_THROWS_AS(minors_codim(3, 4, 0), ParameterError);
}
