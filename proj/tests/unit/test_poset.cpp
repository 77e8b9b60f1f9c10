#include <set>

#include "doctest.h"
#include "hankel/errors.hpp"
#include "hankel/poset.hpp"

using namespace hankel;
using namespace hankel::poset;

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::set<std::pair<std::string, std::string>> edges(const MinorPoset& p) {
  std::set<std::pair<std::string, std::string>> out;
  for (std::size_t a = 0; a < p.nodes.size(); ++a) {
    for (auto b : p.upper_covers[a]) out.emplace(p.nodes[a].to_string(), p.nodes[b].to_string());
  }
  return out;
}

mpz_class coefficient_of(const LevelTerm& t, const MinorPoset& p, const std::string& bracket) {
  for (const auto& [node, c] : t.coefficients) {
    if (p.nodes[node].to_string() == bracket) return c;
  }
  return 0;
}

}  // namespace

TEST_CASE("poset of maximal minors for m = 5") {
  auto p = build_poset(5);
  CHECK(p.nodes.size() == 15);
  const std::set<std::pair<std::string, std::string>> diagram = {
      {"[1234]", "[1235]"}, {"[1235]", "[1236]"}, {"[1235]", "[1245]"}, {"[1236]", "[1246]"},
      {"[1245]", "[1246]"}, {"[1245]", "[1345]"}, {"[1246]", "[1256]"}, {"[1246]", "[1346]"},
      {"[1345]", "[1346]"}, {"[1345]", "[2345]"}, {"[1256]", "[1356]"}, {"[1346]", "[1356]"},
      {"[1346]", "[2346]"}, {"[2345]", "[2346]"}, {"[1356]", "[1456]"}, {"[1356]", "[2356]"},
      {"[2346]", "[2356]"}, {"[1456]", "[2456]"}, {"[2356]", "[2456]"}, {"[2456]", "[3456]"},
  };
  CHECK(edges(p) == diagram);
  CHECK(p.level_sizes() == std::vector<std::size_t>{1, 1, 2, 2, 3, 2, 2, 1, 1});
  auto i1245 = p.index_of(Bracket{{1, 2, 4, 5}});
  std::set<std::string> up;
  for (auto u : p.upper_covers[i1245]) up.insert(p.nodes[u].to_string());
  CHECK(up == std::set<std::string>{"[1246]", "[1345]"});
  CHECK(p.level(p.index_of(Bracket{{1, 2, 3, 4}})) == 1);
  CHECK(p.level(p.index_of(Bracket{{3, 4, 5, 6}})) == 9);
  auto j = p.to_json();
  CHECK(j["nodes"].size() == 15);
  CHECK(j["edges"].size() == 20);
  CHECK(j["nodes"][0]["bracket"] == "[1234]");
}

TEST_CASE("poset small and large sizes") {
  auto p2 = build_poset(2);
  REQUIRE(p2.nodes.size() == 3);
  CHECK(edges(p2) == std::set<std::pair<std::string, std::string>>{{"[1]", "[2]"}, {"[2]", "[3]"}});
  CHECK_THROWS_AS(build_poset(1), ParameterError);
  for (std::size_t m = 2; m <= 8; ++m) {
    auto p = build_poset(m);
    CHECK(p.nodes.size() == binom(m + 1, 2));
    CHECK(p.level_sizes().size() == 2 * m - 1);
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
      CHECK(p.upper_covers[i].size() <= 2);
      CHECK(p.lower_covers[i].size() <= 2);
      CHECK(p.level(i) >= 1);
      CHECK(p.level(i) <= static_cast<long>(2 * m - 1));
      for (auto u : p.upper_covers[i]) CHECK(p.level(u) == p.level(i) + 1);
    }
  }
}

TEST_CASE("partials as combinations of level brackets") {
  auto p3 = build_poset(3);
  auto d3 = derivative_level_decomposition(3);
  CHECK(d3.all_hold());
  CHECK(coefficient_of(d3.term(5), p3, "[12]") == 1);
  CHECK(coefficient_of(d3.term(1), p3, "[34]") == 1);
  CHECK(coefficient_of(d3.term(2), p3, "[24]") == -2);
  // f_3 = x1*x5 + 2*x2*x4 - 3*x3^2 = 3*(x2*x4 - x3^2) + (x1*x5 - x2*x4).
  CHECK(coefficient_of(d3.term(3), p3, "[23]") == 3);
  CHECK(coefficient_of(d3.term(3), p3, "[14]") == 1);
  CHECK_FALSE(d3.term(3).pattern_holds);
  CHECK_FALSE(d3.term(3).slots[1].node.has_value());
  CHECK(d3.term(2).pattern_holds);
  for (std::size_t m = 2; m <= 5; ++m) {
    auto d = derivative_level_decomposition(m);
    CHECK(d.cofactor_symmetry);
    CHECK(d.all_hold());
    CHECK(d.terms.size() == 2 * m - 1);
    for (const auto& t : d.terms) {
      CHECK(t.level == static_cast<long>(2 * m - t.k));
      CHECK(t.expansion_holds);
      CHECK(t.span_matches);
    }
  }
  auto p5 = build_poset(5);
  auto d5 = derivative_level_decomposition(5);
  CHECK(coefficient_of(d5.term(9), p5, "[1234]") == 1);
  REQUIRE(d5.term(9).slots.size() == 1);
  CHECK(d5.term(9).slots[0].i == 5);
  CHECK(d5.term(9).slots[0].j == 5);
}

TEST_CASE("three-term Pluecker relations") {
  auto p3 = build_poset(3);
  auto r3 = pluecker_relations(3);
  REQUIRE(r3.size() == 1);
  CHECK(r3[0].to_string(p3) == "[12][34]-[13][24]+[14][23]");
  for (std::size_t m = 3; m <= 5; ++m) {
    auto rels = pluecker_relations(m);
    CHECK(rels.size() == binom(m + 1, 4));
    for (const auto& r : rels) {
      CHECK(r.generic);
      CHECK(r.hankel);
      CHECK(r.degenerate);
      CHECK(r.common.size() == m - 3);
    }
  }
  CHECK_THROWS_AS(pluecker_relations(2), ParameterError);
}

TEST_CASE("Pluecker step identities") {
  for (std::size_t m = 3; m <= 4; ++m) {
    auto s = pluecker_step_identities(m);
    CHECK(s.pluecker_holds);
    CHECK(s.delta_squared_in_gradient);
    CHECK(s.alpha == mpq_class(-1, 2));
    CHECK(s.beta == -1);
    CHECK_FALSE(s.printed_coefficients);
    CHECK(s.lambda == 3);
    CHECK(s.printed_relation);
  }
  auto s3 = pluecker_step_identities(3);
  CHECK(s3.delta.to_string() == "[23]");
  CHECK(s3.delta_prime.to_string() == "[14]");
  CHECK(s3.left.to_string() == "[24]");
  CHECK(s3.right.to_string() == "[34]");
}

TEST_CASE("special fiber kernels") {
  auto k30 = fiber_kernel_compare(3, 0);
  CHECK(k30.verdict == Verdict::Pass);
  REQUIRE(k30.equals_generic.has_value());
  CHECK(*k30.equals_generic);
  CHECK(k30.hankel_kernel.size() == 1);
  CHECK(k30.minimal_generators[2] == 1);
  auto k31 = fiber_kernel_compare(3, 1);
  CHECK(k31.verdict == Verdict::Consistent);
  CHECK(k31.pluecker_contained);
  CHECK_FALSE(k31.equals_generic.has_value());
  auto k41 = fiber_kernel_compare(4, 1, true);
  CHECK(k41.verdict == Verdict::Consistent);
  CHECK(k41.minimal_generators[2] == 5);
  CHECK(k41.non_pluecker[2] == 0);
  CHECK(k41.non_pluecker[3] == 1);
  CHECK_THROWS_AS(fiber_kernel_compare(4, 1), ParameterError);
  CHECK_THROWS_AS(fiber_kernel_compare(3, 2), ParameterError);
  gb::Options tight;
  tight.budget.max_pairs = 1;
  CHECK(fiber_kernel_compare(3, 0, false, tight).verdict == Verdict::BudgetExceeded);
}
