#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hankel/groebner.hpp"
#include "hankel/polynomial.hpp"
#include "hankel/symmatrix.hpp"
#include "hankel/verdict.hpp"
#include "json.hpp"

namespace hankel::poset {

/// Maximal minor of an (m-1)x(m+1) matrix, by its increasing 1-based columns.
struct Bracket {
  std::vector<std::size_t> cols;

  std::size_t sum() const;
  /// "[1245]", or "[1,2,10]" once an index has two digits.
  std::string to_string() const;
  /// Componentwise order.
  bool leq(const Bracket& other) const;
  friend auto operator<=>(const Bracket&, const Bracket&) = default;
};

struct MinorPoset {
  std::size_t m = 0;
  /// Lexicographic in cols.
  std::vector<Bracket> nodes;
  std::vector<std::vector<std::size_t>> upper_covers;
  std::vector<std::vector<std::size_t>> lower_covers;

  std::size_t index_of(const Bracket& b) const;
  /// Normalized level: sum of indices - C(m,2) + 1, in 1..2m-1.
  long level(std::size_t node) const;
  std::vector<std::size_t> level_nodes(long level) const;
  /// level_sizes()[l-1] = number of nodes on level l.
  std::vector<std::size_t> level_sizes() const;
  std::size_t edge_count() const;
  /// {m, nodes: [{id, bracket, cols, level}], edges: [[lower, upper]], level_sizes}.
  nlohmann::json to_json() const;
};

/// Requires m >= 2.
MinorPoset build_poset(std::size_t m);

/// Generic rows x cols matrix, entry (u,v) = variable u*cols + v.
SymMatrix generic_matrix(std::size_t rows, std::size_t cols, Field field = Field::rationals());
/// Maximal minors in the node order of build_poset.
std::vector<Polynomial> bracket_values(const SymMatrix& mat);

/// Signed cofactor M_{i,j} of det H_m; node and sign are set when M_{i,j} = sign * [node].
struct Slot {
  std::size_t i = 0, j = 0;
  std::optional<std::size_t> node;
  int sign = 0;
};
struct LevelTerm {
  std::size_t k = 0;
  long level = 0;
  /// f_k = sum coefficient * [node].
  std::vector<std::pair<std::size_t, mpz_class>> coefficients;
  /// Slots (i <= j, i+j = k+1) of the anti-diagonal.
  std::vector<Slot> slots;
  bool expansion_holds = false;
  /// The slot cofactors span the same space as the level brackets.
  bool span_matches = false;
  /// Each slot cofactor is a single bracket, slots and brackets correspond
  /// one to one, and c = sign * (1 on the diagonal, 2 off it).
  bool pattern_holds = false;
};
struct LevelDecomposition {
  std::size_t m = 0;
  std::vector<LevelTerm> terms;
  /// M_{t,u} = M_{u,t} for all slots.
  bool cofactor_symmetry = false;
  /// Symmetry, exact expansions and matching spans.
  bool all_hold() const;
  bool pattern_holds() const;
  const LevelTerm& term(std::size_t k) const { return terms.at(k - 1); }
  nlohmann::json to_json(const MinorPoset& poset) const;
};
/// Generic case only. Throws InconsistentSystem when some f_k is not in the span of its level.
LevelDecomposition derivative_level_decomposition(std::size_t m);

struct BracketProduct {
  int sign = 1;
  std::size_t a = 0, b = 0;
};
/// sum sign * [a][b] = 0 over brackets S+{p,q} with S common, {p,q} from four free indices.
struct PlueckerRelation {
  std::vector<std::size_t> common;
  std::array<std::size_t, 4> free{};
  std::array<BracketProduct, 3> terms{};
  bool generic = false;
  bool hankel = false;
  /// Vanishes on the maximal minors of H_{m-1,m+1}[r] for every 1 <= r <= m-2.
  bool degenerate = false;

  bool holds() const { return generic && hankel && degenerate; }
  std::string to_string(const MinorPoset& poset) const;
  /// In the bracket variables t_1..t_N (node order).
  Polynomial as_polynomial(std::size_t node_count, Field field = Field::rationals()) const;
};
/// Requires m >= 3. Signs are solved against generic minors.
std::vector<PlueckerRelation> pluecker_relations(std::size_t m);

/// With D = [1..m-3, m-1, m], D' = [1..m-2, m+1], L = [1..m-3, m-1, m+1], R = [1..m-3, m, m+1]:
///   D D' = alpha L f_{2m-2} + beta R f_{2m-1},   f_{2m-3} = a D + b D',
/// and D^2 = (1/a) D f_{2m-3} - (b/a)(alpha L f_{2m-2} + beta R f_{2m-1}).
struct StepIdentities {
  std::size_t m = 0;
  Bracket delta, delta_prime, left, right;
  bool pluecker_holds = false;
  mpq_class alpha, beta;
  /// alpha = 1/2 and beta = -1.
  bool printed_coefficients = false;
  mpq_class a, b;
  /// a / b.
  mpq_class lambda;
  /// D^2 - 1/3 D (lambda D + D') + 1/lambda D D' = 0 as printed.
  bool printed_relation = false;
  bool delta_squared_in_gradient = false;
  bool holds() const { return pluecker_holds && delta_squared_in_gradient; }
  nlohmann::json to_json() const;
};
/// Requires m >= 3.
StepIdentities pluecker_step_identities(std::size_t m);

struct FiberKernelReport {
  std::size_t m = 0, r = 0;
  std::size_t generators = 0;
  /// "elimination" (m = 3) or "graded" (degree <= max_degree).
  std::string route;
  unsigned max_degree = 3;
  std::vector<std::string> hankel_kernel;
  std::vector<std::string> generic_kernel;
  std::vector<std::size_t> kernel_dims;
  std::vector<std::size_t> minimal_generators;
  std::vector<std::size_t> pluecker_dims;
  /// Minimal generators per degree outside the ideal of Pluecker relations.
  std::vector<std::size_t> non_pluecker;
  bool pluecker_contained = false;
  std::optional<bool> equals_generic;
  Verdict verdict = Verdict::Fail;
  nlohmann::json to_json() const;
};
/// m = 3, or m = 4 when stretch is set; 0 <= r <= m-2.
FiberKernelReport fiber_kernel_compare(std::size_t m, std::size_t r, bool stretch = false,
                                       const gb::Options& options = {});

}  // namespace hankel::poset
