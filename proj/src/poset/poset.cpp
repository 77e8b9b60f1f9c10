#include "hankel/poset.hpp"

#include <algorithm>
#include <numeric>

#include "hankel/errors.hpp"
#include "hankel/linalg.hpp"

namespace hankel::poset {

namespace {

std::size_t choose2(std::size_t m) { return m * (m - 1) / 2; }

Bracket make_bracket(std::vector<std::size_t> cols) {
  std::sort(cols.begin(), cols.end());
  return Bracket{std::move(cols)};
}

std::vector<std::size_t> range1(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v;
  for (std::size_t i = from; i <= to; ++i) v.push_back(i);
  return v;
}

Polynomial combine(const std::vector<Polynomial>& polys, const std::vector<mpq_class>& c) {
  Polynomial out(polys.front().field(), polys.front().nvars());
  for (std::size_t i = 0; i < polys.size(); ++i) out += polys[i].scaled(c[i]);
  return out;
}

Polynomial evaluate_relation(const PlueckerRelation& rel, const std::vector<Polynomial>& values) {
  Polynomial out(values.front().field(), values.front().nvars());
  for (const auto& t : rel.terms) out += (values[t.a] * values[t.b]).scaled(t.sign);
  return out;
}

// All monomials of degree d in n variables.
void monomials_of_degree(std::size_t n, unsigned d, std::vector<Monomial>& out) {
  std::vector<std::uint16_t> e(n, 0);
  auto rec = [&](auto& self, std::size_t var, unsigned left) -> void {
    if (var + 1 == n) {
      e[var] = static_cast<std::uint16_t>(left);
      out.emplace_back(e);
      e[var] = 0;
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[var] = static_cast<std::uint16_t>(k);
      self(self, var + 1, left - k);
    }
    e[var] = 0;
  };
  if (n == 0) return;
  rec(rec, 0, d);
}

std::vector<std::string> strings(const std::vector<Polynomial>& polys) {
  std::vector<std::string> out;
  for (const auto& p : polys) out.push_back(p.to_string());
  return out;
}

}  // namespace

std::size_t Bracket::sum() const { return std::accumulate(cols.begin(), cols.end(), std::size_t{0}); }

std::string Bracket::to_string() const {
  bool wide = std::any_of(cols.begin(), cols.end(), [](std::size_t c) { return c >= 10; });
  std::string s = "[";
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (wide && i) s += ",";
    s += std::to_string(cols[i]);
  }
  return s + "]";
}

bool Bracket::leq(const Bracket& other) const {
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] > other.cols[i]) return false;
  }
  return true;
}

std::size_t MinorPoset::index_of(const Bracket& b) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), b);
  if (it == nodes.end() || *it != b) throw IndexOutOfRange("no bracket " + b.to_string());
  return static_cast<std::size_t>(it - nodes.begin());
}

long MinorPoset::level(std::size_t node) const {
  return static_cast<long>(nodes.at(node).sum()) - static_cast<long>(choose2(m)) + 1;
}

std::vector<std::size_t> MinorPoset::level_nodes(long l) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (level(i) == l) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> MinorPoset::level_sizes() const {
  std::vector<std::size_t> sizes(2 * m - 1, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) ++sizes[level(i) - 1];
  return sizes;
}

std::size_t MinorPoset::edge_count() const {
  std::size_t n = 0;
  for (const auto& u : upper_covers) n += u.size();
  return n;
}

nlohmann::json MinorPoset::to_json() const {
  nlohmann::json j;
  j["m"] = m;
  j["nodes"] = nlohmann::json::array();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    j["nodes"].push_back({{"id", i}, {"bracket", nodes[i].to_string()}, {"cols", nodes[i].cols}, {"level", level(i)}});
  }
  j["edges"] = nlohmann::json::array();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (auto u : upper_covers[i]) j["edges"].push_back({i, u});
  }
  j["level_sizes"] = level_sizes();
  return j;
}

MinorPoset build_poset(std::size_t m) {
  if (m < 2) throw ParameterError("poset needs m >= 2");
  MinorPoset p;
  p.m = m;
  for (auto c : combinations(m + 1, m - 1)) {
    for (auto& x : c) ++x;
    p.nodes.push_back(Bracket{c});
  }
  const std::size_t n = p.nodes.size();
  p.upper_covers.assign(n, {});
  p.lower_covers.assign(n, {});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !p.nodes[a].leq(p.nodes[b])) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c) {
        if (c != a && c != b && p.nodes[a].leq(p.nodes[c]) && p.nodes[c].leq(p.nodes[b])) cover = false;
      }
      if (cover) {
        p.upper_covers[a].push_back(b);
        p.lower_covers[b].push_back(a);
      }
    }
  }
  return p;
}

SymMatrix generic_matrix(std::size_t rows, std::size_t cols, Field field) {
  std::vector<Polynomial> entries;
  for (std::size_t u = 0; u < rows; ++u) {
    for (std::size_t v = 0; v < cols; ++v) entries.push_back(Polynomial::variable(field, rows * cols, u * cols + v));
  }
  return SymMatrix(rows, cols, std::move(entries));
}

std::vector<Polynomial> bracket_values(const SymMatrix& mat) { return minor_values(mat, mat.rows()); }

bool LevelDecomposition::all_hold() const {
  return cofactor_symmetry && std::all_of(terms.begin(), terms.end(), [](const LevelTerm& t) {
           return t.expansion_holds && t.span_matches;
         });
}

bool LevelDecomposition::pattern_holds() const {
  return std::all_of(terms.begin(), terms.end(), [](const LevelTerm& t) { return t.pattern_holds; });
}

nlohmann::json LevelDecomposition::to_json(const MinorPoset& poset) const {
  nlohmann::json j;
  j["m"] = m;
  j["cofactor_symmetry"] = cofactor_symmetry;
  j["terms"] = nlohmann::json::array();
  for (const auto& t : terms) {
    nlohmann::json e;
    e["k"] = t.k;
    e["level"] = t.level;
    e["coefficients"] = nlohmann::json::object();
    for (const auto& [node, c] : t.coefficients) e["coefficients"][poset.nodes[node].to_string()] = c.get_str();
    e["slots"] = nlohmann::json::array();
    for (const auto& s : t.slots) {
      e["slots"].push_back({{"slot", {s.i, s.j}},
                            {"bracket", s.node ? nlohmann::json(poset.nodes[*s.node].to_string()) : nlohmann::json(nullptr)},
                            {"sign", s.sign}});
    }
    e["expansion_holds"] = t.expansion_holds;
    e["span_matches"] = t.span_matches;
    e["pattern_holds"] = t.pattern_holds;
    j["terms"].push_back(std::move(e));
  }
  return j;
}

LevelDecomposition derivative_level_decomposition(std::size_t m) {
  if (m < 2) throw ParameterError("level decomposition needs m >= 2");
  const Field q = Field::rationals();
  auto poset = build_poset(m);
  auto square = hankel_square(m, 0, q);
  auto values = bracket_values(hankel_matrix({m - 1, m + 1, 0}, q));
  auto f = determinant(square);
  const std::size_t n = 2 * m - 1;

  LevelDecomposition dec;
  dec.m = m;
  dec.cofactor_symmetry = true;
  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t u = t + 1; u < m; ++u) {
      if (cofactor(square, t, u) != cofactor(square, u, t)) dec.cofactor_symmetry = false;
    }
  }
  for (std::size_t k = 1; k <= n; ++k) {
    LevelTerm term;
    term.k = k;
    term.level = static_cast<long>(2 * m - k);
    auto level = poset.level_nodes(term.level);
    std::vector<Polynomial> span;
    for (auto i : level) span.push_back(values[i]);
    auto fk = f.partial_derivative(k - 1);
    auto c = express_in_span(fk, span);
    if (!c) throw InconsistentSystem("f_" + std::to_string(k) + " is not a combination of its level");
    for (std::size_t i = 0; i < level.size(); ++i) {
      if ((*c)[i] == 0) continue;
      if ((*c)[i].get_den() != 1) throw InconsistentSystem("non-integer level coefficient");
      term.coefficients.emplace_back(level[i], (*c)[i].get_num());
    }
    term.expansion_holds = combine(span, *c) == fk;

    // Slots (i,j), i <= j, on the anti-diagonal i + j = k + 1.
    term.pattern_holds = true;
    std::vector<bool> used(level.size(), false);
    std::vector<Polynomial> cofactors;
    for (std::size_t i = 1; i <= m; ++i) {
      if (k + 1 - i < i || k + 1 - i > m || k + 1 <= i) continue;
      const std::size_t j = k + 1 - i;
      auto mij = cofactor(square, i - 1, j - 1);
      Slot slot{i, j, std::nullopt, 0};
      for (std::size_t b = 0; b < level.size() && slot.sign == 0; ++b) {
        if (mij == span[b]) slot = {i, j, level[b], 1};
        else if (mij == -span[b]) slot = {i, j, level[b], -1};
        if (slot.sign != 0) {
          if (used[b]) term.pattern_holds = false;
          used[b] = true;
        }
      }
      cofactors.push_back(std::move(mij));
      if (slot.sign == 0) {
        term.pattern_holds = false;
      } else {
        const mpz_class expected = slot.sign * (i == j ? 1 : 2);
        auto it = std::find_if(term.coefficients.begin(), term.coefficients.end(),
                               [&](const auto& e) { return e.first == *slot.node; });
        if (it == term.coefficients.end() || it->second != expected) term.pattern_holds = false;
      }
      term.slots.push_back(slot);
    }
    if (term.slots.size() != level.size() || term.coefficients.size() != level.size()) term.pattern_holds = false;
    auto both = span;
    both.insert(both.end(), cofactors.begin(), cofactors.end());
    term.span_matches = span_dimension(span) == level.size() && span_dimension(cofactors) == level.size() &&
                        span_dimension(both) == level.size();
    dec.terms.push_back(std::move(term));
  }
  return dec;
}

std::string PlueckerRelation::to_string(const MinorPoset& poset) const {
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i || terms[i].sign < 0) s += terms[i].sign < 0 ? "-" : "+";
    s += poset.nodes[terms[i].a].to_string() + poset.nodes[terms[i].b].to_string();
  }
  return s;
}

Polynomial PlueckerRelation::as_polynomial(std::size_t node_count, Field field) const {
  Polynomial out(field, node_count);
  for (const auto& t : terms) {
    out += (Polynomial::variable(field, node_count, t.a) * Polynomial::variable(field, node_count, t.b)).scaled(t.sign);
  }
  return out;
}

std::vector<PlueckerRelation> pluecker_relations(std::size_t m) {
  if (m < 3) throw ParameterError("Pluecker relations need m >= 3");
  const Field q = Field::rationals();
  auto poset = build_poset(m);
  auto generic = bracket_values(generic_matrix(m - 1, m + 1, q));
  auto hankel = bracket_values(hankel_matrix({m - 1, m + 1, 0}, q));
  std::vector<std::vector<Polynomial>> degenerate;
  for (std::size_t r = 1; r + 2 <= m; ++r) degenerate.push_back(bracket_values(hankel_matrix({m - 1, m + 1, r}, q)));

  std::vector<PlueckerRelation> out;
  for (auto common : combinations(m + 1, m - 3)) {
    for (auto& c : common) ++c;
    PlueckerRelation rel;
    rel.common = common;
    std::size_t k = 0;
    for (std::size_t c = 1; c <= m + 1; ++c) {
      if (!std::binary_search(common.begin(), common.end(), c)) rel.free[k++] = c;
    }
    auto node = [&](std::size_t x, std::size_t y) {
      auto cols = common;
      cols.push_back(x);
      cols.push_back(y);
      return poset.index_of(make_bracket(cols));
    };
    const auto [p0, p1, p2, p3] = rel.free;
    rel.terms = {BracketProduct{1, node(p0, p1), node(p2, p3)}, BracketProduct{1, node(p0, p2), node(p1, p3)},
                 BracketProduct{1, node(p0, p3), node(p1, p2)}};
    for (int s1 : {1, -1}) {
      for (int s2 : {1, -1}) {
        if (rel.generic) break;
        rel.terms[1].sign = s1;
        rel.terms[2].sign = s2;
        rel.generic = evaluate_relation(rel, generic).is_zero();
      }
    }
    rel.hankel = evaluate_relation(rel, hankel).is_zero();
    rel.degenerate = std::all_of(degenerate.begin(), degenerate.end(),
                                 [&](const auto& v) { return evaluate_relation(rel, v).is_zero(); });
    out.push_back(std::move(rel));
  }
  return out;
}

nlohmann::json StepIdentities::to_json() const {
  return {{"m", m},
          {"delta", delta.to_string()},
          {"delta_prime", delta_prime.to_string()},
          {"left", left.to_string()},
          {"right", right.to_string()},
          {"pluecker_holds", pluecker_holds},
          {"alpha", alpha.get_str()},
          {"beta", beta.get_str()},
          {"printed_coefficients", printed_coefficients},
          {"a", a.get_str()},
          {"b", b.get_str()},
          {"lambda", lambda.get_str()},
          {"printed_relation", printed_relation},
          {"delta_squared_in_gradient", delta_squared_in_gradient}};
}

StepIdentities pluecker_step_identities(std::size_t m) {
  if (m < 3) throw ParameterError("step identities need m >= 3");
  const Field q = Field::rationals();
  auto poset = build_poset(m);
  auto values = bracket_values(hankel_matrix({m - 1, m + 1, 0}, q));
  auto f = determinant(hankel_square(m, 0, q));
  auto fk = [&](std::size_t k) { return f.partial_derivative(k - 1); };
  auto head = range1(1, m - 3);
  auto with = [&](std::vector<std::size_t> tail) {
    auto c = head;
    c.insert(c.end(), tail.begin(), tail.end());
    return make_bracket(c);
  };
  StepIdentities s;
  s.m = m;
  s.delta = with({m - 1, m});
  s.delta_prime = make_bracket([&] {
    auto c = range1(1, m - 2);
    c.push_back(m + 1);
    return c;
  }());
  s.left = with({m - 1, m + 1});
  s.right = with({m, m + 1});
  auto D = values[poset.index_of(s.delta)];
  auto Dp = values[poset.index_of(s.delta_prime)];
  auto L = values[poset.index_of(s.left)];
  auto R = values[poset.index_of(s.right)];

  auto lf = L * fk(2 * m - 2);
  auto rf = R * fk(2 * m - 1);
  auto ab = express_in_span(D * Dp, {lf, rf});
  if (ab) {
    s.alpha = (*ab)[0];
    s.beta = (*ab)[1];
    s.pluecker_holds = lf.scaled(s.alpha) + rf.scaled(s.beta) == D * Dp;
  }
  s.printed_coefficients = s.pluecker_holds && s.alpha == mpq_class(1, 2) && s.beta == -1;

  auto lin = express_in_span(fk(2 * m - 3), {D, Dp});
  if (!lin) throw InconsistentSystem("f_{2m-3} is not a combination of D and D'");
  s.a = (*lin)[0];
  s.b = (*lin)[1];
  if (s.b != 0) {
    s.lambda = s.a / s.b;
    if (s.lambda != 0) {
      auto printed = D * D - (D * (D.scaled(s.lambda) + Dp)).scaled(mpq_class(1, 3)) + (D * Dp).scaled(1 / s.lambda);
      s.printed_relation = printed.is_zero();
    }
  }
  if (s.a != 0 && s.pluecker_holds) {
    auto rhs = (D * fk(2 * m - 3)).scaled(1 / s.a) - (lf.scaled(s.alpha) + rf.scaled(s.beta)).scaled(s.b / s.a);
    s.delta_squared_in_gradient = rhs == D * D;
  }
  return s;
}

nlohmann::json FiberKernelReport::to_json() const {
  nlohmann::json j = {{"m", m},
                      {"r", r},
                      {"generators", generators},
                      {"route", route},
                      {"max_degree", max_degree},
                      {"hankel_kernel", hankel_kernel},
                      {"generic_kernel", generic_kernel},
                      {"kernel_dims", kernel_dims},
                      {"minimal_generators", minimal_generators},
                      {"pluecker_dims", pluecker_dims},
                      {"non_pluecker", non_pluecker},
                      {"pluecker_contained", pluecker_contained},
                      {"verdict", hankel::to_string(verdict)}};
  j["equals_generic"] = equals_generic ? nlohmann::json(*equals_generic) : nlohmann::json(nullptr);
  return j;
}

FiberKernelReport fiber_kernel_compare(std::size_t m, std::size_t r, bool stretch, const gb::Options& options) {
  if (m != 3 && !(m == 4 && stretch)) throw ParameterError("fiber kernels need m = 3 (m = 4 with stretch)");
  if (r + 2 > m) throw ParameterError("fiber kernels need r <= m-2");
  const Field q = Field::rationals();
  FiberKernelReport rep;
  rep.m = m;
  rep.r = r;
  rep.route = m == 3 ? "elimination" : "graded";
  auto hankel = bracket_values(hankel_matrix({m - 1, m + 1, r}, q));
  const std::size_t N = hankel.size();
  rep.generators = N;
  std::vector<Polynomial> rels;
  for (const auto& rel : pluecker_relations(m)) rels.push_back(rel.as_polynomial(N, q));

  try {
    auto gk = gb::graded_kernel(hankel, rep.max_degree);
    rep.kernel_dims = gk.dims;
    rep.minimal_generators = gk.minimal_generators;
    rep.pluecker_contained = std::all_of(rels.begin(), rels.end(), [&](const Polynomial& p) {
      return gk.basis.size() > 2 && express_in_span(p, gk.basis[2]).has_value();
    });
    rep.pluecker_dims.assign(rep.max_degree + 1, 0);
    rep.non_pluecker.assign(rep.max_degree + 1, 0);
    for (unsigned d = 2; d <= rep.max_degree; ++d) {
      std::vector<Monomial> mons;
      monomials_of_degree(N, d - 2, mons);
      std::vector<Polynomial> span;
      for (const auto& mono : mons) {
        for (const auto& p : rels) span.push_back(p.times_monomial(mono, 1));
      }
      rep.pluecker_dims[d] = span_dimension(span);
      const std::size_t from_rels = d == 2 ? rep.pluecker_dims[2] : 0;
      rep.non_pluecker[d] = gk.minimal_generators[d] > from_rels ? gk.minimal_generators[d] - from_rels : 0;
    }

    std::vector<Polynomial> hankel_kernel = gk.generators;
    std::vector<Polynomial> generic_kernel;
    if (m == 3) hankel_kernel = gb::kernel_of_algebra_map(hankel, options).generators();
    rep.hankel_kernel = strings(hankel_kernel);
    if (r == 0) {
      auto generic = bracket_values(generic_matrix(m - 1, m + 1, q));
      if (m == 3) {
        generic_kernel = gb::kernel_of_algebra_map(generic, options).generators();
      } else {
        auto gg = gb::graded_kernel(generic, rep.max_degree);
        generic_kernel = gg.generators;
        if (gg.dims != gk.dims) rep.equals_generic = false;
      }
      rep.generic_kernel = strings(generic_kernel);
      if (!rep.equals_generic) {
        rep.equals_generic =
            gb::ideal_equal(gb::Ideal(q, N, hankel_kernel), gb::Ideal(q, N, generic_kernel), options);
      }
      rep.verdict = pass_if(*rep.equals_generic && rep.pluecker_contained);
    } else {
      // m = 4, r = 1 carries an extra cubic.
      bool expected = rep.pluecker_contained && (m != 4 || r != 1 || rep.non_pluecker[3] > 0);
      rep.verdict = consistent_if(expected);
    }
  } catch (const BudgetExceeded&) {
    rep.verdict = Verdict::BudgetExceeded;
  }
  return rep;
}

}  // namespace hankel::poset
