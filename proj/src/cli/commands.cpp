#include "commands.hpp"

#include "hankel/cli.hpp"

#include <algorithm>
#include <set>

#include "hankel/errors.hpp"
#include "hankel/gradient.hpp"
#include "hankel/poset.hpp"
#include "hankel/symmatrix.hpp"

namespace hankel::cli {

namespace {

using nlohmann::json;

std::vector<std::size_t> span_r(std::size_t lo, long hi) {
  std::vector<std::size_t> out;
  for (long r = static_cast<long>(lo); r <= hi; ++r) out.push_back(static_cast<std::size_t>(r));
  return out;
}

std::vector<std::size_t> r_upto(std::size_t m, std::size_t gap) { return span_r(0, static_cast<long>(m) - static_cast<long>(gap)); }
std::vector<std::size_t> r_none(std::size_t) { return {}; }

std::size_t need_r(const Cell& c) { return c.r.value_or(0); }

std::size_t need_t(const Cell& c) {
  if (!c.t) throw ParameterError("--t is required");
  return *c.t;
}

void require_rational(const Context& ctx, const std::string& what) {
  if (!ctx.field.is_rational()) throw ParameterError(what + " runs over q only");
}

json strings(const std::vector<Polynomial>& polys) {
  json out = json::array();
  for (const auto& p : polys) out.push_back(p.to_string());
  return out;
}

Outcome run_det(const Cell& c, const Context& ctx) {
  const std::size_t m = c.m, r = need_r(c);
  if (m < 2 || r + 2 > m) throw ParameterError("det needs m >= 2 and r <= m-2");
  auto h = hankel_square(m, r, ctx.field);
  auto f = determinant(h);
  auto pure = f.pure_term_coefficient(m - 1, static_cast<std::uint32_t>(m));
  auto adj = adjugate(h);
  bool identity = adj * h == SymMatrix::identity(ctx.field, h.nvars(), m).scaled(f);
  bool unit = pure == 1 || pure == -1 || (!ctx.field.is_rational() && ctx.field.normalize(pure * pure) == 1);
  Outcome o;
  o.verdict = pass_if(!f.is_zero() && unit && identity);
  o.value = coefficient_to_string(pure);
  o.witness = {{"det", f.to_string()},
               {"terms", f.size()},
               {"pure_term_coefficient", coefficient_to_string(pure)},
               {"adjugate_identity", identity}};
  return o;
}

Outcome run_gradient(const Cell& c, const Context& ctx) {
  const std::size_t r = need_r(c);
  auto rep = grad::cofactor_decomposition_check(c.m, r, ctx.field);
  auto g = grad::gradient(c.m, r, ctx.field);
  Outcome o;
  o.verdict = pass_if(rep.all() && rep.euler);
  o.value = std::to_string(g.partials.size());
  o.witness = {{"partials", strings(g.partials)}, {"cofactor_sums", rep.holds}, {"euler", rep.euler}};
  return o;
}

Outcome run_hessian(const Cell& c, const Context& ctx) {
  auto cert = grad::certify_hessian_nonzero(c.m, need_r(c), ctx.seed, ctx.field);
  Outcome o;
  o.verdict = pass_if(cert.nonzero);
  o.value = cert.method;
  json point = json::array();
  for (const auto& x : cert.point) point.push_back(coefficient_to_string(x));
  o.witness = {{"nonzero", cert.nonzero},
               {"method", cert.method},
               {"degenerated", cert.degenerated.to_string()},
               {"variables", grad::appendix_variables(c.m, need_r(c))},
               {"point", point},
               {"attempts", cert.attempts}};
  return o;
}

Outcome run_appendix(const Cell& c, const Context& ctx) {
  require_rational(ctx, "appendix-check");
  const std::size_t r = need_r(c);
  auto cf = grad::appendix_closed_form(c.m, r);
  auto cmp = grad::compare_with_closed_form(c.m, r);
  Outcome o;
  o.verdict = pass_if(cmp.matches);
  o.value = cmp.matches ? "match" : "mismatch";
  o.witness = {{"degenerated", cmp.degenerated.to_string()},
               {"closed_form", strings(cf.expansions())},
               {"prefactor", cf.prefactor.get_str()},
               {"inner_monomials_coincide", cf.inner_monomials_coincide()},
               {"inner_signs", cmp.inner_signs},
               {"global_sign", cmp.global_sign}};
  return o;
}

Outcome run_theta(const Cell& c, const Context& ctx) {
  auto rep = grad::theta_check(c.m, need_r(c), ctx.field);
  Outcome o;
  o.verdict = pass_if(rep.holds);
  o.value = coefficient_to_string(rep.scalar);
  o.witness = {{"det", rep.det.to_string()},
               {"expected_exponent", rep.expected_exponent},
               {"scalar", coefficient_to_string(rep.scalar)}};
  return o;
}

Outcome run_codim_minors(const Cell& c, const Context& ctx) {
  require_rational(ctx, "codim-minors");
  auto rep = minors_codim(c.m, need_t(c), need_r(c), ctx.options);
  Outcome o;
  o.verdict = pass_if(rep.matches());
  o.value = std::to_string(rep.codim);
  o.witness = {{"codim", rep.codim}, {"expected", rep.expected}};
  return o;
}

Outcome run_codim_gradient(const Cell& c, const Context& ctx) {
  require_rational(ctx, "codim-gradient");
  auto rep = grad::gradient_codim(c.m, need_r(c), ctx.options);
  Outcome o;
  o.verdict = pass_if(rep.matches());
  o.value = std::to_string(rep.codim);
  o.witness = {{"codim", rep.codim}, {"expected", rep.expected}};
  return o;
}

Outcome run_gp(const Cell& c, const Context& ctx) {
  const std::size_t m = c.m, r = need_r(c);
  if (m < 2 || r + 2 > m) throw ParameterError("gp-check needs m >= 2 and r <= m-2");
  std::vector<std::size_t> ts;
  if (c.t) ts.push_back(*c.t);
  else for (std::size_t t = 1; t <= m; ++t) ts.push_back(t);
  Outcome o;
  bool all = true;
  o.witness = json::array();
  for (auto t : ts) {
    auto rep = gruson_peskine_check(m, t, 2 * m - 1, r, ctx.field, ctx.options);
    all = all && rep.equal;
    o.witness.push_back({{"s", rep.s},
                         {"t", rep.t},
                         {"n", rep.n},
                         {"r", rep.r},
                         {"generators_s", rep.generators_s},
                         {"generators_t", rep.generators_t},
                         {"equal", rep.equal}});
  }
  o.verdict = pass_if(all);
  o.value = all ? "equal" : "different";
  return o;
}

// Edges of the m = 5 diagram.
const std::set<std::pair<std::string, std::string>>& diagram5() {
  static const std::set<std::pair<std::string, std::string>> d = {
      {"[1234]", "[1235]"}, {"[1235]", "[1236]"}, {"[1235]", "[1245]"}, {"[1236]", "[1246]"},
      {"[1245]", "[1246]"}, {"[1245]", "[1345]"}, {"[1246]", "[1256]"}, {"[1246]", "[1346]"},
      {"[1345]", "[1346]"}, {"[1345]", "[2345]"}, {"[1256]", "[1356]"}, {"[1346]", "[1356]"},
      {"[1346]", "[2346]"}, {"[2345]", "[2346]"}, {"[1356]", "[1456]"}, {"[1356]", "[2356]"},
      {"[2346]", "[2356]"}, {"[1456]", "[2456]"}, {"[2356]", "[2456]"}, {"[2456]", "[3456]"},
  };
  return d;
}

Outcome run_poset(const Cell& c, const Context&) {
  auto p = poset::build_poset(c.m);
  bool ok = p.nodes.size() == (c.m + 1) * c.m / 2;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    ok = ok && p.upper_covers[i].size() <= 2 && p.lower_covers[i].size() <= 2;
    ok = ok && p.level(i) >= 1 && p.level(i) <= static_cast<long>(2 * c.m - 1);
  }
  if (c.m == 5) {
    std::set<std::pair<std::string, std::string>> e;
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
      for (auto u : p.upper_covers[i]) e.emplace(p.nodes[i].to_string(), p.nodes[u].to_string());
    }
    ok = ok && e == diagram5();
  }
  Outcome o;
  o.verdict = pass_if(ok);
  o.value = std::to_string(p.nodes.size());
  o.witness = p.to_json();
  return o;
}

Outcome run_pluecker(const Cell& c, const Context& ctx) {
  require_rational(ctx, "pluecker");
  auto p = poset::build_poset(c.m);
  auto rels = poset::pluecker_relations(c.m);
  auto step = poset::pluecker_step_identities(c.m);
  bool all = std::all_of(rels.begin(), rels.end(), [](const auto& r) { return r.holds(); });
  json list = json::array();
  for (const auto& r : rels) list.push_back(r.to_string(p));
  Outcome o;
  o.verdict = pass_if(all && step.holds());
  o.value = std::to_string(rels.size());
  o.witness = {{"relations", list}, {"all_vanish", all}, {"step", step.to_json()}};
  return o;
}

Outcome run_level(const Cell& c, const Context& ctx) {
  require_rational(ctx, "level-decomp");
  auto d = poset::derivative_level_decomposition(c.m);
  Outcome o;
  o.verdict = pass_if(d.all_hold());
  o.value = d.pattern_holds() ? "pattern" : "no-pattern";
  o.witness = d.to_json(poset::build_poset(c.m));
  o.witness["coefficient_pattern"] = d.pattern_holds();
  return o;
}

Outcome run_fiber(const Cell& c, const Context& ctx) {
  require_rational(ctx, "fiber-kernel");
  auto rep = poset::fiber_kernel_compare(c.m, need_r(c), ctx.stretch, ctx.options);
  Outcome o;
  o.verdict = rep.verdict;
  std::string degs;
  for (std::size_t d = 0; d < rep.minimal_generators.size(); ++d) {
    if (rep.minimal_generators[d] == 0) continue;
    if (!degs.empty()) degs += " ";
    degs += std::to_string(rep.minimal_generators[d]) + "@" + std::to_string(d);
  }
  o.value = degs;
  o.witness = rep.to_json();
  return o;
}

Outcome run_linear_rank(const Cell& c, const Context& ctx) {
  const std::size_t m = c.m, r = need_r(c);
  auto g = grad::gradient(m, r, ctx.field);
  auto rep = gb::linear_syzygies(g.partials, ctx.seed);
  Outcome o;
  const bool zero_char = ctx.field.is_rational();
  if (zero_char && r == 0) o.verdict = pass_if(rep.linear_rank == 3);
  else if (zero_char && r + 2 == m) o.verdict = pass_if(rep.linear_rank == m);
  else if (zero_char) o.verdict = consistent_if(rep.linear_rank == 2);
  else if (ctx.field.characteristic() == 3 && m == 4 && r == 1) o.verdict = pass_if(rep.linear_rank == 3);
  else o.verdict = Verdict::Consistent;
  o.value = std::to_string(rep.linear_rank);
  json syz = json::array();
  for (const auto& s : rep.syzygies) syz.push_back(strings(s));
  o.witness = {{"linear_rank", rep.linear_rank},
               {"syzygy_dimension", rep.syzygy_dimension},
               {"evaluated_rank", rep.evaluated_rank},
               {"syzygies", syz}};
  return o;
}

Outcome run_reduction(const Cell& c, const Context& ctx) {
  const std::size_t m = c.m, r = need_r(c);
  auto g = grad::gradient(m, r, ctx.field);
  gb::Ideal I = gb::Ideal::from(minor_values(hankel_square(m, r, ctx.field), m - 1));
  auto res = gb::reduction_check(g.ideal(), I, ctx.nmax, ctx.options);
  Outcome o;
  if (!res.contained) o.verdict = Verdict::Fail;
  else if (r == 0) o.verdict = pass_if(res.reduction_number == static_cast<unsigned>(m - 2));
  else if (r + 3 <= m) o.verdict = pass_if(!res.reduction_number);
  else o.verdict = Verdict::Consistent;
  o.value = res.reduction_number ? std::to_string(*res.reduction_number) : "none";
  o.witness = {{"contained", res.contained},
               {"nmax", ctx.nmax},
               {"reduction_number", res.reduction_number ? json(*res.reduction_number) : json(nullptr)},
               {"notes", res.notes}};
  return o;
}

Outcome run_minimal_primes(const Cell& c, const Context& ctx) {
  require_rational(ctx, "minimal-primes");
  auto rep = grad::minimal_primes_checks(c.m, need_r(c), ctx.options, ctx.seed);
  Outcome o;
  o.verdict = pass_if(rep.core_holds() && rep.d_radical != Verdict::Fail);
  o.value = std::string(rep.core_holds() ? "abc" : "-") + "/" + to_string(rep.d_radical);
  o.witness = {{"a_in_q", rep.a_in_q},
               {"b_in_p", rep.b_in_p},
               {"codim_q", rep.codim_q},
               {"codim_p", rep.codim_p},
               {"c_codims", rep.c_codims},
               {"d_radical", to_string(rep.d_radical)},
               {"d_checked", rep.d_checked}};
  return o;
}

Outcome run_regular(const Cell& c, const Context& ctx) {
  require_rational(ctx, "regular-seq");
  auto rep = grad::regular_sequence_experiment(c.m, ctx.options);
  Outcome o;
  o.verdict = rep.verdict;
  json steps = json::array();
  for (const auto& s : rep.steps) steps.push_back({{"variable", "x" + std::to_string(s.variable + 1)}, {"regular", s.regular}});
  o.value = std::to_string(rep.steps.size());
  o.witness = {{"steps", steps},
               {"first_failure", rep.first_failure ? json("x" + std::to_string(*rep.first_failure + 1)) : json(nullptr)}};
  return o;
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> list = {
      {"det", "det H_m[r], its pure x_m term and adj(M) M = det I", true, false,
       [](std::size_t m) { return r_upto(m, 2); }, run_det},
      {"gradient", "partials as cofactor sums and the Euler identity", true, false,
       [](std::size_t m) { return r_upto(m, 2); }, run_gradient},
      {"hessian-check", "certified non-vanishing of the Hessian determinant", true, false,
       [](std::size_t m) { return r_upto(m, 2); }, run_hessian},
      {"appendix-check", "degenerated Hessian against the closed form", true, false,
       [](std::size_t m) { return r_upto(m, 3); }, run_appendix},
      {"theta-check", "det of the leading (m+1)-block after x_{m+2}.. -> 0", true, false,
       [](std::size_t m) { return r_upto(m, 2); }, run_theta},
      {"codim-minors", "codim I_t(H_m[r]) against min{2(m-t)+1, 2m-t-r}", true, true,
       [](std::size_t m) { return r_upto(m, 2); }, run_codim_minors},
      {"codim-gradient", "codim of the gradient ideal", true, false,
       [](std::size_t m) { return r_upto(m, 2); }, run_codim_gradient},
      {"gp-check", "I_t of H_{m,m}[r] equals I_t of H_{t,2m-t}[r]", true, true,
       [](std::size_t m) { return r_upto(m, 2); }, run_gp},
      {"poset", "bracket poset of maximal minors of H_{m-1,m+1}", false, false, r_none, run_poset},
      {"pluecker", "three-term Pluecker relations and the step identities", false, false, r_none, run_pluecker},
      {"level-decomp", "partials as combinations of level brackets", false, false, r_none, run_level},
      {"fiber-kernel", "defining ideal of the algebra of maximal minors", true, false,
       [](std::size_t m) { return r_upto(m, 2); }, run_fiber},
      {"linear-rank", "linear rank of the gradient ideal", true, false,
       [](std::size_t m) { return r_upto(m, 2); }, run_linear_rank},
      {"reduction-check", "least n <= nmax with J I^n = I^(n+1), I = I_{m-1}", true, false,
       [](std::size_t m) { return r_upto(m, 2); }, run_reduction},
      {"minimal-primes", "containments for the minimal primes of R/J", true, false,
       [](std::size_t m) { return span_r(1, static_cast<long>(m) - 3); }, run_minimal_primes},
      {"regular-seq", "x_{2m-1}, ..., x_{m+3} as a regular sequence modulo J", false, false, r_none,
       run_regular},
  };
  return list;
}

const Command* find_command(const std::string& name) {
  for (const auto& c : commands()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& c : commands()) out.push_back(c.name);
  return out;
}

}  // namespace hankel::cli
