// Internal Buchberger engine. Not part of the public headers.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hankel/errors.hpp"
#include "hankel/groebner.hpp"

namespace hankel::gb::detail {

constexpr std::size_t kMaxVars = 32;

struct Exp {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint32_t mask = 0;
  std::uint32_t deg = 0;

  friend bool operator==(const Exp& a, const Exp& b) { return a.e == b.e; }
};

inline Exp exp_mul(const Exp& a, const Exp& b, std::size_t n) {
  Exp r;
  for (std::size_t i = 0; i < n; ++i) {
    unsigned s = unsigned{a.e[i]} + b.e[i];
    if (s > 0xffff) throw BudgetExceeded("exponent overflow in Groebner engine");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  r.mask = a.mask | b.mask;
  r.deg = a.deg + b.deg;
  return r;
}

inline bool exp_divides(const Exp& a, const Exp& b, std::size_t n) {
  if ((a.mask & ~b.mask) != 0 || a.deg > b.deg) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (a.e[i] > b.e[i]) return false;
  }
  return true;
}

/// b / a, assuming a | b.
inline Exp exp_quot(const Exp& a, const Exp& b, std::size_t n) {
  Exp r;
  for (std::size_t i = 0; i < n; ++i) {
    r.e[i] = static_cast<std::uint16_t>(b.e[i] - a.e[i]);
    if (r.e[i]) r.mask |= 1u << i;
  }
  r.deg = b.deg - a.deg;
  return r;
}

inline Exp exp_lcm(const Exp& a, const Exp& b, std::size_t n) {
  Exp r;
  for (std::size_t i = 0; i < n; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  r.mask = a.mask | b.mask;
  return r;
}

inline bool exp_coprime(const Exp& a, const Exp& b) { return (a.mask & b.mask) == 0; }

struct Cmp {
  std::size_t n;
  MonomialOrder::Kind kind;
  std::size_t k;

  static int revlex(const Exp& a, const Exp& b, std::size_t lo, std::size_t hi) {
    unsigned da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) da += a.e[i], db += b.e[i];
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = hi; i-- > lo;) {
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    }
    return 0;
  }

  int operator()(const Exp& a, const Exp& b) const {
    switch (kind) {
      case MonomialOrder::Kind::DegRevLex:
        if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
        for (std::size_t i = n; i-- > 0;) {
          if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        }
        return 0;
      case MonomialOrder::Kind::Lex:
        for (std::size_t i = 0; i < n; ++i) {
          if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
        }
        return 0;
      case MonomialOrder::Kind::Block: {
        int c = revlex(a, b, 0, k);
        return c != 0 ? c : revlex(a, b, k, n);
      }
    }
    return 0;
  }
};

/// Coefficients kept as integers; rows are made primitive, never divided.
struct IntegerDomain {
  using C = mpz_class;
  static bool is_zero(const C& c) { return c == 0; }
  /// alpha, beta with alpha*a - beta*b = 0 and alpha > 0.
  void multipliers(const C& a, const C& b, C& alpha, C& beta) const {
    C g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    alpha = b / g;
    beta = a / g;
    if (alpha < 0) alpha = -alpha, beta = -beta;
  }
  bool is_one(const C& c) const { return c == 1; }
  C mul(const C& a, const C& b) const { return a * b; }
  C sub(const C& a, const C& b) const { return a - b; }
  C neg(const C& a) const { return -a; }
};

struct PrimeDomain {
  using C = std::uint64_t;
  std::uint64_t p;
  static bool is_zero(const C& c) { return c == 0; }
  C mul(C a, C b) const { return a * b % p; }
  C sub(C a, C b) const { return a >= b ? a - b : a + p - b; }
  C neg(C a) const { return a == 0 ? 0 : p - a; }
  C inv(C a) const {
    C result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  void multipliers(const C& a, const C& b, C& alpha, C& beta) const {
    alpha = 1;
    beta = mul(a, inv(b));
  }
  bool is_one(const C& c) const { return c == 1; }
};

template <class D>
struct Term {
  Exp m;
  typename D::C c;
};

template <class D>
struct Poly {
  std::vector<Term<D>> terms;  // decreasing in the active order
  unsigned sugar = 0;
};

struct Limits {
  std::size_t max_pairs;
  std::size_t max_basis;
  std::size_t max_terms;
  std::size_t max_coefficient_bits = std::size_t{1} << 22;
};

template <class D>
class Engine {
 public:
  Engine(D dom, Cmp cmp, std::vector<unsigned> weights, Limits limits)
      : dom_(std::move(dom)), cmp_(cmp), weights_(std::move(weights)), limits_(limits) {}

  unsigned wdeg(const Exp& m) const {
    unsigned d = 0;
    for (std::size_t i = 0; i < cmp_.n; ++i) d += weights_[i] * m.e[i];
    return d;
  }

  void sort_terms(Poly<D>& p) const {
    std::sort(p.terms.begin(), p.terms.end(), [&](const Term<D>& a, const Term<D>& b) { return cmp_(a.m, b.m) > 0; });
  }

  /// Integer domain: divide by content and make the leading coefficient positive.
  /// Prime domain: make monic.
  void normalize(Poly<D>& p) const;

  /// alpha * p[from..] - beta * shift * g[1..], where the leading terms cancel.
  std::vector<Term<D>> combine(const std::vector<Term<D>>& p, std::size_t from, const typename D::C& alpha,
                               const typename D::C& beta, const Exp& shift, const Poly<D>& g) const {
    std::vector<Term<D>> out;
    out.reserve(p.size() - from + g.terms.size());
    std::size_t i = from + 1, j = 1;
    const bool scale_p = !dom_.is_one(alpha);
    while (i < p.size() || j < g.terms.size()) {
      int c;
      Exp gm;
      if (j < g.terms.size()) gm = exp_mul(g.terms[j].m, shift, cmp_.n);
      if (i == p.size()) {
        c = -1;
      } else if (j == g.terms.size()) {
        c = 1;
      } else {
        c = cmp_(p[i].m, gm);
      }
      if (c > 0) {
        out.push_back({p[i].m, scale_p ? dom_.mul(alpha, p[i].c) : p[i].c});
        ++i;
      } else if (c < 0) {
        out.push_back({gm, dom_.neg(dom_.mul(beta, g.terms[j].c))});
        ++j;
      } else {
        auto v = dom_.sub(scale_p ? dom_.mul(alpha, p[i].c) : p[i].c, dom_.mul(beta, g.terms[j].c));
        if (!D::is_zero(v)) out.push_back({p[i].m, std::move(v)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  /// Index into basis_ of a reducer whose leading monomial divides m.
  std::optional<std::size_t> find_reducer(const Exp& m, const std::vector<std::size_t>& active) const {
    for (auto idx : active) {
      if (exp_divides(basis_[idx].terms.front().m, m, cmp_.n)) return idx;
    }
    return std::nullopt;
  }

  /// Full reduction of p by the polynomials indexed in `active`.
  /// `scale` accumulates the factor c with c*p = result (mod ideal).
  Poly<D> reduce(Poly<D> p, const std::vector<std::size_t>& active, typename D::C* scale = nullptr) {
    std::vector<Term<D>> done;
    std::vector<Term<D>> cur = std::move(p.terms);
    std::size_t pos = 0;
    unsigned steps = 0;
    typename D::C alpha, beta;
    while (pos < cur.size()) {
      auto red = find_reducer(cur[pos].m, active);
      if (!red) {
        done.push_back(std::move(cur[pos]));
        ++pos;
        continue;
      }
      const auto& g = basis_[*red];
      Exp shift = exp_quot(g.terms.front().m, cur[pos].m, cmp_.n);
      dom_.multipliers(cur[pos].c, g.terms.front().c, alpha, beta);
      p.sugar = std::max(p.sugar, wdeg(shift) + g.sugar);
      cur = combine(cur, pos, alpha, beta, shift, g);
      pos = 0;
      if (!dom_.is_one(alpha)) {
        for (auto& t : done) t.c = dom_.mul(alpha, t.c);
        if (scale) *scale = dom_.mul(*scale, alpha);
      }
      check_terms(cur.size() + done.size());
      if (!cur.empty()) check_size(cur.front().c);
      // Content removal would break the scale bookkeeping.
      if (!scale && ++steps % 16 == 0) shrink(done, cur);
    }
    p.terms = std::move(done);
    return p;
  }

  Poly<D> spoly(std::size_t a, std::size_t b) const {
    const auto& f = basis_[a];
    const auto& g = basis_[b];
    Exp l = exp_lcm(f.terms.front().m, g.terms.front().m, cmp_.n);
    Exp sf = exp_quot(f.terms.front().m, l, cmp_.n);
    Exp sg = exp_quot(g.terms.front().m, l, cmp_.n);
    typename D::C alpha, beta;
    dom_.multipliers(f.terms.front().c, g.terms.front().c, alpha, beta);
    std::vector<Term<D>> shifted;
    shifted.reserve(f.terms.size());
    for (const auto& t : f.terms) shifted.push_back({exp_mul(t.m, sf, cmp_.n), t.c});
    Poly<D> s;
    s.terms = combine(shifted, 0, alpha, beta, sg, g);
    s.sugar = std::max(f.sugar + wdeg(sf), g.sugar + wdeg(sg));
    return s;
  }

  struct Pair {
    std::size_t i, j;
    Exp lcm;
    unsigned sugar;
  };

  /// Gebauer-Moeller update after adding basis_[h].
  void update(std::size_t h) {
    const Exp& hm = basis_[h].terms.front().m;
    std::vector<Pair> c;
    for (auto g : active_) {
      const Exp& gm = basis_[g].terms.front().m;
      Exp l = exp_lcm(hm, gm, cmp_.n);
      c.push_back({g, h, l, std::max(basis_[g].sugar + wdeg(exp_quot(gm, l, cmp_.n)), basis_[h].sugar + wdeg(exp_quot(hm, l, cmp_.n)))});
    }
    std::vector<char> keep(c.size(), 0);
    std::vector<char> coprime(c.size(), 0);
    for (std::size_t a = 0; a < c.size(); ++a) coprime[a] = exp_coprime(hm, basis_[c[a].i].terms.front().m);
    for (std::size_t a = 0; a < c.size(); ++a) {
      if (coprime[a]) {
        keep[a] = 1;
        continue;
      }
      bool dominated = false;
      for (std::size_t b = 0; b < c.size() && !dominated; ++b) {
        if (b == a) continue;
        // Pairs still in C (after a) or already kept in D.
        if (b < a && !keep[b]) continue;
        if (exp_divides(c[b].lcm, c[a].lcm, cmp_.n)) {
          // Break ties between equal lcms by index so exactly one survives.
          if (c[b].lcm == c[a].lcm && b > a) continue;
          dominated = true;
        }
      }
      if (!dominated) keep[a] = 1;
    }
    std::vector<Pair> fresh;
    for (std::size_t a = 0; a < c.size(); ++a) {
      if (keep[a] && !coprime[a]) fresh.push_back(c[a]);
    }
    std::vector<Pair> survivors;
    for (auto& p : pairs_) {
      bool drop = exp_divides(hm, p.lcm, cmp_.n) &&
                  !(exp_lcm(basis_[p.i].terms.front().m, hm, cmp_.n) == p.lcm) &&
                  !(exp_lcm(hm, basis_[p.j].terms.front().m, cmp_.n) == p.lcm);
      if (!drop) survivors.push_back(std::move(p));
    }
    survivors.insert(survivors.end(), fresh.begin(), fresh.end());
    pairs_ = std::move(survivors);
    std::vector<std::size_t> next;
    for (auto g : active_) {
      if (!exp_divides(hm, basis_[g].terms.front().m, cmp_.n)) next.push_back(g);
    }
    next.push_back(h);
    active_ = std::move(next);
  }

  bool pair_less(const Pair& a, const Pair& b) const {
    static int strat = getenv("HGB_STRAT") ? atoi(getenv("HGB_STRAT")) : -1;
    bool su = strat < 0 ? use_sugar_ : strat == 0;
    if (su && a.sugar != b.sugar) return a.sugar < b.sugar;
    if (strat == 2 && a.lcm.deg != b.lcm.deg) return a.lcm.deg < b.lcm.deg;
    int c = cmp_(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }

  std::size_t add(Poly<D> p) {
    normalize(p);
    basis_.push_back(std::move(p));
    stored_terms_ += basis_.back().terms.size();
    check_terms(0);
    if (active_.size() + 1 > limits_.max_basis) throw BudgetExceeded("Groebner basis size budget exceeded");
    return basis_.size() - 1;
  }

  /// Runs Buchberger on `input`; returns the reduced basis sorted by increasing
  /// leading monomial, normalized.
  std::vector<Poly<D>> run(std::vector<Poly<D>> input) {
    for (auto& p : input) sort_terms(p);
    input.erase(std::remove_if(input.begin(), input.end(), [](const Poly<D>& p) { return p.terms.empty(); }),
                input.end());
    bool homogeneous = true;
    for (auto& p : input) {
      unsigned s = 0;
      for (const auto& t : p.terms) s = std::max(s, wdeg(t.m));
      for (const auto& t : p.terms) homogeneous = homogeneous && wdeg(t.m) == s;
      p.sugar = s;
    }
    use_sugar_ = homogeneous || cmp_.kind == MonomialOrder::Kind::DegRevLex;
    // Insert inputs by increasing sugar, then leading monomial, so low-degree
    // elements reduce the others first. Ties keep input order.
    std::stable_sort(input.begin(), input.end(), [&](const Poly<D>& a, const Poly<D>& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return cmp_(a.terms.front().m, b.terms.front().m) < 0;
    });
    for (auto& p : input) {
      auto r = reduce(std::move(p), active_);
      if (r.terms.empty()) continue;
      if (r.terms.front().m.deg == 0) return unit_basis(r);
      update(add(std::move(r)));
    }
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(),
                                   [&](const Pair& a, const Pair& b) { return pair_less(a, b); });
      Pair pr = *best;
      *best = pairs_.back();
      pairs_.pop_back();
      if (++pairs_done_ > limits_.max_pairs) throw BudgetExceeded("Groebner pair budget exceeded");
      auto h = reduce(spoly(pr.i, pr.j), active_);
      if (h.terms.empty()) continue;
      if (h.terms.front().m.deg == 0) return unit_basis(h);
      update(add(std::move(h)));
    }
    return interreduce();
  }

  std::size_t pairs_done() const { return pairs_done_; }

  /// Load an already reduced basis (for normal forms and verification).
  void load(std::vector<Poly<D>> basis) {
    basis_ = std::move(basis);
    active_.clear();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      sort_terms(basis_[i]);
      active_.push_back(i);
    }
  }
  const std::vector<std::size_t>& active() const { return active_; }
  std::size_t basis_size() const { return basis_.size(); }
  const Poly<D>& element(std::size_t i) const { return basis_[i]; }

  /// Every S-polynomial of the loaded basis reduces to zero.
  bool all_spolys_reduce() {
    for (std::size_t a = 0; a < basis_.size(); ++a) {
      for (std::size_t b = a + 1; b < basis_.size(); ++b) {
        if (!reduce(spoly(a, b), active_).terms.empty()) return false;
      }
    }
    return true;
  }

  const D& domain() const { return dom_; }

 private:
  std::vector<Poly<D>> unit_basis(const Poly<D>& unit) {
    Poly<D> one;
    one.terms.push_back({Exp{}, unit.terms.front().c});
    normalize(one);
    return {one};
  }

  std::vector<Poly<D>> interreduce() {
    std::vector<std::size_t> order = active_;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cmp_(basis_[a].terms.front().m, basis_[b].terms.front().m) < 0;
    });
    std::vector<Poly<D>> out;
    for (auto idx : order) {
      std::vector<std::size_t> others;
      for (auto o : order) {
        if (o != idx) others.push_back(o);
      }
      // The basis is minimal, so only the tail gets reduced.
      auto red = reduce(basis_[idx], others);
      normalize(red);
      basis_[idx] = red;
      out.push_back(std::move(red));
    }
    return out;
  }

  void check_terms(std::size_t transient) const {
    if (stored_terms_ + transient > limits_.max_terms) throw BudgetExceeded("Groebner term budget exceeded");
  }

  void check_size(const mpz_class& c) const {
    if (mpz_sizeinbase(c.get_mpz_t(), 2) > limits_.max_coefficient_bits)
      throw BudgetExceeded("Groebner coefficient size budget exceeded");
  }
  void check_size(std::uint64_t) const {}

  void shrink(std::vector<Term<D>>& done, std::vector<Term<D>>& cur) const;

  D dom_;
  Cmp cmp_;
  std::vector<unsigned> weights_;
  Limits limits_;
  std::vector<Poly<D>> basis_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
  std::size_t pairs_done_ = 0;
  bool use_sugar_ = true;
  std::size_t stored_terms_ = 0;
};

template <>
inline void Engine<IntegerDomain>::normalize(Poly<IntegerDomain>& p) const {
  if (p.terms.empty()) return;
  mpz_class g = 0;
  for (const auto& t : p.terms) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  if (p.terms.front().c < 0) g = -g;
  if (g != 1) {
    for (auto& t : p.terms) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
  }
}

template <>
inline void Engine<PrimeDomain>::normalize(Poly<PrimeDomain>& p) const {
  if (p.terms.empty()) return;
  auto inv = dom_.inv(p.terms.front().c);
  for (auto& t : p.terms) t.c = dom_.mul(t.c, inv);
}

template <>
inline void Engine<IntegerDomain>::shrink(std::vector<Term<IntegerDomain>>& done,
                                          std::vector<Term<IntegerDomain>>& cur) const {
  mpz_class g = 0;
  for (const auto* part : {&done, &cur}) {
    for (const auto& t : *part) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
      if (g == 1) return;
    }
  }
  if (g == 0) return;
  for (auto* part : {&done, &cur}) {
    for (auto& t : *part) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
  }
}

template <>
inline void Engine<PrimeDomain>::shrink(std::vector<Term<PrimeDomain>>&, std::vector<Term<PrimeDomain>>&) const {}

}  // namespace hankel::gb::detail
