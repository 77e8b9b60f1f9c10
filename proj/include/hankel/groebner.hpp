#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hankel/polynomial.hpp"

namespace hankel::gb {

inline constexpr const char* kEngineVersion = "hankel-gb/1";

/// Resource caps for one basis computation.
struct Budget {
  std::size_t max_pairs = 200000;
  std::size_t max_basis = 5000;
  std::size_t max_bytes = std::size_t{64} << 20;
};

/// Ideal with nonzero, deduplicated, normalized generators (order kept).
class Ideal {
 public:
  Ideal(Field field, std::size_t nvars) : field_(field), nvars_(nvars) {}
  Ideal(Field field, std::size_t nvars, const std::vector<Polynomial>& gens);
  static Ideal from(const std::vector<Polynomial>& gens);

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

  /// Generators of the sum / product.
  Ideal operator+(const Ideal& other) const;
  Ideal operator*(const Ideal& other) const;
  Ideal power(unsigned e) const;
  bool is_homogeneous() const;

 private:
  Field field_;
  std::size_t nvars_;
  std::vector<Polynomial> gens_;
};

/// Reduced Groebner basis, sorted by increasing leading monomial.
/// Over Q elements are integer-primitive with positive leading coefficient.
class GroebnerBasis {
 public:
  GroebnerBasis(Field field, std::size_t nvars, MonomialOrder order, std::vector<Polynomial> basis)
      : field_(field), nvars_(nvars), order_(order), basis_(std::move(basis)) {}

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Polynomial>& elements() const { return basis_; }
  std::size_t size() const { return basis_.size(); }
  /// Same basis with monic leading coefficients.
  std::vector<Polynomial> monic() const;
  std::vector<Monomial> leading_monomials() const;
  bool is_unit() const;

  /// Line 1: order descriptor; line 2: field; line 3: nvars; then one
  /// polynomial per line.
  std::string to_text() const;
  static GroebnerBasis from_text(const std::string& text);

 private:
  Field field_;
  std::size_t nvars_;
  MonomialOrder order_;
  std::vector<Polynomial> basis_;
};

/// Persistent store for reduced bases, keyed by cache_key().
class BasisCache {
 public:
  virtual ~BasisCache() = default;
  virtual std::optional<std::string> load(const std::string& key) = 0;
  virtual void store(const std::string& key, const std::string& text) = 0;
};

struct Options {
  Budget budget;
  /// Weighted degrees for pair selection (one per variable; empty = all 1).
  std::vector<unsigned> weights;
  /// Re-check every S-polynomial of the result.
  bool verify = false;
  /// Falls back to default_cache() when null.
  BasisCache* cache = nullptr;
};

/// Process-wide cache used when Options::cache is null. Not owned.
void set_default_cache(BasisCache* cache);
BasisCache* default_cache();

/// Counters for the current thread.
struct Stats {
  std::size_t bases_computed = 0;
  std::size_t cache_hits = 0;
  std::size_t pairs_reduced = 0;
};
Stats& thread_stats();

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// SHA-256 hex of canonical generators, order, field and engine version.
std::string cache_key(const Ideal& ideal, const MonomialOrder& order);

/// Reduced basis by Buchberger's algorithm with the Gebauer-Moeller criteria.
/// Throws BudgetExceeded.
GroebnerBasis groebner_basis(const Ideal& ideal, const MonomialOrder& order = MonomialOrder::degrevlex(),
                             const Options& options = {});

/// Exact remainder of p under division by G (over Q the true rational remainder).
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& g);
/// Every S-polynomial of g reduces to zero.
bool verify_basis(const GroebnerBasis& g);

bool ideal_membership(const Polynomial& p, const Ideal& ideal, const Options& options = {});
bool ideal_contains(const Ideal& big, const Ideal& small, const Options& options = {});
bool ideal_equal(const Ideal& a, const Ideal& b, const Options& options = {});

/// Krull dimension of R/I from the initial ideal; -1 for the unit ideal.
long dimension(const Ideal& ideal, const Options& options = {});
/// nvars - dimension (nvars + 1 for the unit ideal).
long codimension(const Ideal& ideal, const Options& options = {});
/// Largest S such that no monomial's support lies inside S.
long monomial_dimension(const std::vector<Monomial>& gens, std::size_t nvars);

/// Generators of I intersected with the subring free of `elim_vars`
/// (in the same ring; the eliminated variables no longer occur).
Ideal elimination(const Ideal& ideal, const std::vector<std::size_t>& elim_vars, const Options& options = {});
Ideal intersection(const Ideal& a, const Ideal& b, const Options& options = {});
/// (I : f) via intersection with (f) and exact division.
Ideal ideal_quotient(const Ideal& ideal, const Polynomial& f, const Options& options = {});
/// (I : x_{var+1}) for homogeneous I via a degrevlex basis with that variable last.
Ideal quotient_by_variable(const Ideal& ideal, std::size_t var, const Options& options = {});
/// x_{var+1} is a nonzerodivisor on R/I (homogeneous I).
bool is_regular_variable(const Ideal& ideal, std::size_t var, const Options& options = {});
/// p in sqrt(I) via 1 in I + (1 - y p).
bool radical_membership(const Polynomial& p, const Ideal& ideal, const Options& options = {});

/// Defining ideal of k[g_1..g_s] in k[t_1..t_s] by elimination; the images must
/// be homogeneous (t_i gets weight deg g_i).
Ideal kernel_of_algebra_map(const std::vector<Polynomial>& images, const Options& options = {});

/// Graded pieces of the same kernel by exact linear algebra.
struct GradedKernel {
  /// dims[d] = dim_k ker in degree d, d = 0..max_degree.
  std::vector<std::size_t> dims;
  /// minimal_generators[d] = number of minimal generators of degree d.
  std::vector<std::size_t> minimal_generators;
  /// basis[d] = a basis of the degree-d kernel.
  std::vector<std::vector<Polynomial>> basis;
  /// Minimal generators (a choice of complement), degree by degree.
  std::vector<Polynomial> generators;
};
GradedKernel graded_kernel(const std::vector<Polynomial>& images, unsigned max_degree);

struct SyzygyReport {
  std::size_t generator_count = 0;
  std::size_t syzygy_dimension = 0;
  std::size_t linear_rank = 0;
  /// Lower bound from one random evaluation of the syzygy matrix.
  std::size_t evaluated_rank = 0;
  /// syzygies[s][i] = linear form multiplying F_i.
  std::vector<std::vector<Polynomial>> syzygies;
};
/// Linear syzygies of forms of one common degree; rank over the fraction field.
SyzygyReport linear_syzygies(const std::vector<Polynomial>& forms, std::uint64_t seed = 1);

struct ReductionResult {
  bool contained = false;
  /// Smallest n <= nmax with J I^n = I^{n+1}.
  std::optional<unsigned> reduction_number;
  /// Per tested n: how the equality was decided.
  std::vector<std::string> notes;
};
ReductionResult reduction_check(const Ideal& j, const Ideal& i, unsigned nmax, const Options& options = {});

}  // namespace hankel::gb
