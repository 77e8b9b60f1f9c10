#include <algorithm>

#include "hankel/errors.hpp"
#include "hankel/symmatrix.hpp"

namespace hankel {

GpReport gruson_peskine_check(std::size_t s, std::size_t t, std::size_t n, std::size_t r, Field field,
                              const gb::Options& options) {
  if (t == 0 || t > s) throw ParameterError("gp check needs 1 <= t <= s");
  if (s > n || n - s + 1 < s) throw ParameterError("gp check needs s <= n-s+1");
  if (r >= n - s + 1) throw ParameterError("too many zeros for H_{s,n-s+1}");
  auto big = hankel_matrix({s, n - s + 1, r}, field);
  auto small = hankel_matrix({t, n - t + 1, r}, field);
  GpReport rep{s, t, n, r};
  gb::Ideal a(field, big.nvars(), minor_values(big, t));
  gb::Ideal b(field, small.nvars(), minor_values(small, t));
  rep.generators_s = a.generators().size();
  rep.generators_t = b.generators().size();
  rep.equal = s == t || gb::ideal_equal(a, b, options);
  return rep;
}

MinorsCodimReport minors_codim(std::size_t m, std::size_t t, std::size_t r, const gb::Options& options) {
  if (t == 0 || t > m) throw ParameterError("minors codim needs 1 <= t <= m");
  if (r + 2 > m) throw ParameterError("minors codim needs r <= m-2");
  auto h = hankel_square(m, r);
  MinorsCodimReport rep{m, t, r};
  rep.codim = gb::codimension(gb::Ideal::from(minor_values(h, t)), options);
  rep.expected = static_cast<long>(std::min(2 * (m - t) + 1, 2 * m - t - r));
  return rep;
}

}  // namespace hankel
