#include "hankel/ring_map.hpp"

#include <algorithm>
#include <map>

#include "hankel/errors.hpp"

namespace hankel {

RingMap::RingMap(Field field, std::size_t target_nvars, std::vector<Polynomial> images)
    : field_(field), target_nvars_(target_nvars), images_(std::move(images)) {
  for (const auto& img : images_) {
    if (img.field() != field_) throw FieldMismatch("ring map image over a different field");
    if (img.nvars() != target_nvars_) throw ArityMismatch("ring map image in the wrong ring");
  }
}

RingMap RingMap::identity(Field field, std::size_t nvars) {
  std::vector<Polynomial> images;
  images.reserve(nvars);
  for (std::size_t i = 0; i < nvars; ++i) images.push_back(Polynomial::variable(field, nvars, i));
  return RingMap(field, nvars, std::move(images));
}

RingMap RingMap::coordinate_section(Field field, std::size_t nvars, const std::vector<std::size_t>& zeroed) {
  RingMap map = identity(field, nvars);
  for (auto i : zeroed) {
    if (i >= nvars) throw IndexOutOfRange("zeroed variable out of range");
    map.images_[i] = Polynomial(field, nvars);
  }
  return map;
}

Polynomial RingMap::apply(const Polynomial& p) const {
  if (p.nvars() != images_.size()) throw ArityMismatch("ring map arity does not match polynomial");
  if (p.field() != field_) throw FieldMismatch("ring map over a different field");
  // powers[i][e] = images_[i]^e, built lazily.
  std::vector<std::vector<Polynomial>> powers(images_.size());
  auto power = [&](std::size_t i, std::uint16_t e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(field_, target_nvars_, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images_[i]);
    return cache[e];
  };
  std::vector<Term> collected;
  for (const auto& t : p.terms()) {
    Polynomial prod = Polynomial::constant(field_, target_nvars_, t.coefficient);
    for (std::size_t i = 0; i < images_.size() && !prod.is_zero(); ++i) {
      if (t.monomial[i] != 0) prod = prod * power(i, t.monomial[i]);
    }
    for (const auto& s : prod.terms()) collected.push_back(s);
  }
  return Polynomial::from_terms(field_, target_nvars_, std::move(collected));
}

}  // namespace hankel
