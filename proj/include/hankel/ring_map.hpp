#pragma once

#include <vector>

#include "hankel/polynomial.hpp"

namespace hankel {

/// k-algebra map k[x_1..x_n] -> k[y_1..y_m] given by the images of the x_i.
class RingMap {
 public:
  RingMap(Field field, std::size_t target_nvars, std::vector<Polynomial> images);

  static RingMap identity(Field field, std::size_t nvars);
  /// x_{i+1} -> 0 for every i in `zeroed`, identity elsewhere (same ring).
  static RingMap coordinate_section(Field field, std::size_t nvars, const std::vector<std::size_t>& zeroed);

  std::size_t source_nvars() const { return images_.size(); }
  std::size_t target_nvars() const { return target_nvars_; }
  const std::vector<Polynomial>& images() const { return images_; }

  Polynomial apply(const Polynomial& p) const;

 private:
  Field field_;
  std::size_t target_nvars_;
  std::vector<Polynomial> images_;
};

}  // namespace hankel
