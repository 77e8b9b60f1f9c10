#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hankel/groebner.hpp"

namespace hankel {

/// Groebner bases on disk as <root>/gb/<key>.txt: the basis text followed by a
/// "#sha256 <hex>" line over that text. Safe to share between threads.
class DiskCache : public gb::BasisCache {
 public:
  explicit DiskCache(std::filesystem::path root);

  /// HANKEL_CACHE_DIR if set, else "cache".
  static std::filesystem::path default_root();

  /// A corrupted entry is evicted with a warning and reported as a miss.
  std::optional<std::string> load(const std::string& key) override;
  /// Write-temp-then-rename.
  void store(const std::string& key, const std::string& text) override;

  struct Stats {
    std::size_t entries = 0;
    std::uintmax_t bytes = 0;
  };
  Stats stats() const;
  /// Number of entries removed.
  std::size_t clear();

  struct VerifyReport {
    std::size_t entries = 0;
    /// Keys whose S-polynomials were re-reduced.
    std::vector<std::string> checked;
    std::vector<std::string> evicted;
  };
  /// Checksums and parses every entry, then re-reduces the S-polynomials of
  /// `sample` entries picked with `seed`. Bad entries are evicted.
  VerifyReport verify(std::uint64_t seed = 1, std::size_t sample = 3);

  std::vector<std::string> take_warnings();
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path path_for(const std::string& key) const;
  std::optional<std::string> read_checked(const std::filesystem::path& p) const;
  void evict(const std::string& key, const std::string& reason);
  std::vector<std::string> keys() const;

  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  std::vector<std::string> warnings_;
};

}  // namespace hankel
