#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "hankel/cache.hpp"
#include "hankel/errors.hpp"

namespace fs = std::filesystem;

namespace hankel {

namespace {

constexpr std::string_view kChecksumTag = "#sha256 ";

bool is_key(const std::string& name) {
  return name.size() == 64 && std::all_of(name.begin(), name.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

void write_atomic(const fs::path& target, const std::string& data) {
  static std::atomic<unsigned long> counter{0};
  std::ostringstream tmp_name;
  tmp_name << target.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
           << counter++;
  fs::path tmp = target.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << data;
    if (!out) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace

DiskCache::DiskCache(fs::path root) : dir_(std::move(root) / "gb") {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

fs::path DiskCache::default_root() {
  if (const char* env = std::getenv("HANKEL_CACHE_DIR"); env && *env) return env;
  return "cache";
}

fs::path DiskCache::path_for(const std::string& key) const { return dir_ / (key + ".txt"); }

std::optional<std::string> DiskCache::read_checked(const fs::path& p) const {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  std::string all = ss.str();
  auto pos = all.rfind(kChecksumTag);
  if (pos == std::string::npos) return std::nullopt;
  std::string body = all.substr(0, pos);
  std::string sum = all.substr(pos + kChecksumTag.size());
  while (!sum.empty() && (sum.back() == '\n' || sum.back() == '\r')) sum.pop_back();
  if (gb::sha256_hex(body) != sum) return std::nullopt;
  return body;
}

void DiskCache::evict(const std::string& key, const std::string& reason) {
  std::error_code ec;
  fs::remove(path_for(key), ec);
  std::lock_guard lock(mutex_);
  warnings_.push_back("evicted cache entry " + key + ": " + reason);
}

std::optional<std::string> DiskCache::load(const std::string& key) {
  fs::path p = path_for(key);
  {
    std::error_code ec;
    if (!fs::exists(p, ec)) return std::nullopt;
  }
  auto body = read_checked(p);
  if (!body) {
    evict(key, "checksum mismatch");
    return std::nullopt;
  }
  return body;
}

void DiskCache::store(const std::string& key, const std::string& text) {
  write_atomic(path_for(key), text + std::string(kChecksumTag) + gb::sha256_hex(text) + "\n");
}

std::vector<std::string> DiskCache::keys() const {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir_, ec)) {
    if (!e.is_regular_file() || e.path().extension() != ".txt") continue;
    auto stem = e.path().stem().string();
    if (is_key(stem)) out.push_back(stem);
  }
  std::sort(out.begin(), out.end());
  return out;
}

DiskCache::Stats DiskCache::stats() const {
  Stats s;
  for (const auto& k : keys()) {
    std::error_code ec;
    auto size = fs::file_size(path_for(k), ec);
    ++s.entries;
    if (!ec) s.bytes += size;
  }
  return s;
}

std::size_t DiskCache::clear() {
  std::size_t n = 0;
  for (const auto& k : keys()) {
    std::error_code ec;
    if (fs::remove(path_for(k), ec)) ++n;
  }
  return n;
}

DiskCache::VerifyReport DiskCache::verify(std::uint64_t seed, std::size_t sample) {
  VerifyReport rep;
  std::vector<std::pair<std::string, gb::GroebnerBasis>> good;
  for (const auto& k : keys()) {
    ++rep.entries;
    auto body = read_checked(path_for(k));
    if (!body) {
      evict(k, "checksum mismatch");
      rep.evicted.push_back(k);
      continue;
    }
    try {
      good.emplace_back(k, gb::GroebnerBasis::from_text(*body));
    } catch (const Error& e) {
      evict(k, std::string("unreadable basis: ") + e.what());
      rep.evicted.push_back(k);
    }
  }
  std::mt19937_64 rng(seed);
  std::shuffle(good.begin(), good.end(), rng);
  for (std::size_t i = 0; i < good.size() && i < sample; ++i) {
    rep.checked.push_back(good[i].first);
    if (!gb::verify_basis(good[i].second)) {
      evict(good[i].first, "S-polynomial check failed");
      rep.evicted.push_back(good[i].first);
    }
  }
  std::sort(rep.checked.begin(), rep.checked.end());
  return rep;
}

std::vector<std::string> DiskCache::take_warnings() {
  std::lock_guard lock(mutex_);
  return std::exchange(warnings_, {});
}

}  // namespace hankel
