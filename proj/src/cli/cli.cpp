#include "hankel/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "commands.hpp"
#include "hankel/cache.hpp"
#include "hankel/errors.hpp"

namespace fs = std::filesystem;

namespace hankel::cli {

namespace {

using nlohmann::json;

struct Flags {
  std::string m, r, t;
  std::string field = "q";
  std::string order = "degrevlex";
  std::uint64_t seed = 1;
  std::size_t budget_pairs = 0;
  unsigned jobs = 0;
  std::string out = "results";
  std::string cache;
  bool no_cache = false;
  std::string format;
  bool stretch = false;
  bool stable = false;
  unsigned nmax = 3;
  std::string sweep_command;
  std::string cache_action;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t parse_index(const std::string& flag, const std::string& text) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &pos);
  } catch (const std::exception&) {
    throw UsageError(flag + " expects a non-negative integer, got '" + text + "'");
  }
  if (pos != text.size() || text.front() == '-') throw UsageError(flag + " expects a non-negative integer, got '" + text + "'");
  return v;
}

std::optional<std::size_t> parse_optional(const std::string& flag, const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_index(flag, text);
}

/// "a:b" (inclusive, empty when a > b) or "a".
std::vector<std::size_t> parse_range(const std::string& flag, const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) return {parse_index(flag, text)};
  auto lo = parse_index(flag, text.substr(0, colon));
  auto hi = parse_index(flag, text.substr(colon + 1));
  std::vector<std::size_t> out;
  for (auto v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

Context make_context(const Flags& f) {
  Context ctx;
  try {
    ctx.field = Field::parse(f.field);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  if (f.order != "degrevlex" && f.order != "lex") throw UsageError("--order must be degrevlex or lex");
  ctx.order = f.order;
  ctx.seed = f.seed;
  if (f.budget_pairs > 0) ctx.options.budget.max_pairs = f.budget_pairs;
  ctx.stretch = f.stretch;
  ctx.nmax = f.nmax;
  return ctx;
}

json opt_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

json params_json(const Command& cmd, const Cell& cell, const Context& ctx, const Flags& f) {
  json p = {{"m", cell.m}, {"r", opt_json(cell.r)}, {"t", opt_json(cell.t)}, {"field", ctx.field.name()},
            {"order", ctx.order}, {"budget_pairs", f.budget_pairs}};
  if (cmd.name == "fiber-kernel") p["stretch"] = ctx.stretch;
  if (cmd.name == "reduction-check") p["nmax"] = ctx.nmax;
  return p;
}

struct CellResult {
  Outcome outcome;
  long long timing_ms = 0;
  std::size_t cache_hits = 0;
  bool invalid = false;
  std::string error;
};

CellResult execute(const Command& cmd, const Cell& cell, const Context& ctx, bool stable) {
  CellResult res;
  const auto hits_before = gb::thread_stats().cache_hits;
  const auto start = std::chrono::steady_clock::now();
  try {
    res.outcome = cmd.run(cell, ctx);
  } catch (const BudgetExceeded& e) {
    res.outcome.verdict = Verdict::BudgetExceeded;
    res.outcome.value = "budget";
    res.outcome.witness = {{"budget", e.what()}};
  } catch (const ParameterError& e) {
    res.invalid = true;
    res.error = e.what();
  } catch (const IndexOutOfRange& e) {
    res.invalid = true;
    res.error = e.what();
  } catch (const Error& e) {
    res.outcome.verdict = Verdict::Fail;
    res.outcome.value = "error";
    res.outcome.witness = {{"error", e.what()}};
  }
  if (!stable) {
    res.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    res.cache_hits = gb::thread_stats().cache_hits - hits_before;
  }
  return res;
}

json report_json(const Command& cmd, const Cell& cell, const Context& ctx, const Flags& f, const CellResult& res) {
  return {{"schema", kReportSchema},
          {"command", cmd.name},
          {"params", params_json(cmd, cell, ctx, f)},
          {"seed", ctx.seed},
          {"verdict", to_string(res.outcome.verdict)},
          {"witness", res.outcome.witness},
          {"timing_ms", res.timing_ms},
          {"engine_version", gb::kEngineVersion},
          {"cache_hits", res.cache_hits}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

const char* kCsvHeader = "command,m,r,t,field,verdict,value,timing_ms,cache_hits";

std::string csv_row(const Command& cmd, const Cell& cell, const Context& ctx, const CellResult& res) {
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); };
  std::string verdict = res.invalid ? "invalid" : to_string(res.outcome.verdict);
  std::string value = res.invalid ? res.error : res.outcome.value;
  return cmd.name + "," + std::to_string(cell.m) + "," + opt(cell.r) + "," + opt(cell.t) + "," + ctx.field.name() + "," +
         verdict + "," + csv_field(value) + "," + std::to_string(res.timing_ms) + "," + std::to_string(res.cache_hits);
}

void write_file_atomic(const fs::path& target, const std::string& data) {
  fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << data;
  }
  fs::rename(tmp, target);
}

std::string params_hash(const json& material) { return gb::sha256_hex(material.dump()).substr(0, 16); }

/// Installs the disk cache as the process default for the lifetime of the object.
class CacheScope {
 public:
  CacheScope(const Flags& f, std::ostream& err) : err_(err) {
    if (f.no_cache) return;
    cache_ = std::make_unique<DiskCache>(f.cache.empty() ? DiskCache::default_root() : fs::path(f.cache));
    gb::set_default_cache(cache_.get());
  }
  ~CacheScope() {
    if (!cache_) return;
    gb::set_default_cache(nullptr);
    flush_warnings();
  }
  void flush_warnings() {
    if (!cache_) return;
    for (const auto& w : cache_->take_warnings()) err_ << "warning: " << w << "\n";
  }
  DiskCache* get() { return cache_.get(); }

 private:
  std::ostream& err_;
  std::unique_ptr<DiskCache> cache_;
};

int run_single(const Command& cmd, const Flags& f, std::ostream& out, std::ostream& err) {
  if (f.m.empty()) throw UsageError(cmd.name + " needs --m");
  Cell cell;
  cell.m = parse_index("--m", f.m);
  cell.r = parse_optional("--r", f.r);
  cell.t = parse_optional("--t", f.t);
  if (cmd.uses_r && !cell.r) cell.r = 0;
  if (!cmd.uses_r && cell.r) throw UsageError(cmd.name + " does not take --r");
  if (!cmd.uses_t && cell.t) throw UsageError(cmd.name + " does not take --t");
  auto ctx = make_context(f);
  if (!f.format.empty() && f.format != "json" && f.format != "csv") throw UsageError("--format must be json or csv");

  CacheScope cache(f, err);
  auto res = execute(cmd, cell, ctx, f.stable);
  if (res.invalid) throw UsageError(res.error);
  auto report = report_json(cmd, cell, ctx, f, res);
  json material = {{"params", report["params"]}, {"seed", ctx.seed}};
  write_file_atomic(fs::path(f.out) / cmd.name / (params_hash(material) + ".json"), report.dump(2) + "\n");
  if (f.format == "csv") {
    out << kCsvHeader << "\n" << csv_row(cmd, cell, ctx, res) << "\n";
  } else {
    out << report.dump(2) << "\n";
  }
  return exit_code(res.outcome.verdict);
}

int run_sweep(const Flags& f, std::ostream& out, std::ostream& err) {
  const Command* cmd = find_command(f.sweep_command);
  if (!cmd) throw UsageError("unknown sweep command '" + f.sweep_command + "'");
  if (f.m.empty()) throw UsageError("sweep needs --m");
  if (!f.format.empty() && f.format != "json" && f.format != "csv") throw UsageError("--format must be json or csv");
  if (!cmd->uses_r && !f.r.empty()) throw UsageError(cmd->name + " does not take --r");
  if (!cmd->uses_t && !f.t.empty()) throw UsageError(cmd->name + " does not take --t");
  auto ctx = make_context(f);
  auto ms = parse_range("--m", f.m);
  std::optional<std::vector<std::size_t>> rs, ts;
  if (!f.r.empty()) rs = parse_range("--r", f.r);
  if (!f.t.empty()) ts = parse_range("--t", f.t);

  std::vector<Cell> cells;
  for (auto m : ms) {
    std::vector<std::optional<std::size_t>> rv{std::nullopt};
    if (cmd->uses_r) {
      rv.clear();
      for (auto r : rs ? *rs : cmd->default_r(m)) rv.push_back(r);
    }
    std::vector<std::optional<std::size_t>> tv{std::nullopt};
    if (ts) {
      tv.clear();
      for (auto t : *ts) tv.push_back(t);
    } else if (cmd->name == "codim-minors") {
      tv.clear();
      for (std::size_t t = 1; t <= m; ++t) tv.push_back(t);
    }
    for (const auto& r : rv) {
      for (const auto& t : tv) cells.push_back(Cell{m, r, t});
    }
  }

  CacheScope cache(f, err);
  const bool csv = f.format != "json";
  json material = {{"command", cmd->name}, {"m", f.m}, {"r", f.r}, {"t", f.t}, {"field", ctx.field.name()},
                   {"order", ctx.order}, {"seed", ctx.seed}, {"budget_pairs", f.budget_pairs}};
  fs::path csv_path = fs::path(f.out) / "sweep" / (cmd->name + "-" + params_hash(material) + ".csv");
  fs::create_directories(csv_path.parent_path());
  std::ofstream table(csv_path, std::ios::trunc);
  table << kCsvHeader << "\n" << std::flush;
  if (csv) out << kCsvHeader << "\n" << std::flush;

  std::vector<std::optional<CellResult>> results(cells.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  unsigned jobs = f.jobs ? f.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(cells.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs && !cells.empty(); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) {
        auto res = execute(*cmd, cells[i], ctx, f.stable);
        std::lock_guard lock(mu);
        results[i] = std::move(res);
        cv.notify_all();
      }
    });
  }

  bool any_fail = false, any_invalid = false, any_budget = false;
  json rows = json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CellResult res;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return results[i].has_value(); });
      res = *results[i];
    }
    auto row = csv_row(*cmd, cells[i], ctx, res);
    table << row << "\n" << std::flush;
    if (csv) out << row << "\n" << std::flush;
    if (res.invalid) {
      any_invalid = true;
      rows.push_back({{"params", params_json(*cmd, cells[i], ctx, f)}, {"verdict", "invalid"}, {"error", res.error}});
    } else {
      auto v = res.outcome.verdict;
      any_fail = any_fail || v == Verdict::Fail || v == Verdict::Counterexample;
      any_budget = any_budget || v == Verdict::BudgetExceeded;
      rows.push_back(report_json(*cmd, cells[i], ctx, f, res));
    }
    cache.flush_warnings();
  }
  for (auto& t : pool) t.join();
  if (!csv) out << rows.dump(2) << "\n";
  if (any_fail) return 1;
  if (any_invalid) return 3;
  if (any_budget) return 2;
  return 0;
}

int run_cache(const Flags& f, std::ostream& out, std::ostream& err) {
  if (f.no_cache) throw UsageError("cache needs a cache directory");
  CacheScope scope(f, err);
  DiskCache& cache = *scope.get();
  json j = {{"dir", cache.dir().string()}, {"action", f.cache_action}};
  if (f.cache_action == "stats") {
    auto s = cache.stats();
    j["entries"] = s.entries;
    j["bytes"] = s.bytes;
  } else if (f.cache_action == "clear") {
    j["removed"] = cache.clear();
  } else {
    auto v = cache.verify(f.seed);
    j["entries"] = v.entries;
    j["checked"] = v.checked;
    j["evicted"] = v.evicted;
  }
  out << j.dump(2) << "\n";
  return 0;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--m", f.m, "matrix size (sweep: a:b)");
  sub->add_option("--r", f.r, "number of zeroed anti-diagonals (sweep: a:b)");
  sub->add_option("--t", f.t, "minor size (sweep: a:b)");
  sub->add_option("--field", f.field, "q or f<p>");
  sub->add_option("--order", f.order, "degrevlex or lex");
  sub->add_option("--seed", f.seed, "seed for random points");
  sub->add_option("--budget-pairs", f.budget_pairs, "cap on pair reductions per basis");
  sub->add_option("--jobs", f.jobs, "sweep workers (default: cores)");
  sub->add_option("--out", f.out, "results directory");
  sub->add_option("--cache", f.cache, "cache root (default: $HANKEL_CACHE_DIR or ./cache)");
  sub->add_flag("--no-cache", f.no_cache, "do not read or write the basis cache");
  sub->add_option("--format", f.format, "json or csv");
  sub->add_flag("--stretch", f.stretch, "allow the m = 4 fiber kernels");
  sub->add_flag("--stable", f.stable, "zero timing_ms and cache_hits");
  sub->add_option("--nmax", f.nmax, "largest n for reduction-check");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Experiments on Hankel determinants, their gradients and minors", "hankel"};
  app.require_subcommand(1, 1);
  Flags f;
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands()) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, f);
    subs.emplace_back(sub, &c);
  }
  auto* sweep = app.add_subcommand("sweep", "run a command over ranges of parameters");
  sweep->add_option("command", f.sweep_command, "command to sweep")->required();
  add_common(sweep, f);
  auto* cache = app.add_subcommand("cache", "inspect the Groebner basis cache");
  cache->add_option("action", f.cache_action, "stats, clear or verify")
      ->required()
      ->check(CLI::IsMember({"stats", "clear", "verify"}));
  cache->add_option("--cache", f.cache, "cache root");
  cache->add_option("--seed", f.seed, "seed for picking entries to verify");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 3;
  }
  try {
    if (sweep->parsed()) return run_sweep(f, out, err);
    if (cache->parsed()) return run_cache(f, out, err);
    for (const auto& [sub, c] : subs) {
      if (sub->parsed()) return run_single(*c, f, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << app.help();
  return 3;
}

}  // namespace hankel::cli
