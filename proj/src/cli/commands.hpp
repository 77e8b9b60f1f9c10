#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hankel/field.hpp"
#include "hankel/groebner.hpp"
#include "hankel/verdict.hpp"
#include "json.hpp"

namespace hankel::cli {

struct Cell {
  std::size_t m = 0;
  std::optional<std::size_t> r;
  std::optional<std::size_t> t;
};

struct Context {
  Field field = Field::rationals();
  std::string order = "degrevlex";
  std::uint64_t seed = 1;
  gb::Options options;
  bool stretch = false;
  unsigned nmax = 3;
};

struct Outcome {
  Verdict verdict = Verdict::Fail;
  /// Short value for tables.
  std::string value;
  nlohmann::json witness;
};

struct Command {
  std::string name;
  std::string help;
  bool uses_r = false;
  bool uses_t = false;
  /// Default r values for a sweep at this m.
  std::function<std::vector<std::size_t>(std::size_t m)> default_r;
  std::function<Outcome(const Cell&, const Context&)> run;
};

const std::vector<Command>& commands();
const Command* find_command(const std::string& name);

}  // namespace hankel::cli
