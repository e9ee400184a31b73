#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "boolcx/rational.hpp"

namespace boolcx::cli {

// Arity limits per engine.
struct EngineCaps {
  int truth_table = 24;
  int pointwise = 16;
  int dtree = 16;
  int subcube = 6;
  int localwit = 5;
  int partialinfo = 10;

  void set_all(int cap);
};

// Defaults shared by the commands. A config file is a JSON object with any of the keys
//   {"p": "1/2", "seed": 1, "shards": 1, "caps": {"truth_table": 24, "subcube": 6, ...}}
// and command-line flags override whatever it sets.
struct Config {
  EngineCaps caps;
  Rational p{1, 2};
  std::uint64_t seed = 1;
  unsigned shards = 1;

  static Config parse(std::string_view json_text);
  static Config load(const std::string& path);
};

}  // namespace boolcx::cli
