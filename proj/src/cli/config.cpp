#include "boolcx/cli/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "boolcx/cli/report.hpp"

namespace boolcx::cli {

void EngineCaps::set_all(int cap) {
  if (cap < 0) throw UsageError("cap must be nonnegative");
  truth_table = pointwise = dtree = subcube = localwit = partialinfo = cap;
}

Config Config::parse(std::string_view json_text) {
  const auto doc = nlohmann::json::parse(json_text);
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  Config c;
  for (const auto& [key, value] : doc.items()) {
    if (key == "p") {
      c.p = parse_exact(value.is_string() ? value.get<std::string>() : value.dump());
    } else if (key == "seed") {
      c.seed = value.get<std::uint64_t>();
    } else if (key == "shards") {
      c.shards = value.get<unsigned>();
    } else if (key == "caps") {
      for (const auto& [engine, cap] : value.items()) {
        const int v = cap.get<int>();
        if (engine == "truth_table") c.caps.truth_table = v;
        else if (engine == "pointwise") c.caps.pointwise = v;
        else if (engine == "dtree") c.caps.dtree = v;
        else if (engine == "subcube") c.caps.subcube = v;
        else if (engine == "localwit") c.caps.localwit = v;
        else if (engine == "partialinfo") c.caps.partialinfo = v;
        else throw UsageError("unknown cap '" + engine + "' in config");
      }
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

}  // namespace boolcx::cli
