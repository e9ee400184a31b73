#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

#include <json.hpp>

#include "boolcx/cli/config.hpp"

namespace boolcx::cli::detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

inline nlohmann::ordered_json caps_json(const EngineCaps& caps) {
  return {{"truth_table", caps.truth_table}, {"pointwise", caps.pointwise}, {"dtree", caps.dtree},
          {"subcube", caps.subcube},         {"localwit", caps.localwit},   {"partialinfo", caps.partialinfo}};
}

// Runs task(i) for every i < count on up to `threads` workers (0 means hardware concurrency).
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) task(i);
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
}

}  // namespace boolcx::cli::detail
