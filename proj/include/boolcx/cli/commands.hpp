#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boolcx/cli/config.hpp"
#include "boolcx/cli/function_spec.hpp"
#include "boolcx/cli/report.hpp"
#include "boolcx/rational.hpp"

namespace boolcx::cli {

// Measure keys in output order.
[[nodiscard]] const std::vector<std::string>& measure_keys();

struct MeasureRequest {
  std::string spec;
  std::optional<Rational> p;  // config default when empty
  std::vector<std::string> measures;
};

// One row per measure; measures whose engine cap is exceeded are reported as skipped.
// Throws CapExceeded when the function itself is over the truth-table cap.
[[nodiscard]] Report cmd_measure(const MeasureRequest& request, const Config& config = {},
                                 const ZooOverrides& overrides = {});

struct PartialInfoRequest {
  std::string spec;
  Rational p;
  std::vector<Rational> kappas;
  bool critical = false;
};

[[nodiscard]] Report cmd_partialinfo(const PartialInfoRequest& request, const Config& config = {},
                                     const ZooOverrides& overrides = {});

enum class PercMode { automatic, exact, monte_carlo };

struct PercRequest {
  std::optional<int> m;             // grid size
  std::optional<std::string> file;  // multigraph document instead of a grid
  std::string p = "1/2";            // exact text; converted to floating point for sampling
  std::vector<std::string> quantities{"crossing"};  // crossing, s, w (or b), explore
  std::uint64_t samples = 100000;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> shards;
  PercMode mode = PercMode::automatic;
};

// Exact enumeration is chosen automatically for the one-by-one grid.
[[nodiscard]] Report cmd_percolation(const PercRequest& request, const Config& config = {});

struct ReproduceOptions {
  ZooOverrides overrides;
  std::string filter;  // substring of row ids; empty runs every row
};

// Number of table rows that restate a published example; the table must contain exactly this many.
inline constexpr int kManifestRowCount = 54;

// Ids of the rows counted by the manifest, in table order.
[[nodiscard]] std::vector<std::string> manifest_row_ids();

// Expected against computed for every row; exit code 2 when any row fails.
[[nodiscard]] Report cmd_reproduce(const ReproduceOptions& options = {}, const Config& config = {});

enum class InvariantLevel { fast, full };

struct InvariantOptions {
  std::uint64_t seed = 1;
  InvariantLevel level = InvariantLevel::fast;
  std::vector<std::string> only;  // suite ids; empty runs every suite
  unsigned threads = 0;           // 0 picks the hardware concurrency
};

[[nodiscard]] std::vector<std::string> invariant_suite_ids();

// Status per suite is PASS, FAIL or FINDING (a counterexample to an open question, not a failure).
[[nodiscard]] Report cmd_invariants(const InvariantOptions& options = {}, const Config& config = {});

}  // namespace boolcx::cli
