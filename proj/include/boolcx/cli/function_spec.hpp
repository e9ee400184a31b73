#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolcx/boolean_function.hpp"
#include "boolcx/percolation.hpp"

namespace boolcx::cli {

// Replacement tables for named zoo functions, keyed by canonical spec text such as "MAJ(3)".
using ZooOverrides = std::map<std::string, BooleanFunction>;

// Function expressions:
//   NAME | NAME(int, ...)            zoo family, e.g. MAJ(3), TRIBES(2,2), G4
//   compose(F, G)                    block i of G's copies feeds input i of F
//   iter(F, k)                       F composed with itself k times
//   xor(F, PAR(k))                   F xor the parity of k fresh bits
//   tt:PATH                          truth-table file
//   perc:grid(m) | perc:file(PATH)   percolation function of a grid or a multigraph file
class FunctionSpec {
 public:
  static FunctionSpec parse(std::string_view text);

  // Arity from the expression alone; files are read only up to their headers.
  [[nodiscard]] std::int64_t arity() const;
  // Throws CapExceeded before building anything when the arity is above `cap`.
  [[nodiscard]] BooleanFunction build(int cap = kDefaultArityCap, const ZooOverrides& overrides = {}) const;
  // The multigraph behind a perc: expression.
  [[nodiscard]] std::optional<Multigraph> graph() const;
  [[nodiscard]] std::string to_string() const;

  struct Node;

 private:
  explicit FunctionSpec(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

// Multigraph document: {"vertices": n, "edges": [[u, v], ...], "A": [...], "B": [...]}.
[[nodiscard]] Multigraph parse_multigraph(std::string_view json_text);
[[nodiscard]] Multigraph read_multigraph(const std::string& path);
[[nodiscard]] std::string multigraph_to_json(const Multigraph& g);

}  // namespace boolcx::cli
