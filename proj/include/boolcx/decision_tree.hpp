#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "boolcx/boolean_function.hpp"

namespace boolcx {

// Binary query tree. Internal nodes hold a 0-based bit index; leaves hold an output value.
// Text form: "(i? zero : one)" with 1-based i, leaves "=0" and "=1".
class DecisionTree {
 public:
  struct Node {
    int bit = -1;
    bool value = false;
    int zero = -1;
    int one = -1;
    [[nodiscard]] bool is_leaf() const { return bit < 0; }
    friend bool operator==(const Node&, const Node&) = default;
  };

  // The single leaf =0.
  DecisionTree() { root_ = add_leaf(false); }
  static DecisionTree leaf(bool value);
  // A tree with no nodes, to be filled with add_leaf/add_query and set_root.
  static DecisionTree builder();
  static DecisionTree parse(std::string_view text);

  // Builder interface: children must be added before their parent.
  int add_leaf(bool value);
  int add_query(int bit, int zero, int one);
  void set_root(int index);

  [[nodiscard]] int root() const { return root_; }
  [[nodiscard]] const Node& node(int index) const { return nodes_.at(static_cast<std::size_t>(index)); }
  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }

  [[nodiscard]] bool evaluate(Input x) const;
  // Number of queries made on input x.
  [[nodiscard]] int cost_at(Input x) const;
  // Set of bits queried on input x.
  [[nodiscard]] Input queried_at(Input x) const;
  [[nodiscard]] int depth() const;
  [[nodiscard]] int max_bit() const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const DecisionTree& a, const DecisionTree& b);

 private:
  std::vector<Node> nodes_;
  int root_ = 0;
};

}  // namespace boolcx
