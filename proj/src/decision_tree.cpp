#include "boolcx/decision_tree.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace boolcx {

DecisionTree DecisionTree::builder() {
  DecisionTree t;
  t.nodes_.clear();
  t.root_ = -1;
  return t;
}

DecisionTree DecisionTree::leaf(bool value) {
  DecisionTree t = builder();
  t.set_root(t.add_leaf(value));
  return t;
}

int DecisionTree::add_leaf(bool value) {
  nodes_.push_back(Node{-1, value, -1, -1});
  return static_cast<int>(nodes_.size()) - 1;
}

int DecisionTree::add_query(int bit, int zero, int one) {
  const int count = static_cast<int>(nodes_.size());
  if (bit < 0 || bit >= kHardArityLimit) throw std::invalid_argument("query bit out of range");
  if (zero < 0 || zero >= count || one < 0 || one >= count) {
    throw std::invalid_argument("children must exist before their parent");
  }
  nodes_.push_back(Node{bit, false, zero, one});
  return count;
}

void DecisionTree::set_root(int index) {
  if (index < 0 || index >= static_cast<int>(nodes_.size())) throw std::invalid_argument("root out of range");
  root_ = index;
}

bool DecisionTree::evaluate(Input x) const {
  int at = root_;
  while (!node(at).is_leaf()) at = ((x >> node(at).bit) & 1U) ? node(at).one : node(at).zero;
  return node(at).value;
}

int DecisionTree::cost_at(Input x) const {
  int at = root_;
  int steps = 0;
  while (!node(at).is_leaf()) {
    at = ((x >> node(at).bit) & 1U) ? node(at).one : node(at).zero;
    ++steps;
  }
  return steps;
}

Input DecisionTree::queried_at(Input x) const {
  int at = root_;
  Input seen = 0;
  while (!node(at).is_leaf()) {
    seen |= Input{1} << node(at).bit;
    at = ((x >> node(at).bit) & 1U) ? node(at).one : node(at).zero;
  }
  return seen;
}

namespace {

int depth_from(const DecisionTree& t, int at) {
  const auto& n = t.node(at);
  if (n.is_leaf()) return 0;
  return 1 + std::max(depth_from(t, n.zero), depth_from(t, n.one));
}

void write(const DecisionTree& t, int at, std::string& out) {
  const auto& n = t.node(at);
  if (n.is_leaf()) {
    out += n.value ? "=1" : "=0";
    return;
  }
  out += "(" + std::to_string(n.bit + 1) + "? ";
  write(t, n.zero, out);
  out += " : ";
  write(t, n.one, out);
  out += ")";
}

bool same_shape(const DecisionTree& a, int ia, const DecisionTree& b, int ib) {
  const auto& x = a.node(ia);
  const auto& y = b.node(ib);
  if (x.is_leaf() || y.is_leaf()) return x.is_leaf() && y.is_leaf() && x.value == y.value;
  return x.bit == y.bit && same_shape(a, x.zero, b, y.zero) && same_shape(a, x.one, b, y.one);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  DecisionTree run() {
    DecisionTree t = DecisionTree::builder();
    t.set_root(parse_node(t));
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return t;
  }

 private:
  int parse_node(DecisionTree& t) {
    skip_space();
    if (consume('=')) {
      if (consume('0')) return t.add_leaf(false);
      if (consume('1')) return t.add_leaf(true);
      fail("leaf must be =0 or =1");
    }
    expect('(');
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 3) fail("expected a bit index");
    const int bit = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (bit < 1) fail("bit indices start at 1");
    skip_space();
    expect('?');
    const int zero = parse_node(t);
    skip_space();
    expect(':');
    const int one = parse_node(t);
    skip_space();
    expect(')');
    return t.add_query(bit - 1, zero, one);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("decision tree parse error at offset " + std::to_string(pos_) + ": " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

DecisionTree DecisionTree::parse(std::string_view text) { return Parser(text).run(); }

int DecisionTree::depth() const { return depth_from(*this, root_); }

int DecisionTree::max_bit() const {
  int top = -1;
  for (const auto& n : nodes_) top = std::max(top, n.bit);
  return top;
}

std::string DecisionTree::to_string() const {
  std::string out;
  write(*this, root_, out);
  return out;
}

bool operator==(const DecisionTree& a, const DecisionTree& b) { return same_shape(a, a.root_, b, b.root_); }

}  // namespace boolcx
