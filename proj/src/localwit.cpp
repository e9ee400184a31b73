#include "boolcx/localwit.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "boolcx/errors.hpp"
#include "boolcx/subcube_table.hpp"

namespace boolcx {

namespace {

// Probability of the bits of x outside `fixed` under the product measure.
Rational complement_mass(const Rational& p, int n, Input fixed, Input x) {
  const Input free = full_mask(n) & ~fixed;
  const int ones = weight(x & free);
  const int zeros = weight(free) - ones;
  return pow(p, static_cast<unsigned>(ones)) * pow(Rational(1) - p, static_cast<unsigned>(zeros));
}

}  // namespace

LocalWitnessProgram build_program(const BooleanFunction& f, const ProductMeasure& m, const LocalWitnessLimits& limits) {
  const int n = f.arity();
  if (n > limits.max_arity) throw CapExceeded("local witness program arity", n, limits.max_arity);
  const SubcubeTable table(f, limits.max_arity);
  LocalWitnessProgram prog;
  prog.arity = n;
  prog.p = m.p();
  prog.point_columns.assign(f.size(), -1);

  // Decode every code once; keep the constant cells.
  for (std::uint32_t code = 0; code < table.size(); ++code) {
    if (!table.constant(code)) continue;
    SubcubePattern cell{n, 0, 0};
    std::uint32_t rest = code;
    for (int i = 0; i < n; ++i) {
      const std::uint32_t digit = rest % 3;
      rest /= 3;
      if (digit == 2) continue;
      cell.fixed |= Input{1} << i;
      if (digit == 1) cell.values |= Input{1} << i;
    }
    if (cell.fixed == full_mask(n)) prog.point_columns[cell.values] = static_cast<int>(prog.variables.size());
    prog.variables.push_back(cell);
  }

  const std::size_t columns = prog.variables.size();
  prog.lp.rows.assign(f.size(), std::vector<Rational>(columns, Rational(0)));
  prog.lp.rhs.resize(f.size());
  prog.lp.cost.resize(columns);
  for (Input y = 0; y < f.size(); ++y) prog.lp.rhs[y] = point_probability(m, y, n);
  for (std::size_t j = 0; j < columns; ++j) {
    const auto& cell = prog.variables[j];
    prog.lp.cost[j] = Rational(cell.codimension());
    for (Input y = 0; y < f.size(); ++y) {
      if (cell.contains(y)) prog.lp.rows[y][j] = complement_mass(m.p(), n, cell.fixed, y);
    }
  }
  return prog;
}

LpSolution solve(const LocalWitnessProgram& program) {
  return solve_from_basis(program.lp, program.point_columns);
}

Rational local_witness_complexity(const BooleanFunction& f, const ProductMeasure& m, const LocalWitnessLimits& limits) {
  if (f.arity() > limits.max_arity) throw CapExceeded("local witness program arity", f.arity(), limits.max_arity);
  if (f.is_constant()) return Rational(0);
  // A point mass: the empty set already determines f almost surely.
  if (m.degenerate()) return Rational(0);
  return solve(build_program(f, m, limits)).value;
}

std::string dump_program(const LocalWitnessProgram& program) {
  std::ostringstream out;
  out << "# minimize sum of |J| t(J,z) over f-constant cells, subject to one equality per input\n";
  out << "arity " << program.arity << "\n";
  out << "p " << program.p << "\n";
  out << "variables " << program.variables.size() << "\n";
  for (std::size_t j = 0; j < program.variables.size(); ++j) {
    out << "t" << j << " " << program.variables[j].to_string() << " cost " << program.lp.cost[j] << "\n";
  }
  out << "constraints " << program.lp.row_count() << "\n";
  for (std::size_t i = 0; i < program.lp.row_count(); ++i) {
    out << SubcubePattern{program.arity, full_mask(program.arity), static_cast<Input>(i)}.to_string() << ":";
    for (std::size_t j = 0; j < program.lp.column_count(); ++j) {
      if (program.lp.rows[i][j] != 0) out << " + " << program.lp.rows[i][j] << " t" << j;
    }
    out << " = " << program.lp.rhs[i] << "\n";
  }
  out << "objective:";
  for (std::size_t j = 0; j < program.lp.column_count(); ++j) {
    if (program.lp.cost[j] != 0) out << " + " << program.lp.cost[j] << " t" << j;
  }
  out << "\n";
  return out.str();
}

RandomWitnessSet RandomWitnessSet::parse(std::string_view text) {
  RandomWitnessSet s;
  s.arity = -1;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  const auto fail = [&](const std::string& why) {
    throw std::invalid_argument("witness set line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string head;
    if (!(words >> head)) continue;
    if (head.rfind("n=", 0) == 0) {
      s.arity = std::stoi(head.substr(2));
      if (s.arity < 0 || s.arity > kHardArityLimit) fail("bad arity");
      continue;
    }
    if (s.arity < 0) fail("the first line must be n=<arity>");
    if (head == "component") {
      std::string weight;
      if (!(words >> weight)) fail("component needs a weight");
      s.components.push_back({Rational::parse(weight), {}});
      continue;
    }
    if (s.components.empty()) fail("rule before any component");
    const auto colon = line.find(':');
    if (colon == std::string::npos) fail("rule must look like 'pattern : bits'");
    Rule rule;
    rule.when = SubcubePattern::parse(line.substr(0, colon));
    if (rule.when.arity != s.arity) fail("pattern length differs from the arity");
    std::istringstream bits(line.substr(colon + 1));
    int b = 0;
    while (bits >> b) {
      if (b < 1 || b > s.arity) fail("bit index out of range");
      rule.bits |= Input{1} << (b - 1);
    }
    s.components.back().rules.push_back(rule);
  }
  if (s.arity < 0) throw std::invalid_argument("witness set has no arity line");
  return s;
}

RandomWitnessSet RandomWitnessSet::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open witness set file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

Input RandomWitnessSet::set_at(std::size_t component, Input x) const {
  const Rule* match = nullptr;
  for (const auto& rule : components.at(component).rules) {
    if (!rule.when.contains(x)) continue;
    if (match != nullptr) throw std::invalid_argument("two rules match input " + std::to_string(x));
    match = &rule;
  }
  if (match == nullptr) throw std::invalid_argument("no rule matches input " + std::to_string(x));
  return match->bits;
}

bool is_well_formed(const RandomWitnessSet& s) {
  Rational total = 0;
  for (std::size_t c = 0; c < s.components.size(); ++c) {
    if (s.components[c].weight < 0) return false;
    total += s.components[c].weight;
    for (Input x = 0; x < (Input{1} << s.arity); ++x) {
      int matches = 0;
      for (const auto& rule : s.components[c].rules) matches += rule.when.contains(x) ? 1 : 0;
      if (matches != 1) return false;
    }
  }
  return total == 1;
}

bool is_witness_set(const RandomWitnessSet& s, const BooleanFunction& f) {
  if (f.arity() != s.arity) throw std::invalid_argument("witness set arity differs from the function arity");
  for (std::size_t c = 0; c < s.components.size(); ++c) {
    for (Input x = 0; x < f.size(); ++x) {
      const Input fixed = s.set_at(c, x);
      for (Input y = 0; y < f.size(); ++y) {
        if (((x ^ y) & fixed) == 0 && f(y) != f(x)) return false;
      }
    }
  }
  return true;
}

bool is_local(const RandomWitnessSet& s, const ProductMeasure& m) {
  const int n = s.arity;
  const Input size = Input{1} << n;
  // q[J][x] = P[I = J, input = x]
  std::map<Input, std::vector<Rational>> joint;
  for (Input x = 0; x < size; ++x) {
    const Rational px = point_probability(m, x, n);
    for (std::size_t c = 0; c < s.components.size(); ++c) {
      auto& row = joint.try_emplace(s.set_at(c, x), std::vector<Rational>(size, Rational(0))).first->second;
      row[x] += s.components[c].weight * px;
    }
  }
  for (const auto& [fixed, q] : joint) {
    std::map<Input, Rational> marginal;  // t(J, z) keyed by z
    for (Input x = 0; x < size; ++x) marginal[x & fixed] += q[x];
    for (Input x = 0; x < size; ++x) {
      if (q[x] != marginal[x & fixed] * complement_mass(m.p(), n, fixed, x)) return false;
    }
  }
  return true;
}

Rational expected_size(const RandomWitnessSet& s, const ProductMeasure& m) {
  Rational total = 0;
  for (Input x = 0; x < (Input{1} << s.arity); ++x) {
    const Rational px = point_probability(m, x, s.arity);
    for (std::size_t c = 0; c < s.components.size(); ++c) {
      total += s.components[c].weight * px * Rational(weight(s.set_at(c, x)));
    }
  }
  return total;
}

}  // namespace boolcx
