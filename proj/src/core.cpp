#include "rls/core.hpp"

#include <algorithm>

namespace rls {

ReversibleFunction::ReversibleFunction(int n, std::vector<Pattern> t)
    : width(n), table(std::move(t)) {
  if (n < 1 || n > kMaxWidth)
    throw std::invalid_argument("function width out of range");
  if (table.size() != (std::size_t{1} << n))
    throw std::invalid_argument("truth table length must be 2^width");
  std::vector<bool> seen(table.size(), false);
  for (Pattern v : table) {
    if (v >= table.size() || seen[v])
      throw std::invalid_argument("truth table is not a bijection");
    seen[v] = true;
  }
}

ReversibleFunction ReversibleFunction::identity(int n) {
  ReversibleFunction f;
  f.width = n;
  f.table.resize(std::size_t{1} << n);
  for (std::size_t i = 0; i < f.table.size(); ++i)
    f.table[i] = static_cast<Pattern>(i);
  return f;
}

bool ReversibleFunction::is_identity() const {
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] != i) return false;
  return true;
}

Network::Network(int n, std::vector<ToffoliGate> gs)
    : width(n), gates(std::move(gs)) {
  for (const auto& g : gates)
    if (!g.fits(n)) throw std::invalid_argument("gate does not fit network width");
}

void Network::push_back(const ToffoliGate& g) {
  if (!g.fits(width))
    throw std::invalid_argument("gate does not fit network width");
  gates.push_back(g);
}

ReversibleFunction network_function(const Network& net) {
  ReversibleFunction f = ReversibleFunction::identity(net.width);
  for (std::size_t i = 0; i < f.table.size(); ++i) {
    Pattern p = static_cast<Pattern>(i);
    for (const auto& g : net.gates) p = apply_gate_to_pattern(g, p);
    f.table[i] = p;
  }
  return f;
}

ReversibleFunction invert_function(const ReversibleFunction& f) {
  ReversibleFunction g;
  g.width = f.width;
  g.table.resize(f.table.size());
  for (std::size_t i = 0; i < f.table.size(); ++i)
    g.table[f.table[i]] = static_cast<Pattern>(i);
  return g;
}

Network reverse_network(const Network& net) {
  Network r(net.width);
  r.gates.assign(net.gates.rbegin(), net.gates.rend());
  return r;
}

namespace {

// Cost of a c-control gate when c-2 borrowed lines are available, per the
// cheaper of the two linear-cost multiple-control simulations.
long long linear_cost_many_aux(int c) {
  switch (c) {
    case 0: return 1;
    case 1: return 1;
    case 2: return 5;
    case 3: return 13;
    default: return 12LL * c - 22;
  }
}

}  // namespace

CostModel CostModel::quantum(int max_controls) {
  CostModel m;
  m.mode = Mode::Quantum;
  m.quantum_table.resize(max_controls + 1);
  m.extra_line_table.resize(max_controls + 1);
  for (int c = 0; c <= max_controls; ++c) {
    m.quantum_table[c] = linear_cost_many_aux(c);
    m.extra_line_table[c] = m.quantum_table[c];
  }
  return m;
}

long long CostModel::gate_cost(const ToffoliGate& g, bool starred) const {
  if (mode == Mode::GateCount) return 1;
  const auto& table = starred && !extra_line_table.empty() ? extra_line_table
                                                          : quantum_table;
  int c = g.control_count();
  if (c >= static_cast<int>(table.size()))
    throw std::runtime_error("cost table has no entry for " +
                             std::to_string(c) + " controls");
  return table[c];
}

std::strong_ordering cost_compare(const CostValue& a, const CostValue& b) {
  if (a.value != b.value) return a.value <=> b.value;
  return static_cast<int>(a.starred) <=> static_cast<int>(b.starred);
}

CostValue network_cost(const Network& net, const CostModel& model) {
  CostValue cv;
  for (const auto& g : net.gates)
    if (g.control_count() == net.width - 1) cv.starred = true;
  for (const auto& g : net.gates) cv.value += model.gate_cost(g, cv.starred);
  return cv;
}

std::string line_name(int index) {
  if (index < 0 || index >= kMaxWidth)
    throw std::invalid_argument("line index out of range");
  return std::string(1, static_cast<char>('a' + index));
}

int line_index_of_name(const std::string& name) {
  if (name.size() == 1 && name[0] >= 'a' && name[0] < 'a' + kMaxWidth)
    return name[0] - 'a';
  return -1;
}

}  // namespace rls
