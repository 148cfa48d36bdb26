#ifndef RLS_CORE_HPP
#define RLS_CORE_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Gate, network and function value types for reversible Toffoli cascades.
// Lines are indexed 0..n-1 and rendered as letters a,b,c,... with line 0
// the least significant bit of a pattern.

namespace rls {

inline constexpr int kDefaultWidthCap = 16;
inline constexpr int kMaxWidth = 21;

using Pattern = std::uint32_t;

// Multiple-control Toffoli gate TOF(C;t): flips bit `target` of a pattern
// iff all bits in `controls` are set. NOT and CNOT are the 0- and
// 1-control cases.
struct ToffoliGate {
  Pattern controls = 0;
  int target = 0;

  ToffoliGate() = default;
  ToffoliGate(Pattern c, int t) : controls(c), target(t) {
    if (c & (Pattern{1} << t))
      throw std::invalid_argument("gate target cannot also be a control");
  }

  int control_count() const { return std::popcount(controls); }
  bool fits(int width) const {
    Pattern all = width >= 32 ? ~Pattern{0} : ((Pattern{1} << width) - 1);
    return target < width && (controls & ~all) == 0;
  }

  friend bool operator==(const ToffoliGate&, const ToffoliGate&) = default;
};

inline Pattern apply_gate_to_pattern(const ToffoliGate& g, Pattern p) {
  if ((p & g.controls) == g.controls) p ^= Pattern{1} << g.target;
  return p;
}

// A permutation of {0..2^n-1} stored as a truth vector; table[i] = f(i).
struct ReversibleFunction {
  int width = 0;
  std::vector<Pattern> table;

  ReversibleFunction() = default;
  ReversibleFunction(int n, std::vector<Pattern> t);

  static ReversibleFunction identity(int n);
  bool is_identity() const;
  std::size_t size() const { return table.size(); }
  Pattern operator()(Pattern x) const { return table[x]; }

  friend bool operator==(const ReversibleFunction&,
                         const ReversibleFunction&) = default;
};

// Ordered gate cascade; gates[0] is on the input side.  The empty cascade
// realizes the identity.
struct Network {
  int width = 0;
  std::vector<ToffoliGate> gates;

  Network() = default;
  explicit Network(int n) : width(n) {}
  Network(int n, std::vector<ToffoliGate> gs);

  std::size_t size() const { return gates.size(); }
  void push_back(const ToffoliGate& g);

  friend bool operator==(const Network&, const Network&) = default;
};

ReversibleFunction network_function(const Network& net);
ReversibleFunction invert_function(const ReversibleFunction& f);
Network reverse_network(const Network& net);

// Gate-count or table-driven quantum cost.  quantum_table[c] is the cost of
// a gate with c controls; extra_line_table[c] is used instead when the
// network is starred (some gate spans all n lines, so costing assumes an
// extra wire).
struct CostModel {
  enum class Mode { GateCount, Quantum };
  Mode mode = Mode::GateCount;
  std::vector<long long> quantum_table;
  std::vector<long long> extra_line_table;

  static CostModel gate_count() { return CostModel{}; }
  static CostModel quantum(int max_controls = kMaxWidth);

  long long gate_cost(const ToffoliGate& g, bool starred) const;
};

struct CostValue {
  long long value = 0;
  bool starred = false;

  friend bool operator==(const CostValue&, const CostValue&) = default;
};

// Total order: value first, then unstarred before starred.
std::strong_ordering cost_compare(const CostValue& a, const CostValue& b);

CostValue network_cost(const Network& net, const CostModel& model);

std::string line_name(int index);
int line_index_of_name(const std::string& name);

}  // namespace rls

#endif
