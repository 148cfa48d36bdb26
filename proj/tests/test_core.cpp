#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rls/core.hpp"

using namespace rls;

TEST_CASE("gate application flips the target iff all controls are set") {
  ToffoliGate tof(0b101u, 1);  // TOF(a,c;b)
  CHECK(apply_gate_to_pattern(tof, 0b101u) == 0b111u);
  CHECK(apply_gate_to_pattern(tof, 0b111u) == 0b101u);
  CHECK(apply_gate_to_pattern(tof, 0b001u) == 0b001u);
  ToffoliGate n(0u, 2);  // TOF(c)
  CHECK(apply_gate_to_pattern(n, 0u) == 0b100u);
}

TEST_CASE("gate target cannot be one of its controls") {
  CHECK_THROWS_AS(ToffoliGate(0b010u, 1), std::invalid_argument);
  CHECK_NOTHROW(ToffoliGate(0b010u, 0));
}

TEST_CASE("functions must be bijections") {
  CHECK_THROWS_AS(ReversibleFunction(2, {0, 0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(ReversibleFunction(2, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(ReversibleFunction(1, {0, 2}), std::invalid_argument);
  CHECK(ReversibleFunction::identity(3).is_identity());
}

TEST_CASE("network simulation composes gates input to output") {
  Network net(3);
  net.gates.emplace_back(0b010u, 0);  // TOF(b;a)
  net.gates.emplace_back(0b101u, 1);  // TOF(a,c;b)
  net.gates.emplace_back(0b010u, 0);
  net.gates.emplace_back(0u, 0);  // TOF(a)
  ReversibleFunction f = network_function(net);
  CHECK(f.table == std::vector<Pattern>{1, 0, 3, 2, 5, 7, 4, 6});
}

TEST_CASE("inverse table and reversed network agree") {
  Network net(3);
  net.gates.emplace_back(0b010u, 0);
  net.gates.emplace_back(0b101u, 1);
  net.gates.emplace_back(0u, 2);
  ReversibleFunction f = network_function(net);
  ReversibleFunction g = invert_function(f);
  for (Pattern x = 0; x < 8; ++x) CHECK(g(f(x)) == x);
  // Self-inverse gates: running the gates backwards realizes the inverse.
  CHECK(network_function(reverse_network(net)) == g);
}

TEST_CASE("default quantum cost table") {
  CostModel q = CostModel::quantum();
  CHECK(q.quantum_table[0] == 1);
  CHECK(q.quantum_table[1] == 1);
  CHECK(q.quantum_table[2] == 5);
  CHECK(q.quantum_table[3] == 13);
  CHECK(q.quantum_table[4] == 26);
  CHECK(q.quantum_table[5] == 38);
  CHECK(q.quantum_table[6] == 50);
  for (std::size_t c = 1; c < q.quantum_table.size(); ++c)
    CHECK(q.quantum_table[c] >= q.quantum_table[c - 1]);
}

TEST_CASE("a full-width gate stars the network and prices all gates") {
  CostModel q = CostModel::quantum();
  Network net(3);
  net.gates.emplace_back(0b110u, 0);  // spans all three lines
  net.gates.emplace_back(0b010u, 0);
  CostValue v = network_cost(net, q);
  CHECK(v.starred);
  CHECK(v.value == q.extra_line_table[2] + q.extra_line_table[1]);

  Network plain(4);
  plain.gates = net.gates;  // same gates, wider network: no star
  CostValue w = network_cost(plain, q);
  CHECK_FALSE(w.starred);
  CHECK(w.value == q.quantum_table[2] + q.quantum_table[1]);
}

TEST_CASE("cost ordering prefers unstarred at equal value") {
  CHECK(cost_compare({5, false}, {5, true}) == std::strong_ordering::less);
  CHECK(cost_compare({5, true}, {6, false}) == std::strong_ordering::less);
  CHECK(cost_compare({5, false}, {5, false}) == std::strong_ordering::equal);
}

TEST_CASE("gate count model counts gates") {
  Network net(3);
  net.gates.emplace_back(0b010u, 0);
  net.gates.emplace_back(0b110u, 0);
  CHECK(network_cost(net, CostModel::gate_count()).value == 2);
}

TEST_CASE("line naming round trip") {
  CHECK(line_name(0) == "a");
  CHECK(line_name(2) == "c");
  CHECK(line_index_of_name("a") == 0);
  CHECK(line_index_of_name("u") == 20);
  CHECK(line_index_of_name("?") == -1);
}
