#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "rls/io.hpp"

using namespace rls;

TEST_CASE("perm files parse with comments and round-trip") {
  std::istringstream in(
      "# worked example\n"
      "width 3\n"
      "1 0 3 2  # first half\n"
      "5 7 4 6\n");
  ReversibleFunction f = parse_function(in);
  CHECK(f.width == 3);
  CHECK(f.table == std::vector<Pattern>{1, 0, 3, 2, 5, 7, 4, 6});

  std::istringstream again(format_function(f));
  CHECK(parse_function(again) == f);
}

TEST_CASE("perm parse errors carry line numbers") {
  std::istringstream missing_header("1 0 3 2 5 7 4 6\n");
  CHECK_THROWS_AS(parse_function(missing_header), ParseError);

  std::istringstream bad_count("width 2\n0 1 2\n");
  CHECK_THROWS_AS(parse_function(bad_count), ParseError);

  std::istringstream not_bijective("width 2\n0 0 1 2\n");
  CHECK_THROWS_AS(parse_function(not_bijective), ParseError);

  std::istringstream too_wide("width 18\n");
  CHECK_THROWS_AS(parse_function(too_wide, 16), ParseError);

  try {
    std::istringstream bad("width 3\n1 0 3 2\nnope\n");
    parse_function(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("gate text round trip") {
  ToffoliGate g = parse_gate("TOF(a,c;b)", 3);
  CHECK(g.controls == 0b101u);
  CHECK(g.target == 1);
  CHECK(format_gate(g) == "TOF(a,c;b)");

  CHECK(format_gate(parse_gate("TOF(;a)", 3)) == "TOF(;a)");
  CHECK_THROWS_AS(parse_gate("TOF(a)", 3), ParseError);  // target needs ';'
  CHECK_THROWS_AS(parse_gate("TOF(a;a)", 3), ParseError);
  CHECK_THROWS_AS(parse_gate("TOF(d;a)", 3), ParseError);
  CHECK_THROWS_AS(parse_gate("NOPE", 3), ParseError);
}

TEST_CASE("network files are byte-stable") {
  std::string text =
      "lines a,b,c\n"
      "TOF(b;a)\n"
      "TOF(a,c;b)\n"
      "TOF(b;a)\n"
      "TOF(;a)\n";
  std::istringstream in(text);
  Network net = parse_network(in);
  CHECK(net.width == 3);
  CHECK(net.gates.size() == 4);
  CHECK(format_network(net) == text);
}

TEST_CASE("network header must name lines in order") {
  std::istringstream in("lines a,c\nTOF(a;c)\n");
  CHECK_THROWS_AS(parse_network(in), ParseError);
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_network(empty), ParseError);
}

TEST_CASE("cost tables parse, validate, and round-trip") {
  std::istringstream in(
      "# controls cost cost-with-extra-line\n"
      "0 1\n"
      "1 1\n"
      "2 5\n"
      "3 13 13\n"
      "4 26 26\n");
  CostModel m = parse_cost_table(in);
  CHECK(m.mode == CostModel::Mode::Quantum);
  CHECK(m.quantum_table == std::vector<long long>{1, 1, 5, 13, 26});
  CHECK(m.extra_line_table[3] == 13);

  std::istringstream again(format_cost_table(m));
  CostModel m2 = parse_cost_table(again);
  CHECK(m2.quantum_table == m.quantum_table);

  std::istringstream gap("0 1\n2 5\n");
  CHECK_THROWS_AS(parse_cost_table(gap), ParseError);
  std::istringstream decreasing("0 5\n1 1\n");
  CHECK_THROWS_AS(parse_cost_table(decreasing), ParseError);
}
