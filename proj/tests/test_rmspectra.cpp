#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rls/rmspectra.hpp"

using namespace rls;

namespace {

ReversibleFunction random_function(int n, std::mt19937_64& rng) {
  std::vector<Pattern> t(std::size_t{1} << n);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<Pattern>(i);
  std::shuffle(t.begin(), t.end(), rng);
  return ReversibleFunction(n, std::move(t));
}

}  // namespace

TEST_CASE("rmt is an involution") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 6; ++n) {
    std::vector<Pattern> v(std::size_t{1} << n);
    for (auto& x : v) x = static_cast<Pattern>(rng());
    std::vector<Pattern> w = v;
    rmt(w);
    CHECK(w != v);  // astronomically unlikely to be a fixpoint
    rmt(w);
    CHECK(w == v);
  }
}

TEST_CASE("rmt rejects non-power-of-two lengths") {
  std::vector<Pattern> v(3);
  CHECK_THROWS_AS(rmt(v), std::invalid_argument);
  std::vector<Pattern> empty;
  CHECK_THROWS_AS(rmt(empty), std::invalid_argument);
}

TEST_CASE("rmt is triangular: entry r only mixes rows covered by r") {
  // Coefficient r of the transform depends only on inputs j with j subset
  // of r, so a change at position j only disturbs coefficients above it.
  std::vector<Pattern> a(16, 0), b(16, 0);
  b[5] = 1;  // flip one input
  rmt(a);
  rmt(b);
  for (std::size_t r = 0; r < 16; ++r)
    if ((r & 5u) != 5u) CHECK(a[r] == b[r]);
}

TEST_CASE("spectra round trip and the identity spectra") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 5; ++n) {
    ReversibleFunction f = random_function(n, rng);
    CHECK(function_of(spectra_of(f)) == f);
  }
  RmSpectra id = RmSpectra::identity(3);
  CHECK(is_identity(id));
  CHECK(rm_cost(id) == 0);
  CHECK(spectra_of(ReversibleFunction::identity(3)).rows == id.rows);
}

TEST_CASE("worked-example spectra and cost") {
  ReversibleFunction f(3, {1, 0, 3, 2, 5, 7, 4, 6});
  RmSpectra s = spectra_of(f);
  CHECK(s.rows == std::vector<Pattern>{1, 1, 2, 0, 4, 3, 3, 0});
  CHECK(rm_cost(s) == 5);
  CHECK(dump_spectra(s) ==
        "1   001\n"
        "a   001\n"
        "b   010\n"
        "ab  000\n"
        "c   100\n"
        "ac  011\n"
        "bc  011\n"
        "abc 000\n");
}

TEST_CASE("output-side spectral application equals truth-table composition") {
  std::mt19937_64 rng(23);
  for (int n : {3, 4, 5}) {
    int reps = n == 3 ? 100 : 20;
    for (int rep = 0; rep < reps; ++rep) {
      ReversibleFunction f = random_function(n, rng);
      for (int t = 0; t < n; ++t) {
        for (Pattern c = 0; c < (Pattern{1} << n); ++c) {
          if (c & (Pattern{1} << t)) continue;
          if (n > 3 && rep % 5 != 0 && c != 0) continue;  // sample widths > 3
          ToffoliGate g(c, t);
          RmSpectra s = spectra_of(f);
          apply_gate_output_side(s, g);
          ReversibleFunction composed = f;
          for (auto& v : composed.table) v = apply_gate_to_pattern(g, v);
          CHECK(function_of(s) == composed);
        }
      }
    }
  }
}

TEST_CASE("input-side spectral application composes before the function") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 100; ++rep) {
    ReversibleFunction f = random_function(3, rng);
    for (int t = 0; t < 3; ++t) {
      for (Pattern c = 0; c < 8; ++c) {
        if (c & (Pattern{1} << t)) continue;
        ToffoliGate g(c, t);
        RmSpectra s = spectra_of(f);
        apply_gate_input_side(s, g);
        std::vector<Pattern> expected(8);
        for (Pattern x = 0; x < 8; ++x)
          expected[x] = f(apply_gate_to_pattern(g, x));
        CHECK(function_of(s).table == expected);
      }
    }
  }
}

TEST_CASE("gate applications are involutions on the spectra") {
  std::mt19937_64 rng(31);
  ReversibleFunction f = random_function(4, rng);
  RmSpectra s = spectra_of(f);
  ToffoliGate g(0b1010u, 0);
  RmSpectra s2 = s;
  apply_gate_output_side(s2, g);
  apply_gate_output_side(s2, g);
  CHECK(s2.rows == s.rows);
  apply_gate_input_side(s2, g);
  apply_gate_input_side(s2, g);
  CHECK(s2.rows == s.rows);
}
