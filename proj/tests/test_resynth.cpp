#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rls/resynth.hpp"
#include "rls/synthesis.hpp"

using namespace rls;

namespace {

Network example_network() {
  Network net(3);
  net.gates.emplace_back(0b010u, 0);  // TOF(b;a)
  net.gates.emplace_back(0b101u, 1);  // TOF(a,c;b)
  net.gates.emplace_back(0b010u, 0);
  net.gates.emplace_back(0u, 0);      // TOF(a)
  return net;
}

Toolchain rm_toolchain() {
  return [](const ReversibleFunction& f) {
    SynthOptions o;
    o.method = SynthMethod::Rm;
    o.direction = SynthDirection::Bidirectional;
    SynthResult r = synthesize_rm(f, o);
    return r.network;
  };
}

Network random_network(int n, int len, std::mt19937_64& rng) {
  Network net(n);
  while (static_cast<int>(net.size()) < len) {
    int t = static_cast<int>(rng() % n);
    Pattern c = static_cast<Pattern>(rng()) & ((Pattern{1} << n) - 1) &
                ~(Pattern{1} << t);
    net.gates.emplace_back(c, t);
  }
  return net;
}

}  // namespace

TEST_CASE("subnetwork extraction over all touched lines") {
  Network net = example_network();
  Subnetwork s = subnetwork_function(net, 0, 4);
  CHECK(s.lines == std::vector<int>{0, 1, 2});
  CHECK(s.function.table == std::vector<Pattern>{1, 0, 3, 2, 5, 7, 4, 6});
}

TEST_CASE("subnetwork compacts away untouched lines") {
  Network net(4);
  net.gates.emplace_back(0b0100u, 0);  // TOF(c;a): lines a,c only
  net.gates.emplace_back(0u, 2);       // TOF(c)
  Subnetwork s = subnetwork_function(net, 0, 2);
  CHECK(s.lines == std::vector<int>{0, 2});
  // On the compact lines (a, c): CNOT(c;a) then NOT(c).
  CHECK(s.function.width == 2);
  CHECK(s.function.table == std::vector<Pattern>{2, 3, 1, 0});
}

TEST_CASE("subnetwork bounds are checked") {
  Network net = example_network();
  CHECK_THROWS_AS(subnetwork_function(net, 3, 2), std::out_of_range);
  CHECK_THROWS_AS(subnetwork_function(net, 0, 5), std::out_of_range);
}

TEST_CASE("window resynthesis splices only strict improvements") {
  // Five NOTs on one line inside a wider network: the sub-permutation is a
  // single NOT, so the window collapses from 5 gates to 1.
  Network net(3);
  for (int i = 0; i < 5; ++i) net.gates.emplace_back(0u, 1);
  net.gates.emplace_back(0b010u, 0);
  auto out = resynthesize_window(net, 0, 5, rm_toolchain(),
                                 CostModel::gate_count());
  REQUIRE(out.has_value());
  CHECK(out->size() == 2);
  CHECK(network_function(*out) == network_function(net));

  // A replacement, when offered, is strictly cheaper and equivalent.
  Network tight = example_network();
  auto maybe = resynthesize_window(tight, 0, 4, rm_toolchain(),
                                   CostModel::gate_count());
  if (maybe) {
    CHECK(network_function(*maybe) == network_function(tight));
    CHECK(maybe->size() < tight.size());
  }
}

TEST_CASE("an identity window is deleted outright") {
  Network net(3);
  net.gates.emplace_back(0b010u, 0);
  net.gates.emplace_back(0b100u, 1);
  net.gates.emplace_back(0b010u, 0);
  net.gates.emplace_back(0b100u, 1);
  net.gates.emplace_back(0b010u, 0);
  net.gates.emplace_back(0b010u, 0);  // the last two cancel
  // gates 0..3 do not realize the identity, but 4..5 do; the exhaustive
  // driver finds the profitable window on its own.
  ResynthConfig cfg;
  Network out =
      exhaustive_driver(net, cfg, rm_toolchain(), CostModel::gate_count());
  CHECK(network_function(out) == network_function(net));
  CHECK(out.size() < net.size());
}

TEST_CASE("drivers preserve the function and never raise the cost") {
  std::mt19937_64 rng(71);
  ResynthConfig cfg;
  cfg.iterations = 4;
  cfg.samples_per_iteration = 10;
  for (const CostModel& model : {CostModel::gate_count(), CostModel::quantum()}) {
    for (int rep = 0; rep < 10; ++rep) {
      Network net = random_network(4, 14, rng);
      Network r = random_driver(net, cfg, rm_toolchain(), model);
      CHECK(network_function(r) == network_function(net));
      CHECK(cost_compare(network_cost(r, model), network_cost(net, model)) !=
            std::strong_ordering::greater);
      Network e = exhaustive_driver(net, cfg, rm_toolchain(), model);
      CHECK(network_function(e) == network_function(net));
      CHECK(cost_compare(network_cost(e, model), network_cost(net, model)) !=
            std::strong_ordering::greater);
    }
  }
}

TEST_CASE("the random driver is deterministic for a fixed seed") {
  std::mt19937_64 rng(87);
  Network net = random_network(5, 20, rng);
  ResynthConfig cfg;
  cfg.rng_seed = 42;
  Network a = random_driver(net, cfg, rm_toolchain(), CostModel::gate_count());
  Network b = random_driver(net, cfg, rm_toolchain(), CostModel::gate_count());
  CHECK(a.gates == b.gates);
  cfg.rng_seed = 43;
  Network c = random_driver(net, cfg, rm_toolchain(), CostModel::gate_count());
  CHECK(network_function(c) == network_function(net));
}

TEST_CASE("networks below the minimum window length pass through") {
  Network net = example_network();  // 4 gates < min_length 5
  ResynthConfig cfg;
  CHECK(random_driver(net, cfg, rm_toolchain(), CostModel::gate_count()).gates ==
        net.gates);
  CHECK(exhaustive_driver(net, cfg, rm_toolchain(), CostModel::gate_count())
            .gates == net.gates);
}

TEST_CASE("config validation") {
  ResynthConfig cfg;
  CHECK(cfg.valid());
  cfg.min_length = 4;
  CHECK_FALSE(cfg.valid());
  cfg.min_length = 5;
  cfg.samples_per_iteration = 0;
  CHECK_FALSE(cfg.valid());
}
