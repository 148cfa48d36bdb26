#ifndef RLS_RESYNTH_HPP
#define RLS_RESYNTH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rls/core.hpp"

// Window resynthesis: pull out a contiguous run of gates, synthesize its
// sub-permutation from scratch, and splice the result back in when it is
// cheaper.  Windows below 5 gates are never touched (they are already
// optimal).

namespace rls {

struct ResynthConfig {
  int iterations = 10;
  int samples_per_iteration = 25;
  int restarts = 3;  // independent random-driver runs; the cheapest wins
  // Longest window the random driver samples (0 = unbounded).  Short
  // windows re-synthesize far better than whole-width ones, so capping
  // the length raises the hit rate on wide networks; the exhaustive
  // driver still scans every length.
  int max_window = 0;
  std::uint64_t rng_seed = 1;
  int min_length = 5;
  std::optional<double> time_limit_seconds;

  bool valid() const {
    return iterations >= 0 && samples_per_iteration >= 1 && restarts >= 1 &&
           min_length >= 5 && (max_window == 0 || max_window >= min_length);
  }
};

// Synthesizer the drivers call on extracted sub-permutations.  Must not
// itself invoke the drivers.
using Toolchain = std::function<Network(const ReversibleFunction&)>;

struct Subnetwork {
  ReversibleFunction function;  // over the touched lines, compacted
  std::vector<int> lines;       // compact index -> original line
};

Subnetwork subnetwork_function(const Network& net, std::size_t start,
                               std::size_t length);

// Resynthesizes the window; yields the full network with the window
// replaced iff that strictly lowers the whole-network cost.  With
// `allow_equal`, an equal-cost replacement with a different gate list is
// also returned: useless on its own, but walking such plateaus gets the
// random driver out of local optima no strict rewrite can leave.
std::optional<Network> resynthesize_window(const Network& net,
                                           std::size_t start,
                                           std::size_t length,
                                           const Toolchain& toolchain,
                                           const CostModel& model,
                                           bool allow_equal = false);

// Per iteration, probes `samples_per_iteration` random windows and applies
// the single best improvement; the whole walk restarts `restarts` times
// from seeds rng_seed, rng_seed+1, ... and the cheapest result wins.
// Deterministic for a fixed seed.
Network random_driver(const Network& net, const ResynthConfig& cfg,
                      const Toolchain& toolchain, const CostModel& model);

// Scans every contiguous window of >= min_length gates, longest first per
// start position, rescanning after each improvement until fixpoint or the
// time limit.
Network exhaustive_driver(const Network& net, const ResynthConfig& cfg,
                          const Toolchain& toolchain, const CostModel& model);

}  // namespace rls

#endif
