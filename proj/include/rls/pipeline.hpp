#ifndef RLS_PIPELINE_HPP
#define RLS_PIPELINE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rls/core.hpp"
#include "rls/resynth.hpp"
#include "rls/synthesis.hpp"
#include "rls/templates.hpp"

// End-to-end orchestration: three engines on a function and its inverse,
// template rewriting, resynthesis drivers, the exhaustive 3-line study,
// and the benchmark generators.

namespace rls {

enum class ResynthStage { None, Random, Exhaustive, Both };

struct PipelineOptions {
  CostModel model = CostModel::gate_count();
  bool use_templates = true;
  const std::vector<Template>* library = nullptr;  // required with templates
  ResynthStage resynth = ResynthStage::Both;
  ResynthConfig resynth_cfg;
  std::optional<int> max_controls;
  int greedy_width_cap = 12;  // the greedy candidate sweep is exponential
  int template_window = kDefaultMatchWindow;
};

struct CandidateRun {
  std::string engine;     // greedy | rm | mmd
  bool on_inverse = false;
  bool converged = true;
  long long gates_raw = 0;
  CostValue cost_raw;
  long long gates_templated = 0;
  CostValue cost_templated;
};

struct PipelineReport {
  Network best;
  std::vector<CandidateRun> candidates;
  CostValue cost_engines;     // best candidate before templates
  CostValue cost_templates;   // best candidate after templates
  CostValue cost_random;      // after the random driver
  CostValue cost_exhaustive;  // after the exhaustive driver (= final)
  bool any_diverged = false;
  bool verified = false;
  double seconds = 0.0;
};

// The toolchain handed to the resynthesis drivers: engines + templates,
// no driver recursion.
Toolchain make_toolchain(const PipelineOptions& opts);

PipelineReport synthesize_best(const ReversibleFunction& f,
                               const PipelineOptions& opts);

struct StudyHistogram {
  std::vector<long long> counts;  // counts[g] = functions realized in g gates

  long long total() const;
  double weighted_average() const;
};

// Exact minimal gate counts for every 3-line function (BFS from the
// identity over the 12 candidate gates).
StudyHistogram optimal_distribution();

// Runs `gate_count_of` over every 3-line permutation (in lexicographic
// order, sharded over threads) and tabulates the gate counts.
StudyHistogram study3x3(
    const std::function<long long(const ReversibleFunction&)>& gate_count_of,
    int threads = 0);

// Same, over a fixed-seed sample of `sample` distinct permutations.
StudyHistogram study3x3_sampled(
    const std::function<long long(const ReversibleFunction&)>& gate_count_of,
    int sample, std::uint64_t seed, int threads = 0);

// Named specification generators for the published benchmark families.
ReversibleFunction generate_benchmark(const std::string& name);
std::vector<std::string> benchmark_names();

struct BenchmarkRow {
  std::string name;
  int width = 0;
  long long gc_gc = 0;  // gates when minimizing gate count
  long long qc_gc = 0;  // quantum cost of that network
  long long gc_qc = 0;  // gates when minimizing quantum cost
  long long qc_qc = 0;
  bool star_gc = false;
  bool star_qc = false;
  Network net_gc;
  Network net_qc;
  bool verified = false;
};

BenchmarkRow run_benchmark(const ReversibleFunction& f,
                           const std::string& name,
                           const PipelineOptions& base);

}  // namespace rls

#endif
