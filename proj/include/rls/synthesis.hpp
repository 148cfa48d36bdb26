#ifndef RLS_SYNTHESIS_HPP
#define RLS_SYNTHESIS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rls/core.hpp"
#include "rls/rmspectra.hpp"

// The three synthesis engines: greedy RM-cost reduction, the row-by-row
// RM-spectra method (unidirectional and bidirectional), and the
// truth-table row-walk baseline.

namespace rls {

enum class SynthMethod { Greedy, Rm, Mmd };
enum class SynthDirection { Unidirectional, Bidirectional };

struct SynthOptions {
  SynthMethod method = SynthMethod::Rm;
  SynthDirection direction = SynthDirection::Bidirectional;
  std::optional<int> max_controls;
  std::optional<long long> gate_budget;
  CostModel cost_model = CostModel::gate_count();
};

struct SynthResult {
  enum class Outcome { Converged, Diverged };
  Outcome outcome = Outcome::Converged;
  Network network;
  long long partial_gate_count = 0;  // meaningful when Diverged
  long long gates_examined = 0;
  std::string method;

  bool converged() const { return outcome == Outcome::Converged; }
};

// All TOF(C;t) on n lines with |C| <= max_controls, in the canonical
// tie-break order: fewest controls first, then target ascending, then
// control set ascending as a bit value.
std::vector<ToffoliGate> candidate_gates(int n,
                                         std::optional<int> max_controls = {});

SynthResult synthesize_greedy(const ReversibleFunction& f,
                              const SynthOptions& opts);

// Row-fixing steps of the spectra walk.  Each mutates the spectra by
// applying the returned gates output-side, in order.
std::vector<ToffoliGate> rm_fix_row_zero(RmSpectra& s);
std::vector<ToffoliGate> rm_fix_variable_row(RmSpectra& s, int k);
std::vector<ToffoliGate> rm_fix_nonvariable_row(RmSpectra& s, std::size_t i);

// Optional per-gate trace: called with the spectra of the residual
// function after each output-side gate application (unidirectional only).
using SpectraTrace = std::function<void(const RmSpectra&)>;

SynthResult synthesize_rm(const ReversibleFunction& f, const SynthOptions& opts,
                          const SpectraTrace& trace = nullptr);

struct Theorem1Bounds {
  long long max_not = 0;
  long long max_cnot = 0;
  std::vector<long long> max_toffoli;  // index k = controls, k >= 2
};

Theorem1Bounds theorem1_bounds(int n);

SynthResult synthesize_mmd(const ReversibleFunction& f,
                           const SynthOptions& opts);

SynthResult synthesize(const ReversibleFunction& f, const SynthOptions& opts);

}  // namespace rls

#endif
