#include "rls/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace rls {

namespace {

Pattern full_mask(int n) { return (Pattern{1} << n) - 1; }

void check_leading_rows(const RmSpectra& s, std::size_t upto) {
  for (std::size_t r = 0; r <= upto && r < s.rows.size(); ++r) {
    Pattern id_row = std::has_single_bit(static_cast<Pattern>(r))
                         ? static_cast<Pattern>(r)
                         : 0;
    if (s.rows[r] != id_row)
      throw std::logic_error("spectra row walk lost a fixed row");
  }
}

long long gate_list_cost(const std::vector<ToffoliGate>& gates,
                         const CostModel& model) {
  long long cost = 0;
  for (const auto& g : gates) cost += model.gate_cost(g, false);
  return cost;
}

Network assemble(int width, const std::vector<ToffoliGate>& prefix,
                 const std::vector<ToffoliGate>& suffix) {
  Network net(width);
  net.gates = prefix;
  net.gates.insert(net.gates.end(), suffix.rbegin(), suffix.rend());
  return net;
}

}  // namespace

std::vector<ToffoliGate> candidate_gates(int n,
                                         std::optional<int> max_controls) {
  int cap = std::min(n - 1, max_controls.value_or(n - 1));
  std::vector<ToffoliGate> gates;
  for (int c = 0; c <= cap; ++c)
    for (int t = 0; t < n; ++t)
      for (Pattern m = 0; m <= full_mask(n); ++m) {
        if (std::popcount(m) != c) continue;
        if (m & (Pattern{1} << t)) continue;
        gates.emplace_back(m, t);
      }
  return gates;
}

SynthResult synthesize_greedy(const ReversibleFunction& f,
                              const SynthOptions& opts) {
  SynthResult res;
  res.method = "greedy";
  long long budget;
  if (opts.gate_budget) {
    budget = *opts.gate_budget;
  } else {
    SynthOptions rm_opts = opts;
    rm_opts.method = SynthMethod::Rm;
    rm_opts.direction = SynthDirection::Bidirectional;
    // The row-walk count anchors the cut-off; the slack absorbs the
    // plateau wandering the greedy scan is allowed before giving up.
    budget =
        2 * static_cast<long long>(synthesize_rm(f, rm_opts).network.size()) +
        f.width;
  }

  auto candidates = candidate_gates(f.width, opts.max_controls);
  RmSpectra s = spectra_of(f);
  std::vector<ToffoliGate> applied;
  while (!is_identity(s)) {
    long long best_cost = -1;
    const ToffoliGate* best = nullptr;
    for (const auto& g : candidates) {
      // Re-selecting the previous gate would just cancel it; skipping it
      // also breaks the two-cycles a pure cost scan falls into on plateaus.
      if (!applied.empty() && g == applied.back()) continue;
      apply_gate_output_side(s, g);
      long long cost = rm_cost(s);
      apply_gate_output_side(s, g);  // gates are self-inverse
      ++res.gates_examined;
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best = &g;
      }
    }
    apply_gate_output_side(s, *best);
    applied.push_back(*best);
    if (static_cast<long long>(applied.size()) > budget) {
      res.outcome = SynthResult::Outcome::Diverged;
      res.partial_gate_count = static_cast<long long>(applied.size());
      return res;
    }
  }
  res.network.width = f.width;
  res.network.gates.assign(applied.rbegin(), applied.rend());
  return res;
}

std::vector<ToffoliGate> rm_fix_row_zero(RmSpectra& s) {
  std::vector<ToffoliGate> gates;
  Pattern row = s.rows[0];
  for (int j = 0; j < s.width; ++j) {
    if (row & (Pattern{1} << j)) {
      ToffoliGate g(0, j);
      apply_gate_output_side(s, g);
      gates.push_back(g);
    }
  }
  return gates;
}

std::vector<ToffoliGate> rm_fix_variable_row(RmSpectra& s, int k) {
  std::vector<ToffoliGate> gates;
  const std::size_t i = std::size_t{1} << k;
  if ((s.rows[i] & (Pattern{1} << k)) == 0) {
    Pattern row = s.rows[i];
    if (row == 0)
      throw std::logic_error("zero variable row: input is not a bijection");
    int pivot = std::bit_width(row) - 1;
    if (pivot <= k)
      throw std::logic_error("variable-row pivot below the row's own line");
    ToffoliGate g(Pattern{1} << pivot, k);
    apply_gate_output_side(s, g);
    gates.push_back(g);
  }
  for (int j = 0; j < s.width; ++j) {
    if (j == k) continue;
    if (s.rows[i] & (Pattern{1} << j)) {
      ToffoliGate g(Pattern{1} << k, j);
      apply_gate_output_side(s, g);
      gates.push_back(g);
    }
  }
  return gates;
}

std::vector<ToffoliGate> rm_fix_nonvariable_row(RmSpectra& s, std::size_t i) {
  std::vector<ToffoliGate> gates;
  if (s.rows[i] == 0) return gates;
  const Pattern row = s.rows[i];
  const Pattern imask = static_cast<Pattern>(i);
  Pattern outside = row & ~imask;
  if (outside == 0)
    throw std::logic_error("no pivot outside the monomial: not a bijection");
  int pivot = std::bit_width(outside) - 1;

  // Collect all other 1-entries of the row onto the pivot column, noting
  // which of these gates disturb earlier rows.
  std::vector<ToffoliGate> to_undo;
  for (int j = 0; j < s.width; ++j) {
    if (j == pivot) continue;
    if ((row & (Pattern{1} << j)) == 0) continue;
    ToffoliGate g(Pattern{1} << pivot, j);
    std::vector<Pattern> before(s.rows.begin(), s.rows.begin() + i);
    apply_gate_output_side(s, g);
    gates.push_back(g);
    if (!std::equal(before.begin(), before.end(), s.rows.begin()))
      to_undo.push_back(g);
  }
  ToffoliGate closing(imask, pivot);
  apply_gate_output_side(s, closing);
  gates.push_back(closing);
  for (const auto& g : to_undo) {
    apply_gate_output_side(s, g);
    gates.push_back(g);
  }
  return gates;
}

namespace {

std::vector<ToffoliGate> rm_fix_row(RmSpectra& s, std::size_t i) {
  if (i == 0) return rm_fix_row_zero(s);
  if (std::has_single_bit(static_cast<Pattern>(i)))
    return rm_fix_variable_row(s, std::countr_zero(static_cast<Pattern>(i)));
  return rm_fix_nonvariable_row(s, i);
}

}  // namespace

SynthResult synthesize_rm(const ReversibleFunction& f, const SynthOptions& opts,
                          const SpectraTrace& trace) {
  SynthResult res;
  const std::size_t steps = f.table.size() - 1;  // rows 0 .. 2^n-2

  if (opts.direction == SynthDirection::Unidirectional) {
    res.method = "rm-uni";
    RmSpectra s = spectra_of(f);
    std::vector<ToffoliGate> applied;
    for (std::size_t i = 0; i < steps; ++i) {
      auto gates = rm_fix_row(s, i);
      applied.insert(applied.end(), gates.begin(), gates.end());
      check_leading_rows(s, i);
    }
    if (!is_identity(s))
      throw std::logic_error("row walk finished without reaching identity");
    res.network = assemble(f.width, {}, applied);
    if (trace) {
      RmSpectra replay = spectra_of(f);
      for (const auto& g : applied) {
        apply_gate_output_side(replay, g);
        trace(replay);
      }
    }
    return res;
  }

  res.method = "rm-bi";
  RmSpectra s_out = spectra_of(f);
  RmSpectra s_in = spectra_of(invert_function(f));
  std::vector<ToffoliGate> prefix;   // input-side gates, in order
  std::vector<ToffoliGate> suffix;   // output-side gates, application order
  for (std::size_t i = 0; i < steps; ++i) {
    RmSpectra out_copy = s_out;
    RmSpectra in_copy = s_in;
    auto gates_out = rm_fix_row(out_copy, i);
    auto gates_in = rm_fix_row(in_copy, i);
    long long cost_out = gate_list_cost(gates_out, opts.cost_model);
    long long cost_in = gate_list_cost(gates_in, opts.cost_model);
    bool pick_out;
    if (cost_out != cost_in) {
      pick_out = cost_out < cost_in;
    } else {
      long long rem_out = rm_cost(out_copy);
      long long rem_in = rm_cost(in_copy);
      pick_out = rem_out <= rem_in;
    }
    if (pick_out) {
      s_out = std::move(out_copy);
      for (const auto& g : gates_out) apply_gate_input_side(s_in, g);
      suffix.insert(suffix.end(), gates_out.begin(), gates_out.end());
    } else {
      s_in = std::move(in_copy);
      for (const auto& g : gates_in) apply_gate_input_side(s_out, g);
      prefix.insert(prefix.end(), gates_in.begin(), gates_in.end());
    }
    // Fixed leading rows must agree between the two spectra.
    check_leading_rows(s_out, i);
    check_leading_rows(s_in, i);
  }
  res.network = assemble(f.width, prefix, suffix);
  return res;
}

Theorem1Bounds theorem1_bounds(int n) {
  Theorem1Bounds b;
  b.max_not = n;
  long long p2 = 1LL << n;
  b.max_cnot = 2LL * (n - 1) * (p2 - n - 2) + 1LL * n * n;
  b.max_toffoli.assign(std::max(n, 2), 0);
  for (int k = 2; k <= n - 1; ++k) {
    long long c = 1;
    for (int j = 0; j < k; ++j) c = c * (n - j) / (j + 1);
    b.max_toffoli[k] = c;
  }
  return b;
}

namespace {

void apply_gate_to_table(std::vector<Pattern>& table, const ToffoliGate& g) {
  for (auto& v : table) v = apply_gate_to_pattern(g, v);
}

// Gates that fix row i of the truth table without touching earlier rows;
// applied to the table as they are chosen.
std::vector<ToffoliGate> mmd_fix_row(std::vector<Pattern>& table,
                                     std::size_t i, int n) {
  std::vector<ToffoliGate> gates;
  if (i == 0) {
    Pattern v = table[0];
    for (int b = 0; b < n; ++b) {
      if (v & (Pattern{1} << b)) {
        ToffoliGate g(0, b);
        apply_gate_to_table(table, g);
        gates.push_back(g);
      }
    }
    return gates;
  }
  const Pattern target = static_cast<Pattern>(i);
  Pattern v = table[i];
  // Bits that must flip 0 -> 1: control on every current 1-bit.
  for (int b = 0; b < n; ++b) {
    Pattern bit = Pattern{1} << b;
    if ((target & bit) && !(v & bit)) {
      ToffoliGate g(v, b);
      apply_gate_to_table(table, g);
      gates.push_back(g);
      v = table[i];
    }
  }
  // Bits that must flip 1 -> 0: control on the other current 1-bits.
  for (int b = 0; b < n; ++b) {
    Pattern bit = Pattern{1} << b;
    if (!(target & bit) && (v & bit)) {
      ToffoliGate g(v & ~bit, b);
      apply_gate_to_table(table, g);
      gates.push_back(g);
      v = table[i];
    }
  }
  return gates;
}

std::vector<Pattern> invert_table(const std::vector<Pattern>& table) {
  std::vector<Pattern> inv(table.size());
  for (std::size_t i = 0; i < table.size(); ++i)
    inv[table[i]] = static_cast<Pattern>(i);
  return inv;
}

}  // namespace

SynthResult synthesize_mmd(const ReversibleFunction& f,
                           const SynthOptions& opts) {
  SynthResult res;
  const int n = f.width;
  const std::size_t rows = f.table.size();

  if (opts.direction == SynthDirection::Unidirectional) {
    res.method = "mmd-uni";
    std::vector<Pattern> table = f.table;
    std::vector<ToffoliGate> applied;
    for (std::size_t i = 0; i < rows; ++i) {
      auto gates = mmd_fix_row(table, i, n);
      applied.insert(applied.end(), gates.begin(), gates.end());
    }
    res.network = assemble(n, {}, applied);
    return res;
  }

  res.method = "mmd-bi";
  std::vector<Pattern> table = f.table;
  std::vector<Pattern> inv = invert_table(table);
  std::vector<ToffoliGate> prefix;
  std::vector<ToffoliGate> suffix;
  for (std::size_t i = 0; i < rows; ++i) {
    auto out_copy = table;
    auto in_copy = inv;
    auto gates_out = mmd_fix_row(out_copy, i, n);
    auto gates_in = mmd_fix_row(in_copy, i, n);
    long long cost_out = gate_list_cost(gates_out, opts.cost_model);
    long long cost_in = gate_list_cost(gates_in, opts.cost_model);
    if (cost_out <= cost_in) {
      table = std::move(out_copy);
      inv = invert_table(table);
      suffix.insert(suffix.end(), gates_out.begin(), gates_out.end());
    } else {
      inv = std::move(in_copy);
      table = invert_table(inv);
      prefix.insert(prefix.end(), gates_in.begin(), gates_in.end());
    }
  }
  res.network = assemble(n, prefix, suffix);
  return res;
}

SynthResult synthesize(const ReversibleFunction& f, const SynthOptions& opts) {
  switch (opts.method) {
    case SynthMethod::Greedy: return synthesize_greedy(f, opts);
    case SynthMethod::Rm: return synthesize_rm(f, opts);
    case SynthMethod::Mmd: return synthesize_mmd(f, opts);
  }
  throw std::logic_error("unknown synthesis method");
}

}  // namespace rls
