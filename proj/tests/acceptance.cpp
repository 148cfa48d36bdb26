// End-to-end acceptance checks.  Each criterion prints exactly one
// PASS/FAIL line; the exit status is the number of failures.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rls/pipeline.hpp"
#include "rls/rmspectra.hpp"
#include "rls/search.hpp"
#include "rls/synthesis.hpp"
#include "rls/templates.hpp"

using namespace rls;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("Criterion %d: %s — %s\n", criterion, ok ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double elapsed(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

ReversibleFunction random_function(int n, std::mt19937_64& rng) {
  std::vector<Pattern> t(std::size_t{1} << n);
  std::iota(t.begin(), t.end(), 0u);
  std::shuffle(t.begin(), t.end(), rng);
  return ReversibleFunction(n, std::move(t));
}

const std::vector<Template>& library() {
  static std::vector<Template> lib = parse_template_library_file(
      std::string(RLS_DATA_DIR) + "/templates.lib");
  return lib;
}

PipelineOptions pipeline_options() {
  PipelineOptions o;
  o.library = &library();
  return o;
}

// ---------------------------------------------------------------- 1

void criterion1() {
  ReversibleFunction f(3, {1, 0, 3, 2, 5, 7, 4, 6});
  SynthOptions o;
  o.method = SynthMethod::Rm;
  o.direction = SynthDirection::Unidirectional;
  std::vector<std::vector<Pattern>> trace;
  trace.push_back(spectra_of(f).rows);
  SynthResult r =
      synthesize_rm(f, o, [&](const RmSpectra& s) { trace.push_back(s.rows); });

  bool ok = r.converged() && r.network.size() == 4;
  if (ok) {
    ok = r.network.gates[0] == ToffoliGate(0b010u, 0) &&  // TOF(b;a)
         r.network.gates[1] == ToffoliGate(0b101u, 1) &&  // TOF(a,c;b)
         r.network.gates[2] == ToffoliGate(0b010u, 0) &&
         r.network.gates[3] == ToffoliGate(0u, 0);        // TOF(;a)
  }
  // Columns Function, S1, S2, S3, Id; row order 1,a,b,ab,c,ac,bc,abc with
  // bits printed c,b,a.
  const std::vector<std::vector<Pattern>> table{
      {1, 1, 2, 0, 4, 3, 3, 0}, {0, 1, 2, 0, 4, 3, 3, 0},
      {0, 1, 3, 0, 4, 2, 2, 0}, {0, 1, 3, 0, 4, 0, 0, 0},
      {0, 1, 2, 0, 4, 0, 0, 0}};
  ok = ok && trace.size() == table.size();
  if (ok)
    for (std::size_t i = 0; i < table.size(); ++i) ok = ok && trace[i] == table[i];
  report(1, ok, "worked-example gates and all five spectra columns exact");
}

// ---------------------------------------------------------------- 2

StudyHistogram g_optimal;  // reused by criterion 9

void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  g_optimal = optimal_distribution();
  const std::vector<long long> expect{1,    12,   102,   625,  2780,
                                      8921, 17049, 10253, 577};
  bool ok = g_optimal.counts.size() >= expect.size();
  if (ok)
    for (std::size_t i = 0; i < expect.size(); ++i)
      ok = ok && g_optimal.counts[i] == expect[i];
  double wa = g_optimal.weighted_average();
  ok = ok && std::fabs(wa - 5.866) <= 0.001 && g_optimal.total() == 40320;
  char buf[128];
  std::snprintf(buf, sizeof buf, "optimal counts exact, WA %.4f (%.1f s)", wa,
                elapsed(t0));
  report(2, ok, buf);
}

// ---------------------------------------------------------------- 3

void criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  std::atomic<long long> diverged{0};
  auto engine_wa = [&](SynthMethod m, SynthDirection d) {
    StudyHistogram h = study3x3([&](const ReversibleFunction& f) {
      SynthOptions o;
      o.method = m;
      o.direction = d;
      SynthResult r = synthesize(f, o);
      if (!r.converged()) {
        ++diverged;
        return static_cast<long long>(r.partial_gate_count);
      }
      return static_cast<long long>(r.network.size());
    });
    return h.weighted_average();
  };
  double greedy =
      engine_wa(SynthMethod::Greedy, SynthDirection::Unidirectional);
  long long greedy_div = diverged.exchange(0);
  double rm = engine_wa(SynthMethod::Rm, SynthDirection::Bidirectional);
  double mmd = engine_wa(SynthMethod::Mmd, SynthDirection::Bidirectional);
  bool ok = greedy_div == 0 && greedy >= 6.2 && greedy <= 6.6 && rm >= 6.8 &&
            rm <= 7.2 && mmd >= 7.0 && mmd <= 7.5 && elapsed(t0) <= 1800.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "greedy %.4f (diverged %lld), rm %.4f, mmd %.4f (%.1f s)",
                greedy, greedy_div, rm, mmd, elapsed(t0));
  report(3, ok, buf);
}

// ---------------------------------------------------------------- 4

void criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  PipelineOptions o = pipeline_options();
  StudyHistogram h = study3x3_sampled(
      [&](const ReversibleFunction& f) {
        PipelineReport r = synthesize_best(f, o);
        return r.verified ? static_cast<long long>(r.best.size())
                          : static_cast<long long>(1) << 20;
      },
      2000, 20260825);
  double wa = h.weighted_average();
  bool ok = std::fabs(wa - 5.875) / 5.875 <= 0.03;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "2000-function sample WA %.4f vs 5.875 (%.1f s)", wa,
                elapsed(t0));
  report(4, ok, buf);
}

// ---------------------------------------------------------------- 5

void criterion5() {
  // The sizes<=7 library subset: the size-9 templates roughly halve window
  // throughput in the resynthesis drivers for no benchmark-level gain, so
  // the timed table runs use the small subset.
  static std::vector<Template> small_lib = parse_template_library_file(
      std::string(RLS_DATA_DIR) + "/templates7.lib");
  PipelineOptions base;
  base.library = &small_lib;
  base.resynth_cfg.time_limit_seconds = 100.0;
  base.resynth_cfg.iterations = 400;
  base.resynth_cfg.samples_per_iteration = 30;
  base.resynth_cfg.max_window = 30;

  struct Want {
    const char* name;
    long long gc;    // required gate count (exact when `exact`)
    long long qc;    // required quantum cost in qc mode, -1 = unchecked
    bool exact;
  };
  const std::vector<Want> wants{
      {"3_17", 6, 14, true}, {"ham3", 5, 9, true}, {"add3", 5, -1, false},
      {"hwb4", 12, -1, false}, {"hwb5", 27, -1, false},
      {"hwb6", 47, -1, false}, {"4mod5", 6, -1, false}};

  bool ok = true;
  std::string detail;
  for (const auto& w : wants) {
    ReversibleFunction f = generate_benchmark(w.name);

    PipelineOptions gc = base;
    gc.model = CostModel::gate_count();
    const auto tg = std::chrono::steady_clock::now();
    PipelineReport rg = synthesize_best(f, gc);
    const double gc_seconds = elapsed(tg);
    long long gc_gc = static_cast<long long>(rg.best.size());
    long long qc_gc = network_cost(rg.best, CostModel::quantum()).value;

    PipelineOptions qm = base;
    qm.model = CostModel::quantum();
    PipelineReport rq = synthesize_best(f, qm);
    long long qc_qc = network_cost(rq.best, CostModel::quantum()).value;

    bool this_ok = rg.verified && rq.verified && qc_qc <= qc_gc &&
                   gc_seconds <= 600.0 &&
                   (w.exact ? gc_gc == w.gc : gc_gc <= w.gc) &&
                   (w.qc < 0 || qc_qc == w.qc);
    ok = ok && this_ok;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s %lld/%lld (%.0f s)",
                  detail.empty() ? "" : ", ", w.name, gc_gc, qc_qc,
                  gc_seconds);
    detail += buf;
  }
  report(5, ok, detail);
}

// ---------------------------------------------------------------- 6

void criterion6() {
  ReversibleFunction f = generate_benchmark("hwb6");
  SynthOptions o;
  o.method = SynthMethod::Greedy;
  SynthResult r = synthesize_greedy(f, o);
  bool diverged = !r.converged();

  PipelineOptions po = pipeline_options();
  po.resynth = ResynthStage::Random;
  po.resynth_cfg.time_limit_seconds = 60.0;
  PipelineReport rep = synthesize_best(f, po);
  bool ok = diverged && rep.any_diverged && rep.verified;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "greedy diverged at %lld gates; pipeline verified with %zu",
                static_cast<long long>(r.partial_gate_count), rep.best.size());
  report(6, ok, buf);
}

// ---------------------------------------------------------------- 7

bool preservation_exhaustive_n3() {
  std::vector<Pattern> perm(8);
  std::iota(perm.begin(), perm.end(), 0u);
  CostModel gc = CostModel::gate_count();
  do {
    ReversibleFunction f(3, perm);
    for (SynthMethod m :
         {SynthMethod::Greedy, SynthMethod::Rm, SynthMethod::Mmd}) {
      SynthOptions o;
      o.method = m;
      o.direction = SynthDirection::Bidirectional;
      SynthResult r = synthesize(f, o);
      if (!r.converged()) continue;
      if (!(network_function(r.network) == f)) return false;
      Network t = apply_templates(r.network, library(), gc);
      if (!(network_function(t) == f)) return false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

bool preservation_random_wide() {
  std::mt19937_64 rng(424242);
  CostModel gc = CostModel::gate_count();
  Toolchain tool = [](const ReversibleFunction& g) {
    SynthOptions o;
    o.method = SynthMethod::Rm;
    o.direction = SynthDirection::Bidirectional;
    return synthesize_rm(g, o).network;
  };
  for (int i = 0; i < 1000; ++i) {
    int n = 4 + static_cast<int>(rng() % 5);  // 4..8
    ReversibleFunction f = random_function(n, rng);
    SynthOptions o;
    o.method = SynthMethod::Rm;
    o.direction = SynthDirection::Bidirectional;
    Network net = synthesize_rm(f, o).network;
    if (!(network_function(net) == f)) return false;
    Network t = apply_templates(net, library(), gc);
    if (!(network_function(t) == f)) return false;
    if (i % 100 == 0) {
      ResynthConfig cfg;
      cfg.iterations = 2;
      cfg.samples_per_iteration = 5;
      Network d = random_driver(t, cfg, tool, gc);
      if (!(network_function(d) == f)) return false;
    }
  }
  return true;
}

bool rmt_properties() {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 8; ++n) {
    std::vector<Pattern> v(std::size_t{1} << n);
    for (auto& x : v) x = static_cast<Pattern>(rng());
    std::vector<Pattern> w = v;
    rmt(w);
    rmt(w);
    if (w != v) return false;
  }
  std::vector<Pattern> bad(6);
  try {
    rmt(bad);
    return false;
  } catch (const std::invalid_argument&) {
  }
  // Triangularity: input j feeds only coefficients r with j subset of r.
  for (int j = 0; j < 16; ++j) {
    std::vector<Pattern> a(16, 0), b(16, 0);
    b[static_cast<std::size_t>(j)] = 1;
    rmt(a);
    rmt(b);
    for (int r = 0; r < 16; ++r)
      if ((r & j) != j && a[static_cast<std::size_t>(r)] !=
                              b[static_cast<std::size_t>(r)])
        return false;
  }
  return true;
}

bool cross_domain_equivalence() {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 3 + static_cast<int>(rng() % 2);
    ReversibleFunction f = random_function(n, rng);
    int t = static_cast<int>(rng() % n);
    Pattern c = static_cast<Pattern>(rng()) & ((Pattern{1} << n) - 1) &
                ~(Pattern{1} << t);
    ToffoliGate g(c, t);
    RmSpectra s = spectra_of(f);
    apply_gate_output_side(s, g);
    ReversibleFunction composed = f;
    for (auto& v : composed.table) v = apply_gate_to_pattern(g, v);
    if (!(function_of(s) == composed)) return false;
  }
  return true;
}

bool theorem_bounds_hold() {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 100; ++rep) {
    int n = 3 + static_cast<int>(rng() % 3);
    Theorem1Bounds b = theorem1_bounds(n);
    ReversibleFunction f = random_function(n, rng);
    SynthOptions o;
    o.method = SynthMethod::Rm;
    o.direction = SynthDirection::Unidirectional;
    SynthResult r = synthesize_rm(f, o);
    long long nots = 0, cnots = 0;
    std::vector<long long> wider(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& g : r.network.gates) {
      int c = g.control_count();
      if (c == 0) ++nots;
      else if (c == 1) ++cnots;
      else ++wider[static_cast<std::size_t>(c)];
    }
    if (nots > b.max_not || cnots > b.max_cnot) return false;
    for (int c = 2; c < n; ++c)
      if (wider[static_cast<std::size_t>(c)] > b.max_toffoli[c]) return false;
  }
  return true;
}

bool moving_rule_sound() {
  auto gates = candidate_gates(4);
  for (const auto& a : gates)
    for (const auto& b : gates) {
      if (!is_moving_pair(a, b)) continue;
      Network ab(4), ba(4);
      ab.gates = {a, b};
      ba.gates = {b, a};
      if (!(network_function(ab) == network_function(ba))) return false;
    }
  return true;
}

bool library_verifies() {
  const auto& lib = library();
  if (lib.size() < 4) return false;
  for (const auto& t : lib) {
    if (!network_function(t.t_line_network()).is_identity()) return false;
    if (t.valid_vectors != admissible_vectors(t.t_line_network())) return false;
  }
  return true;
}

bool cost_monotone_across_stages() {
  PipelineOptions o = pipeline_options();
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    ReversibleFunction f = random_function(3 + static_cast<int>(rng() % 2), rng);
    PipelineReport r = synthesize_best(f, o);
    if (!r.verified) return false;
    if (cost_compare(r.cost_templates, r.cost_engines) ==
        std::strong_ordering::greater)
      return false;
    if (cost_compare(r.cost_random, r.cost_templates) ==
        std::strong_ordering::greater)
      return false;
    if (cost_compare(r.cost_exhaustive, r.cost_random) ==
        std::strong_ordering::greater)
      return false;
  }
  return true;
}

bool random_driver_deterministic() {
  std::mt19937_64 rng(29);
  ReversibleFunction f = random_function(5, rng);
  SynthOptions so;
  so.method = SynthMethod::Rm;
  Network net = synthesize_rm(f, so).network;
  Toolchain tool = [](const ReversibleFunction& g) {
    SynthOptions o;
    o.method = SynthMethod::Rm;
    o.direction = SynthDirection::Bidirectional;
    return synthesize_rm(g, o).network;
  };
  ResynthConfig cfg;
  CostModel gc = CostModel::gate_count();
  Network a = random_driver(net, cfg, tool, gc);
  Network b = random_driver(net, cfg, tool, gc);
  return a.gates == b.gates;
}

void criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Suite {
    const char* name;
    bool (*fn)();
  };
  const Suite suites[] = {
      {"preservation-n3", preservation_exhaustive_n3},
      {"preservation-wide", preservation_random_wide},
      {"rmt", rmt_properties},
      {"cross-domain", cross_domain_equivalence},
      {"bounds", theorem_bounds_hold},
      {"moving-rule", moving_rule_sound},
      {"library", library_verifies},
      {"cost-monotone", cost_monotone_across_stages},
      {"determinism", random_driver_deterministic},
  };
  std::string bad;
  for (const auto& s : suites)
    if (!s.fn()) bad += std::string(bad.empty() ? "" : ", ") + s.name;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s (%.1f s)",
                bad.empty() ? "all property suites hold"
                            : ("failed: " + bad).c_str(),
                elapsed(t0));
  report(7, bad.empty(), buf);
}

// ---------------------------------------------------------------- 8

void criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Template> small;
  for (const auto& t : library())
    if (t.size() <= 6) small.push_back(t);
  CostModel gc = CostModel::gate_count();
  long long cascades = 0, irreducible = 0;
  for (int len = 1; len <= 6; ++len) {
    for_each_identity_cascade(
        3, len, false, [&](const std::vector<ToffoliGate>& gates) {
          ++cascades;
          Network net(3, gates);
          Network out = apply_templates(net, small, gc);
          // Run to fixpoint in case one pass stops at a smaller cascade.
          while (out.size() > 0) {
            Network next = apply_templates(out, small, gc);
            if (next.size() >= out.size()) break;
            out = std::move(next);
          }
          if (out.size() != 0) ++irreducible;
        });
  }
  bool ok = cascades > 0 && irreducible == 0 && elapsed(t0) <= 900.0;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "%lld identity cascades, %lld left unreduced (%.1f s)",
                cascades, irreducible, elapsed(t0));
  report(8, ok, buf);
}

// ---------------------------------------------------------------- 9

void criterion9() {
  const auto t0 = std::chrono::steady_clock::now();
  DepthOracle oracle(3, 16);
  PipelineOptions o = pipeline_options();
  std::mt19937_64 rng(31337);

  long long checked = 0, wrong = 0;
  while (checked < 200 && elapsed(t0) < 600.0) {
    ReversibleFunction f = random_function(3, rng);
    PipelineReport r = synthesize_best(f, o);
    if (!r.verified || r.best.size() < 4) continue;
    // Sample one window per output, uniformly over start positions.
    std::size_t start = rng() % (r.best.size() - 3);
    Network window(3);
    for (std::size_t i = 0; i < 4; ++i)
      window.gates.push_back(r.best.gates[start + i]);
    int opt = oracle.query(network_function(window).table);
    if (opt != 4) ++wrong;
    ++checked;
  }
  bool ok = checked == 200 && wrong == 0;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "%lld windows sampled, %lld below BFS optimum (%.1f s)",
                checked, wrong, elapsed(t0));
  report(9, ok, buf);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS"
                                    : "SOME CRITERIA FAILED");
  return failures;
}
