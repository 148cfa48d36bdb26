#include "rls/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

#include "rls/search.hpp"

namespace rls {

namespace {

struct Candidate {
  CandidateRun run;
  Network net;        // after templates (or raw when templates are off)
  bool usable = false;
};

std::vector<Candidate> engine_candidates(const ReversibleFunction& f,
                                         const PipelineOptions& opts) {
  std::vector<Candidate> out;
  const ReversibleFunction inv = invert_function(f);
  for (bool on_inverse : {false, true}) {
    const ReversibleFunction& target = on_inverse ? inv : f;
    for (SynthMethod method :
         {SynthMethod::Greedy, SynthMethod::Rm, SynthMethod::Mmd}) {
      if (method == SynthMethod::Greedy && f.width > opts.greedy_width_cap)
        continue;
      SynthOptions so;
      so.method = method;
      so.direction = SynthDirection::Bidirectional;
      so.max_controls = opts.max_controls;
      so.cost_model = opts.model;
      SynthResult res = synthesize(target, so);

      Candidate c;
      c.run.engine = method == SynthMethod::Greedy ? "greedy"
                     : method == SynthMethod::Rm   ? "rm"
                                                   : "mmd";
      c.run.on_inverse = on_inverse;
      c.run.converged = res.converged();
      if (!res.converged()) {
        c.run.gates_raw = res.partial_gate_count;
        out.push_back(std::move(c));
        continue;
      }
      Network net =
          on_inverse ? reverse_network(res.network) : std::move(res.network);
      c.run.gates_raw = static_cast<long long>(net.size());
      c.run.cost_raw = network_cost(net, opts.model);
      if (opts.use_templates) {
        if (!opts.library)
          throw std::invalid_argument(
              "template pass requested without a library");
        net = apply_templates(net, *opts.library, opts.model,
                              opts.template_window);
      }
      c.run.gates_templated = static_cast<long long>(net.size());
      c.run.cost_templated = network_cost(net, opts.model);
      c.net = std::move(net);
      c.usable = true;
      out.push_back(std::move(c));
    }
  }
  return out;
}

Network best_engine_net(const ReversibleFunction& f,
                        const PipelineOptions& opts) {
  std::vector<Candidate> cands = engine_candidates(f, opts);
  const Candidate* best = nullptr;
  for (const auto& c : cands) {
    if (!c.usable) continue;
    if (!best || cost_compare(c.run.cost_templated,
                              best->run.cost_templated) ==
                     std::strong_ordering::less)
      best = &c;
  }
  if (!best) throw std::runtime_error("no synthesis engine converged");
  return best->net;
}

// Cheaper variant for the resynthesis drivers, which call the toolchain on
// thousands of small windows: only the best raw candidate gets the template
// pass, and results are memoized (the drivers revisit the same window
// permutations over and over).
Network windowed_engine_net(const ReversibleFunction& f,
                            const PipelineOptions& opts) {
  PipelineOptions raw = opts;
  raw.use_templates = false;
  std::vector<Candidate> cands = engine_candidates(f, raw);
  const Candidate* best = nullptr;
  for (const auto& c : cands) {
    if (!c.usable) continue;
    if (!best ||
        cost_compare(c.run.cost_raw, best->run.cost_raw) ==
            std::strong_ordering::less)
      best = &c;
  }
  if (!best) throw std::runtime_error("no synthesis engine converged");
  Network net = best->net;
  if (opts.use_templates)
    net = apply_templates(net, *opts.library, opts.model,
                          opts.template_window);
  return net;
}

// Exact synthesis for tiny widths: one Dijkstra over the whole permutation
// space from the identity (3 lines: 40,320 states x 12 gates), recording the
// last gate of a cheapest network per state.  Window subfunctions on <= 3
// lines then get an optimal realization instantly instead of an engine
// approximation.
class SmallTable {
 public:
  SmallTable(int width, const CostModel& model) : width_(width) {
    const Pattern lines = (Pattern{1} << width) - 1;
    for (int t = 0; t < width; ++t)
      for (Pattern c = 0; c <= lines; ++c)
        if (!(c & (Pattern{1} << t))) gates_.emplace_back(c, t);
    std::vector<long long> gate_cost;
    gate_cost.reserve(gates_.size());
    for (const auto& g : gates_) gate_cost.push_back(model.gate_cost(g, false));

    std::vector<Pattern> tab(std::size_t{1} << width);
    std::iota(tab.begin(), tab.end(), 0);
    id_code_ = encode(tab);
    using Item = std::pair<long long, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist_[id_code_] = 0;
    pq.emplace(0, id_code_);
    while (!pq.empty()) {
      auto [d, code] = pq.top();
      pq.pop();
      if (d != dist_.at(code)) continue;
      decode(code, tab);
      for (std::size_t gi = 0; gi < gates_.size(); ++gi) {
        std::uint32_t nc = encode_applied(tab, gates_[gi]);
        long long nd = d + gate_cost[gi];
        auto it = dist_.find(nc);
        if (it == dist_.end() || nd < it->second) {
          dist_[nc] = nd;
          parent_[nc] = static_cast<std::uint16_t>(gi);
          pq.emplace(nd, nc);
        }
      }
    }
  }

  Network net_for(const ReversibleFunction& f) const {
    Network net(width_);
    std::vector<Pattern> tab = f.table;
    std::uint32_t code = encode(tab);
    while (code != id_code_) {
      const ToffoliGate& g = gates_[parent_.at(code)];
      net.gates.push_back(g);  // last gate first; reversed below
      for (auto& v : tab)
        if ((v & g.controls) == g.controls) v ^= Pattern{1} << g.target;
      code = encode(tab);
    }
    std::reverse(net.gates.begin(), net.gates.end());
    return net;
  }

 private:
  std::uint32_t encode(const std::vector<Pattern>& tab) const {
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < tab.size(); ++i)
      code |= static_cast<std::uint32_t>(tab[i]) << (width_ * i);
    return code;
  }

  std::uint32_t encode_applied(const std::vector<Pattern>& tab,
                               const ToffoliGate& g) const {
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < tab.size(); ++i) {
      Pattern v = tab[i];
      if ((v & g.controls) == g.controls) v ^= Pattern{1} << g.target;
      code |= static_cast<std::uint32_t>(v) << (width_ * i);
    }
    return code;
  }

  void decode(std::uint32_t code, std::vector<Pattern>& tab) const {
    const Pattern lines = (Pattern{1} << width_) - 1;
    for (std::size_t i = 0; i < tab.size(); ++i)
      tab[i] = (code >> (width_ * i)) & lines;
  }

  int width_;
  std::vector<ToffoliGate> gates_;
  std::uint32_t id_code_ = 0;
  std::unordered_map<std::uint32_t, long long> dist_;
  std::unordered_map<std::uint32_t, std::uint16_t> parent_;
};

const SmallTable& small_table(int width, const CostModel& model) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<SmallTable>> cache;
  std::string key(1, static_cast<char>(width));
  for (int c = 0; c < width; ++c) {
    long long v = model.gate_cost(
        ToffoliGate((Pattern{1} << c) - 1, width - 1), false);
    key.append(reinterpret_cast<const char*>(&v), sizeof v);
  }
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<SmallTable>(width, model);
  return *slot;
}

std::string toolchain_key(const ReversibleFunction& f) {
  std::string key(1, static_cast<char>(f.width));
  key.append(reinterpret_cast<const char*>(f.table.data()),
             f.table.size() * sizeof(Pattern));
  return key;
}

}  // namespace

Toolchain make_toolchain(const PipelineOptions& opts) {
  PipelineOptions inner = opts;
  inner.resynth = ResynthStage::None;
  auto cache =
      std::make_shared<std::unordered_map<std::string, Network>>();
  return [inner, cache](const ReversibleFunction& f) {
    if (f.width <= 3) return small_table(f.width, inner.model).net_for(f);
    std::string key = toolchain_key(f);
    auto it = cache->find(key);
    if (it != cache->end()) return it->second;
    Network net = windowed_engine_net(f, inner);
    if (cache->size() < 200000) cache->emplace(std::move(key), net);
    return net;
  };
}

PipelineReport synthesize_best(const ReversibleFunction& f,
                               const PipelineOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  PipelineReport rep;

  std::vector<Candidate> cands = engine_candidates(f, opts);
  const Candidate* best = nullptr;
  bool have_raw = false;
  for (auto& c : cands) {
    rep.candidates.push_back(c.run);
    if (!c.run.converged) rep.any_diverged = true;
    if (!c.usable) continue;
    if (!have_raw || cost_compare(c.run.cost_raw, rep.cost_engines) ==
                         std::strong_ordering::less) {
      rep.cost_engines = c.run.cost_raw;
      have_raw = true;
    }
    if (!best || cost_compare(c.run.cost_templated,
                              best->run.cost_templated) ==
                     std::strong_ordering::less)
      best = &c;
  }
  if (!best) throw std::runtime_error("no synthesis engine converged");
  rep.best = best->net;
  rep.cost_templates = network_cost(rep.best, opts.model);

  Toolchain tool = make_toolchain(opts);
  const bool want_random = opts.resynth == ResynthStage::Random ||
                           opts.resynth == ResynthStage::Both;
  const bool want_exhaustive = opts.resynth == ResynthStage::Exhaustive ||
                               opts.resynth == ResynthStage::Both;
  if (want_random)
    rep.best = random_driver(rep.best, opts.resynth_cfg, tool, opts.model);
  rep.cost_random = network_cost(rep.best, opts.model);
  // Alternate the drivers while they keep finding something: an exhaustive
  // sweep often opens windows a reseeded random walk then shortens further.
  for (int round = 0; round < 4; ++round) {
    CostValue before = network_cost(rep.best, opts.model);
    if (want_exhaustive)
      rep.best =
          exhaustive_driver(rep.best, opts.resynth_cfg, tool, opts.model);
    if (want_random && round < 3) {
      ResynthConfig cfg = opts.resynth_cfg;
      cfg.rng_seed += static_cast<std::uint64_t>(100 * (round + 1));
      rep.best = random_driver(rep.best, cfg, tool, opts.model);
    }
    if (cost_compare(network_cost(rep.best, opts.model), before) !=
        std::strong_ordering::less)
      break;
  }
  // The last action may have been a lateral random drift; settle back on an
  // exhaustive fixpoint.
  if (want_exhaustive)
    rep.best =
        exhaustive_driver(rep.best, opts.resynth_cfg, tool, opts.model);
  // Splices can leave rewritable seams across window boundaries; clear
  // them with template passes, re-running the exhaustive driver whenever a
  // rewrite changed the net, until both are quiet.
  if (opts.resynth != ResynthStage::None && opts.use_templates) {
    for (int i = 0; i < 4; ++i) {
      Network t = apply_templates(rep.best, *opts.library, opts.model,
                                  opts.template_window);
      if (t.gates == rep.best.gates) break;
      rep.best = std::move(t);
      if (want_exhaustive)
        rep.best =
            exhaustive_driver(rep.best, opts.resynth_cfg, tool, opts.model);
    }
  }
  rep.cost_exhaustive = network_cost(rep.best, opts.model);

  rep.verified = network_function(rep.best) == f;
  rep.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

long long StudyHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0LL);
}

double StudyHistogram::weighted_average() const {
  long long n = total();
  if (n == 0) return 0.0;
  long long sum = 0;
  for (std::size_t g = 0; g < counts.size(); ++g)
    sum += static_cast<long long>(g) * counts[g];
  return static_cast<double>(sum) / static_cast<double>(n);
}

StudyHistogram optimal_distribution() {
  DepthOracle oracle(3, 16);
  StudyHistogram h;
  h.counts = oracle.depth_counts();
  return h;
}

namespace {

std::vector<std::vector<Pattern>> all_3line_tables() {
  std::vector<Pattern> perm(8);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<Pattern>> tables;
  tables.reserve(40320);
  do {
    tables.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return tables;
}

StudyHistogram tabulate(
    const std::vector<std::vector<Pattern>>& tables,
    const std::function<long long(const ReversibleFunction&)>& gate_count_of,
    int threads) {
  if (threads <= 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::vector<long long>> partial(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      auto& counts = partial[t];
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= tables.size()) break;
        long long g = gate_count_of(ReversibleFunction(3, tables[i]));
        if (g < 0) throw std::runtime_error("negative gate count");
        if (static_cast<std::size_t>(g) >= counts.size())
          counts.resize(g + 1, 0);
        ++counts[g];
      }
    });
  for (auto& th : pool) th.join();

  StudyHistogram h;
  for (const auto& counts : partial) {
    if (counts.size() > h.counts.size()) h.counts.resize(counts.size(), 0);
    for (std::size_t g = 0; g < counts.size(); ++g) h.counts[g] += counts[g];
  }
  return h;
}

}  // namespace

StudyHistogram study3x3(
    const std::function<long long(const ReversibleFunction&)>& gate_count_of,
    int threads) {
  return tabulate(all_3line_tables(), gate_count_of, threads);
}

StudyHistogram study3x3_sampled(
    const std::function<long long(const ReversibleFunction&)>& gate_count_of,
    int sample, std::uint64_t seed, int threads) {
  std::vector<std::vector<Pattern>> tables = all_3line_tables();
  std::mt19937_64 rng(seed);
  std::shuffle(tables.begin(), tables.end(), rng);
  if (sample >= 0 && static_cast<std::size_t>(sample) < tables.size())
    tables.resize(sample);
  return tabulate(tables, gate_count_of, threads);
}

// ---------------------------------------------------------------------------
// Benchmark generators

namespace {

ReversibleFunction from_lambda(int width,
                               const std::function<Pattern(Pattern)>& f) {
  std::vector<Pattern> table(std::size_t{1} << width);
  for (std::size_t x = 0; x < table.size(); ++x)
    table[x] = f(static_cast<Pattern>(x));
  return ReversibleFunction(width, std::move(table));
}

ReversibleFunction hwb(int n) {
  return from_lambda(n, [n](Pattern x) {
    int r = std::popcount(x) % n;
    Pattern mask = (Pattern{1} << n) - 1;
    return static_cast<Pattern>(((x << r) | (x >> (n - r))) & mask);
  });
}

ReversibleFunction cycle(int k, int m) {
  return from_lambda(k + m, [k, m](Pattern x) {
    Pattern low = x & ((Pattern{1} << k) - 1);
    Pattern high = x >> k;
    if (high == (Pattern{1} << m) - 1)
      low = (low + 1) & ((Pattern{1} << k) - 1);
    return low | (high << k);
  });
}

ReversibleFunction mod_flag(int bits, int divisor) {
  // bits value lines plus one flag line that toggles when value % divisor
  // is zero.
  return from_lambda(bits + 1, [bits, divisor](Pattern x) {
    Pattern v = x & ((Pattern{1} << bits) - 1);
    if (v % divisor == 0) x ^= Pattern{1} << bits;
    return x;
  });
}

ReversibleFunction mod_adder(int bits, Pattern modulus) {
  return from_lambda(2 * bits, [bits, modulus](Pattern x) {
    Pattern a = x & ((Pattern{1} << bits) - 1);
    Pattern b = x >> bits;
    if (a < modulus && b < modulus) b = (a + b) % modulus;
    return a | (b << bits);
  });
}

ReversibleFunction rd53() {
  // Five data lines, two garbage lines; the popcount c2 c1 s0 of the data
  // lands in (line 6 xor, line 5 xor, line 0), lines 1..4 keep x2..x5.
  return from_lambda(7, [](Pattern x) {
    int count = std::popcount(x & 0x1Fu);
    Pattern out = x & 0x1Eu;            // x2..x5 stay put
    out |= static_cast<Pattern>(count & 1);
    out |= (x ^ (static_cast<Pattern>(count) << 4)) & 0x60u;
    return out;
  });
}

ReversibleFunction mod5_flag4() {
  // The classic 5-line mod-5 detector: v mod 5 == 0 iff the high bit pair
  // equals the low bit pair, tested in place; the value lines come out
  // scrambled (garbage), as in the published circuit.
  Network net(5);
  net.gates.emplace_back(0b01000u, 1);   // TOF(d;b)
  net.gates.emplace_back(0b00100u, 0);   // TOF(c;a)
  net.gates.emplace_back(0u, 1);         // TOF(;b)
  net.gates.emplace_back(0u, 0);         // TOF(;a)
  net.gates.emplace_back(0b00011u, 4);   // TOF(a,b;e)
  return network_function(net);
}

ReversibleFunction add3() {
  Network net(4);
  net.gates.emplace_back(0b0011u, 3);
  net.gates.emplace_back(0b0001u, 1);
  net.gates.emplace_back(0b0110u, 3);
  net.gates.emplace_back(0b0010u, 2);
  return network_function(net);
}

}  // namespace

std::vector<std::string> benchmark_names() {
  return {"3_17",      "4_49",      "add3",   "ham3",         "hwb4",
          "hwb5",      "hwb6",      "hwb7",   "hwb8",         "hwb9",
          "hwb10",     "hwb11",     "4mod5",  "5mod5",        "cycle10_2",
          "cycle17_3", "cycle18_3", "rd53",   "mod5adder",    "mod1024adder"};
}

ReversibleFunction generate_benchmark(const std::string& name) {
  if (name == "3_17") return ReversibleFunction(3, {7, 1, 4, 3, 0, 2, 6, 5});
  if (name == "4_49")
    return ReversibleFunction(
        4, {15, 1, 12, 3, 5, 6, 8, 7, 0, 10, 13, 9, 2, 4, 14, 11});
  if (name == "ham3") return ReversibleFunction(3, {0, 7, 1, 6, 5, 2, 3, 4});
  if (name == "add3") return add3();
  if (name == "4mod5") return mod5_flag4();
  if (name == "5mod5") return mod_flag(5, 5);
  if (name == "rd53") return rd53();
  if (name == "mod5adder") return mod_adder(3, 5);
  if (name == "mod1024adder") return mod_adder(10, 1024);
  if (name.rfind("hwb", 0) == 0) {
    int n = std::stoi(name.substr(3));
    if (n < 2 || n > kMaxWidth) throw std::invalid_argument("bad hwb width");
    return hwb(n);
  }
  if (name.rfind("cycle", 0) == 0) {
    std::size_t us = name.find('_');
    if (us == std::string::npos)
      throw std::invalid_argument("unknown benchmark " + name);
    int k = std::stoi(name.substr(5, us - 5));
    int m = std::stoi(name.substr(us + 1));
    if (k < 1 || m < 1 || k + m > kMaxWidth)
      throw std::invalid_argument("bad cycle parameters");
    return cycle(k, m);
  }
  throw std::invalid_argument("unknown benchmark " + name);
}

BenchmarkRow run_benchmark(const ReversibleFunction& f,
                           const std::string& name,
                           const PipelineOptions& base) {
  BenchmarkRow row;
  row.name = name;
  row.width = f.width;

  PipelineOptions gc = base;
  gc.model = CostModel::gate_count();
  PipelineReport rg = synthesize_best(f, gc);
  row.net_gc = rg.best;
  row.gc_gc = static_cast<long long>(rg.best.size());
  CostValue q = network_cost(rg.best, CostModel::quantum());
  row.qc_gc = q.value;
  row.star_gc = q.starred;

  PipelineOptions qm = base;
  qm.model = CostModel::quantum();
  PipelineReport rq = synthesize_best(f, qm);
  row.net_qc = rq.best;
  row.gc_qc = static_cast<long long>(rq.best.size());
  CostValue q2 = network_cost(rq.best, CostModel::quantum());
  row.qc_qc = q2.value;
  row.star_qc = q2.starred;

  row.verified = rg.verified && rq.verified;
  return row;
}

}  // namespace rls
