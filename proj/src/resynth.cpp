#include "rls/resynth.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <random>
#include <stdexcept>

namespace rls {

namespace {

using Clock = std::chrono::steady_clock;

struct Improvement {
  Network net;
  CostValue cost;
  std::size_t start;
  std::size_t length;
};

// Deterministic preference: cheapest, then earliest window, then shortest.
bool better(const Improvement& a, const Improvement& b) {
  auto c = cost_compare(a.cost, b.cost);
  if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
  if (a.start != b.start) return a.start < b.start;
  return a.length < b.length;
}

}  // namespace

Subnetwork subnetwork_function(const Network& net, std::size_t start,
                               std::size_t length) {
  if (length < 1 || start + length > net.size())
    throw std::out_of_range("subnetwork window out of range");
  Pattern mask = 0;
  for (std::size_t i = start; i < start + length; ++i)
    mask |= net.gates[i].controls | (Pattern{1} << net.gates[i].target);

  Subnetwork sub;
  std::array<int, 32> to_compact;
  to_compact.fill(-1);
  for (int l = 0; l < net.width; ++l)
    if (mask & (Pattern{1} << l)) {
      to_compact[l] = static_cast<int>(sub.lines.size());
      sub.lines.push_back(l);
    }

  int w = static_cast<int>(sub.lines.size());
  std::vector<Pattern> table(std::size_t{1} << w);
  for (std::size_t x = 0; x < table.size(); ++x) {
    Pattern v = static_cast<Pattern>(x);
    for (std::size_t i = start; i < start + length; ++i) {
      const ToffoliGate& g = net.gates[i];
      Pattern c = 0;
      for (int l = 0; l < net.width; ++l)
        if (g.controls & (Pattern{1} << l)) c |= Pattern{1} << to_compact[l];
      if ((v & c) == c) v ^= Pattern{1} << to_compact[g.target];
    }
    table[x] = v;
  }
  sub.function = ReversibleFunction(w, std::move(table));
  return sub;
}

std::optional<Network> resynthesize_window(const Network& net,
                                           std::size_t start,
                                           std::size_t length,
                                           const Toolchain& toolchain,
                                           const CostModel& model,
                                           bool allow_equal) {
  Subnetwork sub = subnetwork_function(net, start, length);
  Network redone = toolchain(sub.function);
  if (redone.width != sub.function.width ||
      network_function(redone) != sub.function)
    return std::nullopt;  // a broken toolchain must never corrupt the net

  Network out(net.width);
  for (std::size_t i = 0; i < start; ++i) out.gates.push_back(net.gates[i]);
  for (const auto& g : redone.gates) {
    Pattern c = 0;
    for (int l = 0; l < redone.width; ++l)
      if (g.controls & (Pattern{1} << l)) c |= Pattern{1} << sub.lines[l];
    out.gates.emplace_back(c, sub.lines[g.target]);
  }
  for (std::size_t i = start + length; i < net.size(); ++i)
    out.gates.push_back(net.gates[i]);

  auto cmp = cost_compare(network_cost(out, model), network_cost(net, model));
  if (cmp == std::strong_ordering::less) return out;
  if (allow_equal && cmp == std::strong_ordering::equal &&
      out.gates != net.gates)
    return out;
  return std::nullopt;
}

namespace {

Network random_walk(const Network& net, const ResynthConfig& cfg,
                    std::uint64_t seed, const Toolchain& toolchain,
                    const CostModel& model,
                    const std::optional<Clock::time_point>& deadline) {
  Network cur = net;
  Network best_seen = net;
  CostValue best_cost = network_cost(best_seen, model);
  std::mt19937_64 rng(seed);
  for (int it = 0; it < cfg.iterations; ++it) {
    if (cur.size() < static_cast<std::size_t>(cfg.min_length)) break;
    CostValue cur_cost = network_cost(cur, model);
    std::optional<Improvement> best;
    std::optional<Network> plateau;
    for (int s = 0; s < cfg.samples_per_iteration; ++s) {
      if (deadline && Clock::now() > *deadline) break;
      std::size_t max_start = cur.size() - cfg.min_length;
      std::size_t start =
          std::uniform_int_distribution<std::size_t>(0, max_start)(rng);
      std::size_t longest = cur.size() - start;
      if (cfg.max_window > 0)
        longest = std::min(longest, static_cast<std::size_t>(cfg.max_window));
      std::size_t length = std::uniform_int_distribution<std::size_t>(
          cfg.min_length, longest)(rng);
      auto redone = resynthesize_window(cur, start, length, toolchain, model,
                                        /*allow_equal=*/true);
      if (!redone) continue;
      CostValue c = network_cost(*redone, model);
      if (cost_compare(c, cur_cost) == std::strong_ordering::less) {
        Improvement cand{std::move(*redone), c, start, length};
        if (!best || better(cand, *best)) best = std::move(cand);
      } else if (!plateau) {
        plateau = std::move(*redone);
      }
    }
    // Take the best strict improvement; failing that, drift sideways at
    // equal cost so the next iterations see a different gate structure.
    if (best) {
      cur = std::move(best->net);
      if (cost_compare(network_cost(cur, model), best_cost) ==
          std::strong_ordering::less) {
        best_seen = cur;
        best_cost = network_cost(cur, model);
      }
    } else if (plateau) {
      cur = std::move(*plateau);
    }
    if (deadline && Clock::now() > *deadline) break;
  }
  return cost_compare(network_cost(cur, model), best_cost) ==
                 std::strong_ordering::greater
             ? best_seen
             : cur;
}

}  // namespace

Network random_driver(const Network& net, const ResynthConfig& cfg,
                      const Toolchain& toolchain, const CostModel& model) {
  if (!cfg.valid()) throw std::invalid_argument("bad resynthesis config");
  const auto deadline =
      cfg.time_limit_seconds
          ? std::optional<Clock::time_point>(
                Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                   std::chrono::duration<double>(
                                       *cfg.time_limit_seconds)))
          : std::nullopt;
  Network best = net;
  CostValue best_cost = network_cost(best, model);
  for (int r = 0; r < cfg.restarts; ++r) {
    Network cand =
        random_walk(net, cfg, cfg.rng_seed + static_cast<std::uint64_t>(r),
                    toolchain, model, deadline);
    CostValue c = network_cost(cand, model);
    if (cost_compare(c, best_cost) == std::strong_ordering::less) {
      best = std::move(cand);
      best_cost = c;
    }
    if (deadline && Clock::now() > *deadline) break;
  }
  return best;
}

Network exhaustive_driver(const Network& net, const ResynthConfig& cfg,
                          const Toolchain& toolchain, const CostModel& model) {
  if (!cfg.valid()) throw std::invalid_argument("bad resynthesis config");
  Network cur = net;
  const auto deadline =
      cfg.time_limit_seconds
          ? std::optional<Clock::time_point>(
                Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                   std::chrono::duration<double>(
                                       *cfg.time_limit_seconds)))
          : std::nullopt;

  bool improved = true;
  while (improved) {
    improved = false;
    std::size_t n = cur.size();
    if (n < static_cast<std::size_t>(cfg.min_length)) break;
    for (std::size_t start = 0; start + cfg.min_length <= n && !improved;
         ++start) {
      // max_window only throttles the random sampler; the exhaustive scan
      // covers every length — the rare long-window replacements it finds
      // are the big wins on wide networks.
      for (std::size_t length = n - start;
           length >= static_cast<std::size_t>(cfg.min_length); --length) {
        if (deadline && Clock::now() > *deadline) return cur;
        auto next =
            resynthesize_window(cur, start, length, toolchain, model);
        if (next) {
          cur = std::move(*next);
          improved = true;
          break;
        }
      }
    }
  }
  return cur;
}

}  // namespace rls
