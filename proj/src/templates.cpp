#include "rls/templates.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "rls/io.hpp"
#include "rls/search.hpp"
#include "rls/synthesis.hpp"

namespace rls {

namespace {

Network rotate_network(const Network& net, int r) {
  Network out(net.width);
  const int m = static_cast<int>(net.size());
  for (int i = 0; i < m; ++i) out.gates.push_back(net.gates[(r + i) % m]);
  return out;
}

// Simulates a gate list on the sub-space of the lines actually touched, so
// equality checks stay cheap even on wide networks.
std::vector<int> touched_lines(const std::vector<ToffoliGate>& gates) {
  Pattern mask = 0;
  for (const auto& g : gates) mask |= g.controls | (Pattern{1} << g.target);
  std::vector<int> lines;
  for (int i = 0; i < kMaxWidth + 11; ++i)
    if (mask & (Pattern{1} << i)) lines.push_back(i);
  return lines;
}

// Function of `gates` restricted to `lines` (which must cover every line the
// gates touch), as a table over 2^|lines| compact patterns.
std::vector<Pattern> compact_function(const std::vector<ToffoliGate>& gates,
                                      const std::vector<int>& lines) {
  std::array<int, 32> to_compact;
  to_compact.fill(-1);
  for (std::size_t i = 0; i < lines.size(); ++i) to_compact[lines[i]] = static_cast<int>(i);
  std::vector<ToffoliGate> compact;
  compact.reserve(gates.size());
  for (const auto& g : gates) {
    Pattern c = 0;
    for (int i = 0; i < 32; ++i)
      if (g.controls & (Pattern{1} << i)) c |= Pattern{1} << to_compact[i];
    compact.emplace_back(c, to_compact[g.target]);
  }
  std::vector<Pattern> table(std::size_t{1} << lines.size());
  for (std::size_t x = 0; x < table.size(); ++x) {
    Pattern v = static_cast<Pattern>(x);
    for (const auto& g : compact) v = apply_gate_to_pattern(g, v);
    table[x] = v;
  }
  return table;
}

bool gates_are_identity(const std::vector<ToffoliGate>& gates) {
  std::vector<int> lines = touched_lines(gates);
  if (lines.empty()) return true;
  std::vector<Pattern> table = compact_function(gates, lines);
  for (std::size_t x = 0; x < table.size(); ++x)
    if (table[x] != static_cast<Pattern>(x)) return false;
  return true;
}

}  // namespace

bool Template::cycle_is_irreducible(int rotation) const {
  return std::find(reducible_cycles.begin(), reducible_cycles.end(),
                   rotation) == reducible_cycles.end();
}

Network Template::t_line_network() const {
  Network net(t_lines);
  for (const auto& g : gates) net.gates.emplace_back(g.t_controls, g.target);
  return net;
}

bool is_moving_pair(const ToffoliGate& a, const ToffoliGate& b) {
  return (a.controls & (Pattern{1} << b.target)) == 0 &&
         (b.controls & (Pattern{1} << a.target)) == 0;
}

bool can_gather(const Network& net, const std::vector<std::size_t>& positions,
                std::size_t at) {
  for (std::size_t p : positions) {
    std::size_t lo = std::min(p, at), hi = std::max(p, at);
    for (std::size_t q = lo + 1; q < hi; ++q) {
      if (std::binary_search(positions.begin(), positions.end(), q)) continue;
      if (!is_moving_pair(net.gates[p], net.gates[q])) return false;
    }
  }
  return true;
}

std::bitset<1 << kMaxTemplateSize> admissible_vectors(const Network& identity) {
  const int m = static_cast<int>(identity.size());
  if (m > kMaxTemplateSize)
    throw std::invalid_argument("cascade too long for a template");
  std::bitset<1 << kMaxTemplateSize> valid;
  for (std::uint32_t alpha = 0; alpha < (1u << m); ++alpha) {
    // A line controlling the gates at alpha's 1-positions disables exactly
    // those gates when the line carries 0; the rest must still compose to
    // the identity.
    std::vector<ToffoliGate> kept;
    for (int i = 0; i < m; ++i)
      if (!(alpha & (1u << i))) kept.push_back(identity.gates[i]);
    if (gates_are_identity(kept)) valid.set(alpha);
  }
  return valid;
}

Template generalize(const Network& identity) {
  const int m = static_cast<int>(identity.size());
  if (m > kMaxTemplateSize)
    throw std::invalid_argument("cascade too long for a template");
  Pattern target_mask = 0;
  Pattern used_mask = 0;
  for (const auto& g : identity.gates) {
    target_mask |= Pattern{1} << g.target;
    used_mask |= g.controls | (Pattern{1} << g.target);
  }
  std::array<int, 32> t_of_line;
  t_of_line.fill(-1);
  int t_count = 0;
  for (int i = 0; i < identity.width; ++i)
    if (target_mask & (Pattern{1} << i)) t_of_line[i] = t_count++;

  // Control-only lines with the same characteristic vector collapse into
  // one replicable class.
  std::vector<std::uint32_t> class_vecs;
  std::array<int, 32> class_of_line;
  class_of_line.fill(-1);
  for (int i = 0; i < identity.width; ++i) {
    if (!(used_mask & (Pattern{1} << i)) || t_of_line[i] >= 0) continue;
    std::uint32_t vec = 0;
    for (int gi = 0; gi < m; ++gi)
      if (identity.gates[gi].controls & (Pattern{1} << i)) vec |= 1u << gi;
    auto it = std::find(class_vecs.begin(), class_vecs.end(), vec);
    if (it == class_vecs.end()) {
      class_of_line[i] = static_cast<int>(class_vecs.size());
      class_vecs.push_back(vec);
    } else {
      class_of_line[i] = static_cast<int>(it - class_vecs.begin());
    }
  }

  Template tpl;
  tpl.t_lines = t_count;
  tpl.class_vectors = class_vecs;
  for (const auto& g : identity.gates) {
    TemplateGate tg;
    tg.target = t_of_line[g.target];
    for (int i = 0; i < identity.width; ++i) {
      if (!(g.controls & (Pattern{1} << i))) continue;
      if (t_of_line[i] >= 0)
        tg.t_controls |= 1u << t_of_line[i];
      else
        tg.class_controls |= 1u << class_of_line[i];
    }
    tpl.gates.push_back(tg);
  }
  tpl.valid_vectors = admissible_vectors(tpl.t_line_network());
  for (std::uint32_t vec : tpl.class_vectors)
    if (!tpl.valid_vectors.test(vec))
      throw std::logic_error("control class with inadmissible vector");
  return tpl;
}

namespace {

// Concrete instance used for cycle classification and verification: the
// t-line cascade plus `copies` fresh control lines per class.
Network instantiate(const Template& tpl, int copies) {
  int width = tpl.t_lines + copies * static_cast<int>(tpl.class_vectors.size());
  Network net(width);
  for (int gi = 0; gi < tpl.size(); ++gi) {
    const TemplateGate& tg = tpl.gates[gi];
    Pattern c = tg.t_controls;
    for (std::size_t k = 0; k < tpl.class_vectors.size(); ++k)
      if (tg.class_controls & (1u << k))
        for (int cp = 0; cp < copies; ++cp)
          c |= Pattern{1} << (tpl.t_lines + copies * static_cast<int>(k) + cp);
    net.gates.emplace_back(c, tg.target);
  }
  return net;
}

std::vector<Template> library_up_to(const std::vector<Template>& library,
                                    int size) {
  std::vector<Template> out;
  for (const auto& t : library)
    if (t.size() <= size) out.push_back(t);
  return out;
}

}  // namespace

void classify_cycles(Template& tpl, const std::vector<Template>& library) {
  const int m = tpl.size();
  const Network inst = instantiate(tpl, 1);
  const CostModel gc = CostModel::gate_count();
  const std::vector<Template> lib = library_up_to(library, m);
  tpl.reducible_cycles.clear();
  for (int r = 0; r < m; ++r) {
    Network rot = rotate_network(inst, r);
    Network red = apply_templates(rot, lib, gc);
    if (static_cast<int>(red.size()) < m) tpl.reducible_cycles.push_back(r);
  }
}

bool verify_template(const Template& candidate,
                     const std::vector<Template>& library) {
  const int m = candidate.size();
  if (m < 1 || m > kMaxTemplateSize || candidate.t_lines < 1) return false;
  for (const auto& g : candidate.gates) {
    if (g.target < 0 || g.target >= candidate.t_lines) return false;
    if (g.t_controls & (1u << g.target)) return false;
    if (g.t_controls >> candidate.t_lines) return false;
    if (g.class_controls >> candidate.class_vectors.size()) return false;
  }
  if (!network_function(candidate.t_line_network()).is_identity()) return false;
  if (candidate.valid_vectors !=
      admissible_vectors(candidate.t_line_network()))
    return false;
  for (std::uint32_t vec : candidate.class_vectors)
    if (!candidate.valid_vectors.test(vec)) return false;
  // Representative instantiations: every class bound to one and to two
  // lines must still realize the identity.
  for (int copies : {1, 2})
    if (!network_function(instantiate(candidate, copies)).is_identity())
      return false;
  Template probe = candidate;
  classify_cycles(probe, library);
  return static_cast<int>(probe.reducible_cycles.size()) < m;
}

// ---------------------------------------------------------------------------
// Matching

namespace {

struct MatchState {
  std::vector<std::size_t> pos;          // matched net positions, descending
  std::vector<int> tbind;                // t-line -> net line, -1 if unbound
  Pattern bound = 0;                     // net lines bound to t-lines
  std::uint32_t seen = 0;                // template-gate positions matched
  std::array<std::uint16_t, 32> care{};  // per net line, bits = template pos
  std::array<std::uint16_t, 32> val{};
};

class Matcher {
 public:
  Matcher(const Network& net, const Template& tpl, const CostModel& model,
          const std::vector<int>& orig, std::size_t start,
          std::size_t low_limit)
      : net_(net),
        tpl_(tpl),
        model_(model),
        orig_(orig),
        start_(start),
        low_limit_(low_limit),
        old_cost_(network_cost(net, model)) {
    for (std::uint32_t a = 0; a < (1u << tpl.size()); ++a)
      if (tpl.valid_vectors.test(a))
        valid_.push_back(static_cast<std::uint16_t>(a));
    st_.tbind.assign(tpl.t_lines, -1);
  }

  struct Result {
    std::vector<ToffoliGate> gates;
    std::size_t new_start = 0;
  };

  std::optional<Result> run() {
    if (try_gate(0, start_)) return result_;
    return std::nullopt;
  }

 private:
  const Network& net_;
  const Template& tpl_;
  const CostModel& model_;
  const std::vector<int>& orig_;
  std::size_t start_;
  std::size_t low_limit_;
  CostValue old_cost_;
  std::vector<std::uint16_t> valid_;
  MatchState st_;
  std::optional<Result> result_;

  bool line_free(int line) const {
    return !(st_.bound & (Pattern{1} << line)) && st_.care[line] == 0;
  }

  bool observations_feasible() const {
    for (int l = 0; l < net_.width; ++l) {
      if (st_.care[l] == 0) continue;
      bool ok = false;
      for (std::uint16_t a : valid_)
        if ((a & st_.care[l]) == st_.val[l]) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  }

  // Matches template position orig_[seq] against the network gate at `np`,
  // enumerating bindings for any not-yet-bound control t-lines; recurses to
  // deeper matches first, then tries a replacement at the current depth.
  bool try_gate(std::size_t seq, std::size_t np) {
    const TemplateGate& tg = tpl_.gates[orig_[seq]];
    const ToffoliGate& g = net_.gates[np];

    const MatchState saved = st_;
    bool ok = true;
    if (st_.tbind[tg.target] >= 0) {
      ok = g.target == st_.tbind[tg.target];
    } else {
      ok = line_free(g.target);
      if (ok) {
        st_.tbind[tg.target] = g.target;
        st_.bound |= Pattern{1} << g.target;
      }
    }
    Pattern consumed = 0;
    std::vector<int> unbound;  // template t-lines needing a control binding
    if (ok) {
      for (int u = 0; u < tpl_.t_lines && ok; ++u) {
        bool want = tg.t_controls & (1u << u);
        int b = st_.tbind[u];
        if (want) {
          if (b >= 0) {
            if (g.controls & (Pattern{1} << b))
              consumed |= Pattern{1} << b;
            else
              ok = false;
          } else {
            unbound.push_back(u);
          }
        } else if (b >= 0 && u != tg.target) {
          // A bound t-line absent from the template gate cannot carry a
          // control on the network gate.
          if (g.controls & (Pattern{1} << b)) ok = false;
        }
      }
    }
    if (ok && bind_controls(seq, np, tg, g, consumed, unbound, 0)) return true;
    st_ = saved;
    return false;
  }

  bool bind_controls(std::size_t seq, std::size_t np, const TemplateGate& tg,
                     const ToffoliGate& g, Pattern consumed,
                     const std::vector<int>& unbound, std::size_t k) {
    if (k == unbound.size()) return commit_gate(seq, np, g, consumed);
    Pattern options = g.controls & ~consumed;
    for (int l = 0; l < net_.width; ++l) {
      if (!(options & (Pattern{1} << l)) || !line_free(l)) continue;
      const MatchState saved = st_;
      st_.tbind[unbound[k]] = l;
      st_.bound |= Pattern{1} << l;
      if (bind_controls(seq, np, tg, g, consumed | (Pattern{1} << l), unbound,
                        k + 1))
        return true;
      st_ = saved;
    }
    return false;
  }

  bool commit_gate(std::size_t seq, std::size_t np, const ToffoliGate& g,
                   Pattern consumed) {
    const MatchState saved = st_;
    const int o = orig_[seq];
    const std::uint16_t obit = static_cast<std::uint16_t>(1u << o);
    // Record control observations on every non-t line: lines observed
    // before extend their vectors; new extra lines start with zeros at all
    // previously matched template positions.
    Pattern extras = g.controls & ~consumed & ~st_.bound;
    for (int l = 0; l < net_.width; ++l) {
      bool has = extras & (Pattern{1} << l);
      if (st_.care[l] != 0) {
        st_.care[l] |= obit;
        if (has) st_.val[l] |= obit;
      } else if (has) {
        st_.care[l] = static_cast<std::uint16_t>(st_.seen | obit);
        st_.val[l] = obit;
      }
    }
    st_.seen |= obit;
    st_.pos.push_back(np);
    bool ok = observations_feasible();
    std::vector<std::size_t> asc;
    if (ok) {
      asc.assign(st_.pos.begin(), st_.pos.end());
      std::sort(asc.begin(), asc.end());
      ok = std::any_of(asc.begin(), asc.end(), [&](std::size_t at) {
        return can_gather(net_, asc, at);
      });
    }
    if (ok) {
      // Prefer the longest match: grow first, fall back to replacing here.
      if (seq + 1 < static_cast<std::size_t>(tpl_.size())) {
        for (std::size_t next = np; next-- > low_limit_;)
          if (try_gate(seq + 1, next)) return true;
      }
      if (try_replace(seq + 1, asc)) return true;
    }
    st_ = saved;
    return false;
  }

  bool try_replace(std::size_t p, const std::vector<std::size_t>& asc) {
    const int m = tpl_.size();
    // Gather point: the highest matched position everything can reach.
    std::size_t at = 0;
    bool found = false;
    for (std::size_t a : asc)
      if (can_gather(net_, asc, a)) {
        at = a;
        found = true;
      }
    if (!found) return false;

    // Minimal completion of each observed extra line's vector.
    std::array<std::uint16_t, 32> alpha{};
    for (int l = 0; l < net_.width; ++l) {
      if (st_.care[l] == 0) continue;
      int best_pop = -1;
      std::uint16_t best = 0;
      for (std::uint16_t a : valid_) {
        if ((a & st_.care[l]) != st_.val[l]) continue;
        int pop = std::popcount(a);
        if (best_pop < 0 || pop < best_pop ||
            (pop == best_pop && a < best)) {
          best_pop = pop;
          best = a;
        }
      }
      if (best_pop < 0) return false;
      alpha[l] = best;
    }

    // Bind any t-line still free that the remaining gates need.  A fresh
    // line can only carry controls; a fresh target can never check out.
    std::vector<int> tbind = st_.tbind;
    Pattern taken = st_.bound;
    for (std::size_t q = p; q < static_cast<std::size_t>(m); ++q) {
      const TemplateGate& tg = tpl_.gates[orig_[q]];
      if (tbind[tg.target] < 0) return false;
      for (int u = 0; u < tpl_.t_lines; ++u) {
        if (!(tg.t_controls & (1u << u)) || tbind[u] >= 0) continue;
        int pick = -1;
        for (int l = 0; l < net_.width; ++l)
          if (!(taken & (Pattern{1} << l)) && st_.care[l] == 0) {
            pick = l;
            break;
          }
        if (pick < 0) return false;
        tbind[u] = pick;
        taken |= Pattern{1} << pick;
      }
    }

    std::vector<ToffoliGate> replacement;
    for (std::size_t q = p; q < static_cast<std::size_t>(m); ++q) {
      const TemplateGate& tg = tpl_.gates[orig_[q]];
      Pattern c = 0;
      for (int u = 0; u < tpl_.t_lines; ++u)
        if (tg.t_controls & (1u << u)) c |= Pattern{1} << tbind[u];
      for (int l = 0; l < net_.width; ++l)
        if (alpha[l] & (1u << orig_[q])) c |= Pattern{1} << l;
      if (c & (Pattern{1} << tbind[tg.target])) return false;
      replacement.emplace_back(c, tbind[tg.target]);
    }

    // Exact check: the gathered block and its proposed replacement must
    // realize the same function on the lines involved.
    std::vector<ToffoliGate> block;
    for (std::size_t a : asc) block.push_back(net_.gates[a]);
    {
      std::vector<ToffoliGate> both = block;
      both.insert(both.end(), replacement.begin(), replacement.end());
      std::vector<int> lines = touched_lines(both);
      if (compact_function(block, lines) !=
          compact_function(replacement, lines))
        return false;
    }

    Result res;
    std::size_t below = 0;
    for (std::size_t i = 0; i < net_.size(); ++i) {
      bool matched = std::binary_search(asc.begin(), asc.end(), i);
      if (i < at && !matched) ++below;
      if (i == at)
        for (const auto& g : replacement) res.gates.push_back(g);
      if (!matched) res.gates.push_back(net_.gates[i]);
    }
    res.new_start = below;

    Network candidate(net_.width, res.gates);
    if (cost_compare(network_cost(candidate, model_), old_cost_) !=
        std::strong_ordering::less)
      return false;
    result_ = std::move(res);
    return true;
  }
};

}  // namespace

Network apply_templates(const Network& net,
                        const std::vector<Template>& library,
                        const CostModel& model, int window) {
  std::vector<std::size_t> order(library.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return library[a].size() < library[b].size();
  });

  Network cur = net;
  std::size_t start = 1;
  while (start < cur.size()) {
    std::size_t low = start + 1 > static_cast<std::size_t>(window)
                          ? start + 1 - window
                          : 0;
    bool replaced = false;
    for (std::size_t oi : order) {
      const Template& tpl = library[oi];
      const int m = tpl.size();
      for (int rot = 0; rot < m && !replaced; ++rot) {
        if (!tpl.cycle_is_irreducible(rot)) continue;
        for (int dir : {1, -1}) {
          std::vector<int> orig(m);
          for (int i = 0; i < m; ++i)
            orig[i] = ((rot + dir * i) % m + m) % m;
          Matcher matcher(cur, tpl, model, orig, start, low);
          if (auto res = matcher.run()) {
            cur.gates = std::move(res->gates);
            start = std::max<std::size_t>(res->new_start, 1);
            replaced = true;
            break;
          }
        }
      }
      if (replaced) break;
    }
    if (!replaced) ++start;
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Finder

void for_each_identity_cascade(
    int lines, int length, bool skip_adjacent_repeats,
    const std::function<void(const std::vector<ToffoliGate>&)>& fn) {
  if (length <= 0) return;
  const std::vector<ToffoliGate> gates = candidate_gates(lines);
  const int horizon = lines <= 3 ? length : (length + 1) / 2;
  DepthOracle oracle(lines, horizon);

  std::vector<Pattern> id(std::size_t{1} << lines);
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<Pattern>(i);
  std::vector<ToffoliGate> seq;

  auto dfs = [&](auto&& self, const std::vector<Pattern>& table, int last,
                 int depth) -> void {
    for (std::size_t gi = 0; gi < gates.size(); ++gi) {
      if (skip_adjacent_repeats && static_cast<int>(gi) == last) continue;
      std::vector<Pattern> t2 = table;
      for (auto& v : t2) v = apply_gate_to_pattern(gates[gi], v);
      seq.push_back(gates[gi]);
      if (depth + 1 == length) {
        if (t2 == id) fn(seq);
      } else if (oracle.query(t2) <= length - depth - 1) {
        self(self, t2, static_cast<int>(gi), depth + 1);
      }
      seq.pop_back();
    }
  };
  dfs(dfs, id, -1, 0);
}

namespace {

// Orientation-independent fingerprint of a generalized template: the
// minimum over all rotations and both directions of the relabeled gate
// list plus the correspondingly permuted admissible-vector set.
std::vector<std::uint32_t> canonical_key(const Template& tpl) {
  const int m = tpl.size();
  std::vector<std::uint32_t> best;
  for (int rot = 0; rot < m; ++rot) {
    for (int dir : {1, -1}) {
      std::vector<int> orig(m);
      for (int i = 0; i < m; ++i) orig[i] = ((rot + dir * i) % m + m) % m;
      std::vector<int> relabel(tpl.t_lines, -1);
      int next = 0;
      std::vector<std::uint32_t> key;
      key.push_back(static_cast<std::uint32_t>(m));
      key.push_back(static_cast<std::uint32_t>(tpl.t_lines));
      for (int i = 0; i < m; ++i) {
        const TemplateGate& tg = tpl.gates[orig[i]];
        if (relabel[tg.target] < 0) relabel[tg.target] = next++;
        for (int u = 0; u < tpl.t_lines; ++u)
          if ((tg.t_controls & (1u << u)) && relabel[u] < 0)
            relabel[u] = next++;
        std::uint32_t c = 0;
        for (int u = 0; u < tpl.t_lines; ++u)
          if (tg.t_controls & (1u << u)) c |= 1u << relabel[u];
        key.push_back(static_cast<std::uint32_t>(relabel[tg.target]));
        key.push_back(c);
      }
      std::vector<std::uint32_t> vecs;
      for (std::uint32_t a = 0; a < (1u << m); ++a) {
        if (!tpl.valid_vectors.test(a)) continue;
        std::uint32_t a2 = 0;
        for (int i = 0; i < m; ++i)
          if (a & (1u << orig[i])) a2 |= 1u << i;
        vecs.push_back(a2);
      }
      std::sort(vecs.begin(), vecs.end());
      key.insert(key.end(), vecs.begin(), vecs.end());
      if (best.empty() || key < best) best = key;
    }
  }
  return best;
}

}  // namespace

std::vector<Template> find_templates(int size, int lines,
                                     const std::vector<Template>& library) {
  std::vector<Template> found;
  std::vector<std::vector<std::uint32_t>> keys;
  std::vector<Template> ctx = library_up_to(library, size);
  const Pattern full = (Pattern{1} << lines) - 1;

  // At size 2 the duplicate-deletion rule itself is the adjacent repeat,
  // so repeats must be enumerated.  Above that, a cascade with an
  // adjacent repeat (cyclically, so also first == last) is the repeat
  // rule wrapped around a smaller identity and never yields a new rule;
  // skipping them cuts the enumeration by orders of magnitude.
  const bool skip_repeats = size > 2;
  for_each_identity_cascade(
      lines, size, skip_repeats,
      [&](const std::vector<ToffoliGate>& gates) {
        if (skip_repeats && gates.front() == gates.back()) return;
        Pattern used = 0;
        for (const auto& g : gates)
          used |= g.controls | (Pattern{1} << g.target);
        if (used != full) return;  // a smaller-line cascade in disguise

        Template tpl = generalize(Network(lines, gates));
        classify_cycles(tpl, ctx);
        if (static_cast<int>(tpl.reducible_cycles.size()) == size) return;

        std::vector<std::uint32_t> key = canonical_key(tpl);
        if (std::find(keys.begin(), keys.end(), key) != keys.end()) return;
        keys.push_back(std::move(key));
        found.push_back(tpl);
        ctx.push_back(found.back());
      });
  return found;
}

std::vector<Template> build_template_library(int max_size, bool with_size9) {
  std::vector<Template> lib;
  const auto t0 = std::chrono::steady_clock::now();
  auto phase = [&](int m, int lines) {
    std::size_t before = lib.size();
    for (Template& t : find_templates(m, lines, lib))
      lib.push_back(std::move(t));
    std::fprintf(stderr, "m=%d lines=%d: +%zu templates (%.1f s total)\n", m,
                 lines, lib.size() - before,
                 std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - t0)
                     .count());
  };
  for (int m = 2; m <= max_size; ++m)
    for (int lines = 1; lines <= 4; ++lines) phase(m, lines);
  if (with_size9 && max_size < 9)
    for (int lines = 1; lines <= 3; ++lines) phase(9, lines);
  std::stable_sort(lib.begin(), lib.end(),
                   [](const Template& a, const Template& b) {
                     return a.size() < b.size();
                   });
  return lib;
}

// ---------------------------------------------------------------------------
// Library file format

namespace {

std::string template_gate_text(const TemplateGate& g) {
  std::string out = "TOF(";
  bool first = true;
  for (int u = 0; u < 32; ++u)
    if (g.t_controls & (1u << u)) {
      if (!first) out += ",";
      out += "t" + std::to_string(u + 1);
      first = false;
    }
  for (int k = 0; k < 32; ++k)
    if (g.class_controls & (1u << k)) {
      if (!first) out += ",";
      out += "C" + std::to_string(k + 1);
      first = false;
    }
  out += ";t" + std::to_string(g.target + 1) + ")";
  return out;
}

TemplateGate parse_template_gate(const std::string& text, int t_lines,
                                 int classes, int line_no) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.substr(0, 4) != "TOF(" || s.back() != ')')
    throw ParseError(line_no, "expected TOF(...;t...)");
  s = s.substr(4, s.size() - 5);
  std::size_t semi = s.find(';');
  if (semi == std::string::npos)
    throw ParseError(line_no, "missing ';' before the target");
  std::string controls = s.substr(0, semi);
  std::string target = s.substr(semi + 1);

  auto parse_index = [&](const std::string& name, char kind, int limit) {
    if (name.size() < 2 || name[0] != kind)
      throw ParseError(line_no, "bad line name '" + name + "'");
    int idx = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i])))
        throw ParseError(line_no, "bad line name '" + name + "'");
      idx = idx * 10 + (name[i] - '0');
    }
    if (idx < 1 || idx > limit)
      throw ParseError(line_no, "line name '" + name + "' out of range");
    return idx - 1;
  };

  TemplateGate g;
  g.target = parse_index(target, 't', t_lines);
  std::stringstream cs(controls);
  std::string tok;
  while (std::getline(cs, tok, ',')) {
    if (tok.empty()) throw ParseError(line_no, "empty control name");
    if (tok[0] == 't') {
      int u = parse_index(tok, 't', t_lines);
      if (u == g.target)
        throw ParseError(line_no, "target cannot also be a control");
      g.t_controls |= 1u << u;
    } else {
      g.class_controls |= 1u << parse_index(tok, 'C', classes);
    }
  }
  return g;
}

}  // namespace

std::string format_template_library(const std::vector<Template>& library) {
  std::ostringstream out;
  for (const auto& tpl : library) {
    out << "template m=" << tpl.size() << " lines=" << tpl.t_lines << ","
        << tpl.class_vectors.size() << "\n";
    for (const auto& g : tpl.gates) out << template_gate_text(g) << "\n";
    out << "reducible-cycles:";
    for (int r : tpl.reducible_cycles) out << " " << r;
    out << "\n\n";
  }
  return out.str();
}

std::vector<Template> parse_template_library(std::istream& in) {
  std::vector<Template> lib;
  std::string line;
  int line_no = 0;
  std::optional<Template> cur;
  int expect_gates = 0;
  int classes = 0;
  std::vector<std::uint32_t> class_vecs;

  auto finish = [&]() {
    if (!cur) return;
    if (expect_gates != 0)
      throw ParseError(line_no, "template body shorter than its header says");
    cur->class_vectors.assign(static_cast<std::size_t>(classes), 0);
    for (int gi = 0; gi < cur->size(); ++gi)
      for (int k = 0; k < classes; ++k)
        if (cur->gates[gi].class_controls & (1u << k))
          cur->class_vectors[k] |= 1u << gi;
    cur->valid_vectors = admissible_vectors(cur->t_line_network());
    if (!network_function(cur->t_line_network()).is_identity())
      throw ParseError(line_no, "template cascade is not the identity");
    for (std::uint32_t vec : cur->class_vectors)
      if (!cur->valid_vectors.test(vec))
        throw ParseError(line_no, "control class with inadmissible vector");
    lib.push_back(std::move(*cur));
    cur.reset();
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = line;
    std::size_t h = trimmed.find('#');
    if (h != std::string::npos) trimmed = trimmed.substr(0, h);
    while (!trimmed.empty() &&
           std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    std::size_t b = 0;
    while (b < trimmed.size() &&
           std::isspace(static_cast<unsigned char>(trimmed[b])))
      ++b;
    trimmed = trimmed.substr(b);
    if (trimmed.empty()) continue;

    if (trimmed.rfind("template ", 0) == 0) {
      finish();
      int m = 0, t = 0, k = 0;
      if (std::sscanf(trimmed.c_str(), "template m=%d lines=%d,%d", &m, &t,
                      &k) != 3)
        throw ParseError(line_no, "bad template header");
      if (m < 1 || m > kMaxTemplateSize || t < 1 || t > kMaxTemplateSize ||
          k < 0 || k > kMaxTemplateSize)
        throw ParseError(line_no, "template header out of range");
      cur.emplace();
      cur->t_lines = t;
      expect_gates = m;
      classes = k;
    } else if (trimmed.rfind("reducible-cycles:", 0) == 0) {
      if (!cur) throw ParseError(line_no, "footer outside a template");
      std::stringstream rest(trimmed.substr(std::string("reducible-cycles:").size()));
      int r;
      while (rest >> r) {
        if (r < 0 || r >= static_cast<int>(cur->gates.size()) + expect_gates)
          throw ParseError(line_no, "cycle index out of range");
        cur->reducible_cycles.push_back(r);
      }
      finish();
    } else {
      if (!cur || expect_gates == 0)
        throw ParseError(line_no, "gate outside a template");
      cur->gates.push_back(
          parse_template_gate(trimmed, cur->t_lines, classes, line_no));
      --expect_gates;
    }
  }
  finish();
  return lib;
}

std::vector<Template> parse_template_library_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_template_library(in);
}

void write_template_library_file(const std::string& path,
                                 const std::vector<Template>& library) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << format_template_library(library);
}

}  // namespace rls
