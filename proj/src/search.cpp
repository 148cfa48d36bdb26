#include "rls/search.hpp"

#include <stdexcept>

#include "rls/synthesis.hpp"

namespace rls {

std::uint64_t pack_table(const std::vector<Pattern>& table, int lines) {
  std::uint64_t key = 0;
  for (std::size_t i = table.size(); i-- > 0;) key = (key << lines) | table[i];
  return key;
}

DepthOracle::DepthOracle(int lines, int max_depth)
    : lines_(lines), max_depth_(max_depth) {
  if (lines < 1 || lines > 4)
    throw std::invalid_argument("depth oracle supports 1..4 lines");
  if (max_depth > 120) throw std::invalid_argument("max_depth too large");
  const int bits = lines << lines;  // key width: 2^n entries of n bits
  dense_mode_ = bits <= 24;
  if (dense_mode_) dense_.assign(std::size_t{1} << bits, -1);

  const std::vector<ToffoliGate> gates = candidate_gates(lines);
  std::vector<std::vector<Pattern>> frontier;
  std::vector<Pattern> id(std::size_t{1} << lines);
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<Pattern>(i);

  auto visit = [&](const std::vector<Pattern>& t, int d) -> bool {
    std::uint64_t key = pack_table(t, lines_);
    if (dense_mode_) {
      if (dense_[key] >= 0) return false;
      dense_[key] = static_cast<std::int8_t>(d);
    } else {
      if (!sparse_.emplace(key, static_cast<std::int8_t>(d)).second)
        return false;
    }
    return true;
  };

  visit(id, 0);
  counts_.push_back(1);
  frontier.push_back(id);
  for (int d = 1; d <= max_depth_ && !frontier.empty(); ++d) {
    std::vector<std::vector<Pattern>> next;
    long long found = 0;
    for (const auto& t : frontier) {
      for (const auto& g : gates) {
        std::vector<Pattern> t2 = t;
        for (auto& v : t2) v = apply_gate_to_pattern(g, v);
        if (visit(t2, d)) {
          ++found;
          next.push_back(std::move(t2));
        }
      }
    }
    if (found) counts_.push_back(found);
    frontier = std::move(next);
  }
}

int DepthOracle::query(const std::vector<Pattern>& table) const {
  std::uint64_t key = pack_table(table, lines_);
  if (dense_mode_) {
    std::int8_t d = dense_[key];
    return d >= 0 ? d : max_depth_ + 1;
  }
  auto it = sparse_.find(key);
  return it != sparse_.end() ? it->second : max_depth_ + 1;
}

}  // namespace rls
