#ifndef RLS_SEARCH_HPP
#define RLS_SEARCH_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rls/core.hpp"

// Breadth-first search over the Cayley graph of all Toffoli gates on a
// fixed line count, rooted at the identity.  Gives exact minimal gate
// counts for small widths and the distance pruning used by the template
// finder.

namespace rls {

std::uint64_t pack_table(const std::vector<Pattern>& table, int lines);

class DepthOracle {
 public:
  DepthOracle(int lines, int max_depth);

  // Exact depth if known; max_depth + 1 when the state is beyond the
  // explored horizon.
  int query(const std::vector<Pattern>& table) const;

  int lines() const { return lines_; }
  int max_depth() const { return max_depth_; }

  // counts[d] = number of distinct functions at depth exactly d.
  const std::vector<long long>& depth_counts() const { return counts_; }

 private:
  int lines_;
  int max_depth_;
  bool dense_mode_;
  std::vector<std::int8_t> dense_;
  std::unordered_map<std::uint64_t, std::int8_t> sparse_;
  std::vector<long long> counts_;
};

}  // namespace rls

#endif
