#ifndef RLS_TEMPLATES_HPP
#define RLS_TEMPLATES_HPP

#include <bitset>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rls/core.hpp"

// Identity-realizing templates with replicable control classes, the finder
// that regenerates the library, and the window-limited matching algorithm.

namespace rls {

inline constexpr int kMaxTemplateSize = 9;
inline constexpr int kDefaultMatchWindow = 20;

// A gate of a template: target is a t-line index; controls split into
// controls on t-lines and references to control classes.
struct TemplateGate {
  int target = 0;
  std::uint32_t t_controls = 0;
  std::uint32_t class_controls = 0;

  friend bool operator==(const TemplateGate&, const TemplateGate&) = default;
};

// An identity-realizing cascade over t_lines target-bearing lines.  Any
// extra network line may carry controls at gate positions given by a
// characteristic vector, provided that vector is admissible; classes are
// the named vectors used for the file format.  valid_vectors holds every
// admissible characteristic vector (bit i of a vector = gate i has a
// control on the line), and is closed under bitwise OR.
struct Template {
  int t_lines = 0;
  std::vector<TemplateGate> gates;
  std::vector<std::uint32_t> class_vectors;
  std::vector<int> reducible_cycles;
  std::bitset<1 << kMaxTemplateSize> valid_vectors;

  int size() const { return static_cast<int>(gates.size()); }
  bool cycle_is_irreducible(int rotation) const;

  // The cascade with all classes empty, on the t-lines only.
  Network t_line_network() const;
};

// True iff swapping the adjacent pair preserves the network function:
// neither target lies in the other's control set.
bool is_moving_pair(const ToffoliGate& a, const ToffoliGate& b);

// True iff the gates at `positions` (ascending) can be made contiguous at
// the position `at` (an element of positions) using only moving-rule
// swaps, preserving their relative order.
bool can_gather(const Network& net, const std::vector<std::size_t>& positions,
                std::size_t at);

// Recomputes the set of admissible extra-line characteristic vectors for
// an identity cascade: alpha is admissible iff deleting the gates at
// alpha's 1-positions leaves an identity cascade.
std::bitset<1 << kMaxTemplateSize> admissible_vectors(const Network& identity);

// Identity check on representative instantiations (classes bound to 0, 1
// and 2 lines) plus the irreducibility clause against `library`.
bool verify_template(const Template& candidate,
                     const std::vector<Template>& library);

// Marks which rotations of the template's cascade reduce under the given
// library (smaller or equal size); stored in reducible_cycles.
void classify_cycles(Template& tpl, const std::vector<Template>& library);

// Generalizes a concrete identity cascade: target-bearing lines become
// t-lines, control-only lines become classes, and the admissible vector
// set is computed.
Template generalize(const Network& identity);

// Enumerates irreducible identity cascades of exactly `size` gates on
// `lines` lines (every line used), reduced by `library`, generalized and
// de-duplicated.
std::vector<Template> find_templates(int size, int lines,
                                     const std::vector<Template>& library);

// Builds the shipped library: all sizes 2..max_size on 3 and 4 lines,
// plus size-9 survivors when max_size >= 9.
std::vector<Template> build_template_library(int max_size = 7,
                                             bool with_size9 = true);

// The window-limited matching loop.  Output realizes the same function at
// a cost no greater than the input's under `model`.
Network apply_templates(const Network& net,
                        const std::vector<Template>& library,
                        const CostModel& model,
                        int window = kDefaultMatchWindow);

// Library file format:
//   template m=<size> lines=<t-count>,<class-count>
//   <one gate per line, e.g. TOF(t1,C2;t2)>
//   reducible-cycles: <indices>
std::vector<Template> parse_template_library(std::istream& in);
std::vector<Template> parse_template_library_file(const std::string& path);
std::string format_template_library(const std::vector<Template>& library);
void write_template_library_file(const std::string& path,
                                 const std::vector<Template>& library);

// Enumerates every identity cascade of exactly `length` gates on `lines`
// lines (optionally skipping cascades with an immediately repeated gate)
// and invokes the callback.  Used by the finder and the completeness
// tests.
void for_each_identity_cascade(
    int lines, int length, bool skip_adjacent_repeats,
    const std::function<void(const std::vector<ToffoliGate>&)>& fn);

}  // namespace rls

#endif
