#include "rls/rmspectra.hpp"

#include <sstream>

namespace rls {

RmSpectra RmSpectra::identity(int n) {
  RmSpectra s;
  s.width = n;
  s.rows.assign(std::size_t{1} << n, 0);
  for (int j = 0; j < n; ++j) s.rows[std::size_t{1} << j] = Pattern{1} << j;
  return s;
}

void rmt(std::vector<Pattern>& vec) {
  std::size_t len = vec.size();
  if (len == 0 || (len & (len - 1)) != 0)
    throw std::invalid_argument("rmt requires a power-of-two length");
  for (std::size_t m = 1; m < len; m *= 2)
    for (std::size_t i = 0; i < len; i += 2 * m)
      for (std::size_t j = i; j < i + m; ++j) vec[j + m] ^= vec[j];
}

RmSpectra spectra_of(const ReversibleFunction& f) {
  RmSpectra s;
  s.width = f.width;
  s.rows = f.table;
  rmt(s.rows);
  return s;
}

ReversibleFunction function_of(const RmSpectra& s) {
  std::vector<Pattern> table = s.rows;
  rmt(table);
  return ReversibleFunction(s.width, std::move(table));
}

long long rm_cost(const RmSpectra& s) {
  long long cost = 0;
  for (std::size_t r = 0; r < s.rows.size(); ++r) {
    Pattern id_row = std::has_single_bit(static_cast<Pattern>(r))
                         ? static_cast<Pattern>(r)
                         : 0;
    cost += std::popcount(s.rows[r] ^ id_row);
  }
  return cost;
}

bool is_identity(const RmSpectra& s) {
  for (std::size_t r = 0; r < s.rows.size(); ++r) {
    Pattern id_row = std::has_single_bit(static_cast<Pattern>(r))
                         ? static_cast<Pattern>(r)
                         : 0;
    if (s.rows[r] != id_row) return false;
  }
  return true;
}

void apply_gate_output_side(RmSpectra& s, const ToffoliGate& g) {
  if (g.controls == 0) {
    s.rows[0] ^= Pattern{1} << g.target;
    return;
  }
  if (std::has_single_bit(g.controls)) {
    // Single control: the product is just that column.
    int c = std::countr_zero(g.controls);
    for (auto& row : s.rows)
      row ^= ((row >> c) & 1u) << g.target;
    return;
  }
  // Product of the control columns: inverse-transform to truth vectors,
  // AND pointwise, transform back (exact because rmt is an involution).
  std::vector<Pattern> truth = s.rows;
  rmt(truth);
  std::vector<Pattern> prod(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i)
    prod[i] = (truth[i] & g.controls) == g.controls ? 1u : 0u;
  rmt(prod);
  for (std::size_t r = 0; r < s.rows.size(); ++r)
    s.rows[r] ^= prod[r] << g.target;
}

void apply_gate_input_side(RmSpectra& s, const ToffoliGate& g) {
  const Pattern tbit = Pattern{1} << g.target;
  // Monomials containing x_t each spill a copy with x_t replaced by the
  // control product; the spilled row never contains x_t, so a single pass
  // is safe in any order.
  for (std::size_t r = 0; r < s.rows.size(); ++r) {
    if ((r & tbit) == 0) continue;
    std::size_t r2 = (r & ~std::size_t{tbit}) | g.controls;
    s.rows[r2] ^= s.rows[r];
  }
}

std::string dump_spectra(const RmSpectra& s) {
  std::ostringstream out;
  for (std::size_t r = 0; r < s.rows.size(); ++r) {
    std::string label;
    if (r == 0) {
      label = "1";
    } else {
      for (int j = 0; j < s.width; ++j)
        if (r & (std::size_t{1} << j)) label += line_name(j);
    }
    label.resize(s.width, ' ');
    out << label << " ";
    for (int j = s.width - 1; j >= 0; --j)
      out << ((s.rows[r] >> j) & 1u);
    out << "\n";
  }
  return out.str();
}

}  // namespace rls
