#ifndef RLS_RMSPECTRA_HPP
#define RLS_RMSPECTRA_HPP

#include <string>
#include <vector>

#include "rls/core.hpp"

// Positive-polarity Reed-Muller spectra of a reversible function, stored as
// a packed n x 2^n bit table: rows[r] holds, in bit j, the coefficient of
// the monomial named by the 1-bits of r in the expansion of output j.  All
// output columns are transformed in one pass over the packed words.

namespace rls {

struct RmSpectra {
  int width = 0;
  std::vector<Pattern> rows;

  RmSpectra() = default;
  static RmSpectra identity(int n);

  std::size_t size() const { return rows.size(); }
};

// In-place fast Reed-Muller butterfly; length must be a power of two.
// Self-inverse.
void rmt(std::vector<Pattern>& vec);

RmSpectra spectra_of(const ReversibleFunction& f);
ReversibleFunction function_of(const RmSpectra& s);

// Number of (row, column) entries differing from the identity spectra.
long long rm_cost(const RmSpectra& s);

bool is_identity(const RmSpectra& s);

// Spectra of g composed after the encoded function (gate at the output
// side): the target column gains the polynomial product of the control
// columns.
void apply_gate_output_side(RmSpectra& s, const ToffoliGate& g);

// Spectra of the encoded function composed after g (gate at the input
// side): substitutes x_t <- x_t XOR (product of controls) in every column.
void apply_gate_input_side(RmSpectra& s, const ToffoliGate& g);

// Table-layout debug dump: rows labeled by monomial, columns in c..b a
// order.
std::string dump_spectra(const RmSpectra& s);

}  // namespace rls

#endif
