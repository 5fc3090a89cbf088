#pragma once

#include "cjw/complex.hpp"

#include <string>
#include <vector>

namespace cjw {

// Letter +i is sigma_i, -i its inverse; 1 <= |i| <= strands - 1.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  BraidWord() = default;
  BraidWord(int n, std::vector<int> w);
  // Whitespace-separated tokens s<i> and S<i> (inverse). strands = 0 infers
  // the smallest strand count that fits.
  static BraidWord parse(const std::string& s, int strands = 0);
  std::string str() const;
  // Closure components as lists of bottom positions (1-based), each sorted.
  std::vector<std::vector<int>> components() const;
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

// Positive: q 1 (degree 0) -> q^2 e_i (degree 1).
// Negative: q^-2 e_i (degree -1) -> q^-1 1 (degree 0).
ChainComplex crossing_complex(int sign, int n, int i);
ChainComplex braid_complex(const BraidWord& w);
// Unnormalized bracket of the closure: euler of the reduced closed complex.
PowerSeries jones(const BraidWord& w, int order = PowerSeries::kExact);

// Each letter on m-strand cables: a block of m^2 crossings.
BraidWord cable(const BraidWord& w, int m);
// Closed complex of the m-cable with one P_{m,l} per closure component,
// placed at the bottom of the strand at[c] of component c (default: its first
// strand). Unreduced.
ChainComplex cabled_complex(const BraidWord& w, int m, int l, const std::vector<int>& at = {});
// Same construction reduced after every factor; the projectors are built long
// enough that the result is stored through degree l.
ChainComplex cabled_reduced(const BraidWord& w, int m, int l, const std::vector<int>& at = {});
// Euler series of cabled_reduced, truncated at min(order, certified order).
PowerSeries colored_jones(const BraidWord& w, int m, int l, int order = PowerSeries::kExact);

// Reduced complexes of both sides agree as graded multisets of objects.
bool reidemeister_check(const BraidWord& lhs, const BraidWord& rhs);
enum class Move { R2, R3 };
// The standard instance of the move at color 1.
bool reidemeister_check(Move move);

}  // namespace cjw
