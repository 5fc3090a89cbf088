#pragma once

#include "cjw/complex.hpp"

#include <string>
#include <vector>

namespace cjw {

// Complex for the n-th projector known exactly in degrees 0..length.
struct TruncatedProjector {
  int n = 0;
  int length = 0;
  ChainComplex complex;
  std::string provenance;  // "explicit" or "cfk-reduced"
};

TruncatedProjector p2(int l);
TruncatedProjector p3(int l);

// m-th diagram of the n-th Frenkel-Khovanov sequence with its q-shift.
struct FKTerm {
  int n = 0;
  int m = 0;
  DiagObject object;
  int out_map_degree = 0;  // q-shift of term m+1 minus that of term m
};

FKTerm fk(int n, int m);
// For a saddle step m -> m+1, the generator j with fk(n, m+1) = fk(n, m) e_j
// (e_j stacked on top); 0 when the step has q-degree 2.
int fk_turnback(int n, int m);
// f_m : fk(n, m) -> fk(n, m+1).
CobLC fk_map(int n, int m);

// The fattened sequence: (P_{n-1,l} + one strand) stacked with one two- or
// three-term factor per saddle step, unreduced.
ChainComplex cfk(int n, int l);

// n = 1: identity; n = 2: p2(l); otherwise the fattened sequence reduced
// step by step; each step cancels only pairs touching a term it adds.
// euler_order is the fk(n, l+1) shift, lowered to the least q-shift seen in
// the next few omitted degrees.
TruncatedProjector truncated_projector(int n, int l);

struct UniversalReport {
  bool ok = true;
  std::vector<std::pair<std::string, bool>> checks;
  std::string str() const;
};
UniversalReport verify_universal(int n, int l, int w);

bool stability_check(int n, int l);

// Flipped copy below, original on top.
ChainComplex double_complex(const ChainComplex& c);

// How fk(n, m) followed by e_i dies.
struct TurnbackClass {
  enum class Kind { Commutes, Triple, Quadruple, Boundary, Unclassified };
  Kind kind = Kind::Boundary;
  int j = 0;      // Commutes: the generator that reaches the lower projector
  int start = 0;  // Triple/Quadruple: first index of the block
};
// Classes of fk(n, m) e_i for m in [0, count). Terms whose block would run
// past the window are Boundary.
std::vector<TurnbackClass> classify_turnbacks(int n, int i, int count);

}  // namespace cjw
