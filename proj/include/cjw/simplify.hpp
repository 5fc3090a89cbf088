#pragma once

#include "cjw/complex.hpp"

#include <string>
#include <vector>

namespace cjw {

// A deloop step removes the last free circle of object `index` in `degree`,
// replacing it by its q^-1 copy at `index` and its q^+1 copy at `index + 1`.
// An eliminate step cancels the unit identity entry of d_degree at
// (row in degree+1, col in degree). Indices refer to the complex as it is
// just before the step.
struct ReductionStep {
  enum class Kind { Deloop, Eliminate };
  Kind kind = Kind::Eliminate;
  int degree = 0;
  int row = 0;  // deloop: object index
  int col = 0;  // unused for deloop
  friend bool operator==(const ReductionStep&, const ReductionStep&) = default;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  std::string json() const;
  static ReductionTrace parse_json(const std::string& s);
  friend bool operator==(const ReductionTrace&, const ReductionTrace&) = default;
};

struct Reduced {
  ChainComplex complex;
  ReductionTrace trace;
};

struct EntryLoc {
  int degree;
  int row;
  int col;
};

ChainComplex deloop_step(const ChainComplex& c, int degree, int index);
ChainComplex eliminate_step(const ChainComplex& c, int degree, int row, int col);

// Removes every free circle.
Reduced deloop(const ChainComplex& c);
// Gaussian elimination of one unit identity entry.
Reduced eliminate(const ChainComplex& c, EntryLoc at);
// Cancels a whole schedule of unit identity entries; the entries must be
// pairwise disjoint and each differential they touch must not be touched by
// an elimination in an adjacent degree before its own turn. Performed as the
// even-degree eliminations first, then the odd ones, as in the two-stage
// argument for simultaneous elimination.
Reduced eliminate_simultaneous(const ChainComplex& c, const std::vector<EntryLoc>& schedule);
// Deloop, then eliminate unit identity entries degree by degree until none remain.
Reduced reduce(const ChainComplex& c);
// Same, but a pair may be cancelled only when at least one of its objects is
// flagged in `eligible` (shaped like c.groups).
Reduced reduce(const ChainComplex& c, const std::vector<std::vector<char>>& eligible);

ChainComplex replay(const ChainComplex& c, const ReductionTrace& t);

bool contractible_in_window(const ChainComplex& c, int l, int w = 3);
// Same predicate on an already reduced complex.
bool zero_below(const ChainComplex& reduced, int degree);

}  // namespace cjw
