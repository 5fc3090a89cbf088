#pragma once

#include "cjw/complex.hpp"

#include <string>
#include <vector>

namespace cjw {

using IntMatrix = std::vector<std::vector<BigInt>>;  // row-major

// Free Z-complex from a closed complex: one generator per delooped empty
// diagram, alpha set to an integer. An entry with alpha^k raises q by 4k, so
// the differential is triangular in q and block diagonal only when alpha = 0.
struct FreeComplex {
  int min_degree = 0;
  int trunc = ChainComplex::kUnbounded;
  std::vector<std::vector<int>> qdeg;  // per degree, q-degree of each generator
  std::vector<IntMatrix> diffs;        // diffs[k]: degree k -> k+1, rows index targets

  int max_degree() const { return min_degree + static_cast<int>(qdeg.size()) - 1; }
};

FreeComplex to_free_complex(const ChainComplex& c, long long alpha);

struct SmithForm {
  IntMatrix d, u, v;  // u * m * v = d
  int rank = 0;
};
SmithForm smith_normal_form(const IntMatrix& m);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

// Homology in one (homological, q) slot. For alpha != 0 the q-label is the
// filtration level: classes represented by cycles in q-degrees >= q modulo
// those in degrees > q.
struct HomologyEntry {
  int degree = 0;
  int q = 0;
  int free_rank = 0;
  std::vector<BigInt> torsion;  // orders > 1, each dividing the next
  friend bool operator==(const HomologyEntry&, const HomologyEntry&) = default;
};

struct GradedHomology {
  std::vector<HomologyEntry> entries;  // nonzero slots, by degree then q
  std::vector<HomologyEntry> in_degree(int degree) const;
  // "q^6 Z + q^4 Z/2" style, or "0".
  std::string str(int degree) const;
  std::string json() const;
};

// Degrees min_degree..max_degree; throws DomainError unless d_max_degree is
// stored, i.e. max_degree + 1 < trunc.
GradedHomology graded_homology(const ChainComplex& c, long long alpha, int max_degree);
GradedHomology graded_homology(const FreeComplex& f, int max_degree);

}  // namespace cjw
