#pragma once

#include "cjw/cob.hpp"
#include "cjw/tl.hpp"

#include <climits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cjw {

// Sparse matrix of cobordisms; rows index target objects, columns source objects.
struct Matrix {
  int rows = 0, cols = 0;
  std::map<std::pair<int, int>, CobLC> entries;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c) {}
  const CobLC* at(int r, int c) const;
  void set(int r, int c, CobLC f);  // zero erases
  void add(int r, int c, const CobLC& f);
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

// Bounded-below complex over Mat(Cob(n)). groups[k] sits in homological
// degree min_degree + k; diffs[k] maps groups[k] to groups[k+1].
// Degrees >= trunc are not stored; those stored agree with the untruncated
// complex. The Euler characteristic is exact below q^euler_order.
struct ChainComplex {
  static constexpr int kUnbounded = INT_MAX;

  int n = 0;
  int min_degree = 0;
  std::vector<std::vector<DiagObject>> groups;
  std::vector<Matrix> diffs;
  int trunc = kUnbounded;
  int euler_order = PowerSeries::kExact;

  int max_degree() const { return min_degree + static_cast<int>(groups.size()) - 1; }
  bool empty() const;
  std::size_t total_objects() const;
  const std::vector<DiagObject>& group(int deg) const;
  const Matrix& diff(int deg) const;  // from degree deg to deg+1; empty matrix when absent
  Matrix& diff_mut(int deg);

  // Appends the next group; the matrix maps the current top group into it.
  void push_group(std::vector<DiagObject> objs, Matrix d);
  // Drops empty groups at both ends (keeps min_degree meaningful).
  void trim();

  std::string json() const;
  static ChainComplex parse_json(const std::string& s);
  std::string summary() const;  // one line per degree

  friend bool operator==(const ChainComplex&, const ChainComplex&) = default;
};

// column -> [(row, entry)]
std::map<int, std::vector<std::pair<int, const CobLC*>>> column_index(const Matrix& m);

ChainComplex single_object(const DiagObject& a, int degree = 0);

struct ValidationReport {
  bool ok = true;
  std::string message;
};
ValidationReport validate(const ChainComplex& c, bool check_monotone = false);

// d on top of c; Koszul sign (-1)^(degree of the c factor) on d's differential.
ChainComplex stack(const ChainComplex& c, const ChainComplex& d);
ChainComplex disjoint_union(const ChainComplex& c, int k);
// `left` vertical strands on the left and `right` on the right of c.
ChainComplex pad(const ChainComplex& c, int left, int right);
ChainComplex trace(const ChainComplex& c);
ChainComplex flip(const ChainComplex& c);
// Homological shift: object in degree i moves to degree i + s (no sign change).
ChainComplex shift_degree(const ChainComplex& c, int s);
// Multiplies every q-shift by q^k.
ChainComplex shift_q(const ChainComplex& c, int k);
// Keeps degrees below `t` and records t as the truncation; euler_order drops
// to the lowest q-power of any removed object.
ChainComplex cut_above(const ChainComplex& c, int t);

// Degree-0 chain map: maps[k] sends src degree (src.min_degree + k) to tgt degree.
struct ChainMap {
  ChainComplex src, tgt;
  std::map<int, Matrix> maps;  // keyed by homological degree
};
bool is_chain_map(const ChainMap& f);
// Cone = src[1] (+) tgt with d(x, y) = (-d x, f x + d y).
ChainComplex cone(const ChainMap& f);

// Sum over objects of (-1)^deg q^shift [2]^circles times the diagram, each
// coefficient exact below min(order, c.euler_order).
TLElement<PowerSeries> euler(const ChainComplex& c, int order = PowerSeries::kExact);
// Same for n = 0, as a single series.
PowerSeries euler_closed(const ChainComplex& c, int order = PowerSeries::kExact);

// Graded multiset of chain groups (degree -> sorted objects), used for
// structural comparisons.
std::map<int, std::vector<DiagObject>> group_multiset(const ChainComplex& c, int below = ChainComplex::kUnbounded);

}  // namespace cjw
