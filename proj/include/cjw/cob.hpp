#pragma once

#include "cjw/coeff.hpp"
#include "cjw/tl.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cjw {

// A q-shifted planar diagram together with k free circles (ids 0..k-1).
struct DiagObject {
  Matching m;
  int circles = 0;
  int q = 0;

  DiagObject() = default;
  explicit DiagObject(Matching mm, int qq = 0, int cc = 0) : m(mm), circles(cc), q(qq) {}
  static DiagObject empty(int q = 0, int circles = 0) { return DiagObject(Matching::identity(0), q, circles); }

  int n() const { return m.n(); }
  bool same_diagram(const DiagObject& o) const { return m == o.m && circles == o.circles; }
  DiagObject shifted(int k) const { return DiagObject(m, q + k, circles); }

  std::string json() const;
  static DiagObject parse_json(const std::string& s);
  std::string str() const;  // "q^2 e1e2 +1o"

  friend bool operator==(const DiagObject&, const DiagObject&) = default;
  friend auto operator<=>(const DiagObject& a, const DiagObject& b) {
    if (auto c = a.m <=> b.m; c != 0) return c;
    if (auto c = a.circles <=> b.circles; c != 0) return c;
    return a.q <=> b.q;
  }
};

// c on top of a; loops formed in the middle are appended as free circles
// after a's and c's own circles.
DiagObject stack(const DiagObject& a, const DiagObject& c);
DiagObject with_strands(const DiagObject& a, int k);
DiagObject with_strands_left(const DiagObject& a, int k);
DiagObject flipped(const DiagObject& a);
// Closure: arcs become circles (ordered by least point), then a's free circles.
DiagObject traced(const DiagObject& a);

// Boundary 1-manifold of a cobordism src -> tgt. Arc circles come first,
// ordered by least point; then src free circles, then tgt free circles.
struct BoundaryInfo {
  int n = 0;
  int arc_circles = 0;
  int src_circles = 0;
  int tgt_circles = 0;
  std::vector<int> circle_of_point;  // size 2n
  std::vector<int> arc_rep;          // least point on each arc circle

  int count() const { return arc_circles + src_circles + tgt_circles; }
  int src_free(int j) const { return arc_circles + j; }
  int tgt_free(int j) const { return arc_circles + src_circles + j; }
};
BoundaryInfo boundary_circles(const DiagObject& src, const DiagObject& tgt);

struct CobDegree {
  int topological;
  int q;
  int total;
};
CobDegree degree(const DiagObject& src, const DiagObject& tgt, std::uint64_t dots);

// Linear combination of canonical cobordisms src -> tgt over Z[alpha]. A
// canonical cobordism is a disjoint union of disks, one per boundary circle,
// each carrying 0 or 1 dot; bit i of the mask is the dot on circle i.
class CobLC {
 public:
  using Term = std::pair<std::uint64_t, AlphaPoly>;

  CobLC() = default;
  CobLC(DiagObject src, DiagObject tgt) : src_(std::move(src)), tgt_(std::move(tgt)) { check_size(); }
  CobLC(DiagObject src, DiagObject tgt, std::vector<Term> terms);

  const DiagObject& src() const { return src_; }
  const DiagObject& tgt() const { return tgt_; }
  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  AlphaPoly coeff(std::uint64_t mask) const;

  CobLC operator-() const;
  CobLC& operator+=(const CobLC& o);
  CobLC& operator-=(const CobLC& o);
  friend CobLC operator+(CobLC a, const CobLC& b) { return a += b; }
  friend CobLC operator-(CobLC a, const CobLC& b) { return a -= b; }
  friend CobLC operator*(const AlphaPoly& s, const CobLC& f);
  friend bool operator==(const CobLC&, const CobLC&) = default;

  // Every term has this total degree (true for the zero morphism).
  bool homogeneous_of_degree(int total) const;
  // u * identity with u = +-1 between identical objects; returns u or 0.
  int unit_identity_sign() const;
  CobLC with_q(int src_q, int tgt_q) const;

  std::string json() const;
  static CobLC parse_json(const std::string& s);
  std::string str() const;

 private:
  void check_size() const;
  DiagObject src_, tgt_;
  std::vector<Term> t_;  // sorted by mask, nonzero coefficients
};

// f first, then g. Requires f.tgt() == g.src().
CobLC compose(const CobLC& f, const CobLC& g);
// g glued on top of f along the middle boundary points.
CobLC stack(const CobLC& f, const CobLC& g);
CobLC with_strands(const CobLC& f, int k);
CobLC with_strands_left(const CobLC& f, int k);
CobLC flipped(const CobLC& f);
CobLC traced(const CobLC& f);

CobLC identity(const DiagObject& a);
CobLC zero(const DiagObject& src, const DiagObject& tgt);
// Single canonical cobordism with the given dot mask and coefficient 1.
CobLC basis(const DiagObject& src, const DiagObject& tgt, std::uint64_t dots = 0);
// Undotted connected saddle between circle-free diagrams differing by one surgery.
CobLC saddle(const DiagObject& src, const DiagObject& tgt);
// Caps free circle c of a. Undotted lands in q^-1 relative, dotted in q^+1.
CobLC cap(const DiagObject& a, int c, bool dotted);
// Cups a new free circle (appended last). Dotted from q^-1 relative, undotted from q^+1.
CobLC cup(const DiagObject& a, bool dotted);
// Adds one dot on boundary circle c of f (two dots reduce to alpha).
CobLC add_dot(const CobLC& f, int c);

// Point in [0,2n) on the bottom i-th strand or top i-th strand (1-based).
inline int bottom_point(int i) { return i - 1; }
inline int top_point(int n, int i) { return n + i - 1; }

}  // namespace cjw
