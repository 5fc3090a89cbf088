#pragma once

#include "cjw/tl.hpp"

#include <array>
#include <string>
#include <vector>

namespace cjw {

// a+b+c even and |a-b| <= c <= a+b.
bool admissible(int a, int b, int c);
// Strand counts between the edge pairs (a,b), (a,c), (b,c).
std::array<int, 3> resolve_vertex(int a, int b, int c);

// Planar graph with projector-labeled edges. Each vertex lists its edges in
// counterclockwise order. Internal vertices are trivalent (bivalent allowed
// for equal labels); boundary vertices are univalent and appear in the
// vertex list in counterclockwise order around the outer disk. An edge with
// ends (-1,-1) is a free closed loop.
struct SpinNetwork {
  static constexpr int kMaxLabel = 6;

  struct Vertex {
    bool boundary = false;
    std::vector<int> edges;
    friend bool operator==(const Vertex&, const Vertex&) = default;
  };
  struct Edge {
    int u = -1, v = -1;
    int label = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  // Throws DomainError on broken incidence, inadmissible vertices or labels
  // above kMaxLabel.
  void validate() const;
  bool closed() const;
  std::vector<int> boundary_vertices() const;
  // Boundary label sequence in counterclockwise order.
  std::vector<int> boundary_labels() const;
  // Reflection: every cyclic order reversed, boundary order reversed.
  SpinNetwork mirrored() const;

  static SpinNetwork loop(int label);
  static SpinNetwork theta(int a, int b, int c);

  std::string json() const;
  static SpinNetwork parse_json(const std::string& s);
  friend bool operator==(const SpinNetwork&, const SpinNetwork&) = default;
};

// Closed network: every edge replaced by its Jones-Wenzl projector, each
// vertex by its resolution, closed loops valued [2].
RatFunc evaluate(const SpinNetwork& net);
// Open network as a TL element: the first `bottom` boundary vertices give
// the bottom points left to right, the rest the top points right to left.
// Both sides must carry the same number of strands.
TLElement<RatFunc> evaluate_open(const SpinNetwork& net, int bottom);

// x inside, the mirror of y outside, boundary vertices matched in order.
SpinNetwork glue(const SpinNetwork& x, const SpinNetwork& y);
RatFunc pairing(const SpinNetwork& x, const SpinNetwork& y);

// Invariants of (a,b,c,d), boundary counterclockwise from bottom left:
// a bottom left, b bottom right, c top right, d top left.
// The horizontal network fuses a with b through an internal edge labeled i,
// the vertical network fuses b with c through j.
std::vector<int> horizontal_labels(int a, int b, int c, int d);
std::vector<int> vertical_labels(int a, int b, int c, int d);
SpinNetwork horizontal_network(int a, int b, int c, int d, int i);
SpinNetwork vertical_network(int a, int b, int c, int d, int j);

using RatMatrix = std::vector<std::vector<RatFunc>>;

// from[r] = sum_k coeffs[r][k] to[k], solved through the Gram matrix of `to`.
struct BasisChange {
  std::vector<int> from_labels, to_labels;
  std::string from_name = "H", to_name = "V";
  RatMatrix coeffs;
  std::string str() const;
  std::string json() const;
};
BasisChange change_of_basis(const std::vector<SpinNetwork>& from, const std::vector<SpinNetwork>& to);
// Horizontal to vertical: the 6j symbols.
BasisChange sixj(int a, int b, int c, int d);
// Vertical to horizontal.
BasisChange sixj_inverse(int a, int b, int c, int d);

RatMatrix gram_matrix(const std::vector<SpinNetwork>& basis);
// Throws DomainError when the matrix is singular.
RatMatrix inverse(const RatMatrix& m);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);

}  // namespace cjw
