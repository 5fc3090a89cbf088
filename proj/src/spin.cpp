#include "cjw/spin.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>

namespace cjw {

bool admissible(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) return false;
  return (a + b + c) % 2 == 0 && std::abs(a - b) <= c && c <= a + b;
}

std::array<int, 3> resolve_vertex(int a, int b, int c) {
  if (!admissible(a, b, c))
    throw DomainError("resolve_vertex: inadmissible triple (" + std::to_string(a) + "," + std::to_string(b) + "," +
                      std::to_string(c) + ")");
  return {(a + b - c) / 2, (a + c - b) / 2, (b + c - a) / 2};
}

void SpinNetwork::validate() const {
  const int nv = static_cast<int>(vertices.size()), ne = static_cast<int>(edges.size());
  for (int e = 0; e < ne; ++e) {
    const Edge& ed = edges[static_cast<std::size_t>(e)];
    if (ed.label < 0) throw DomainError("spin network: negative label");
    if (ed.label > kMaxLabel)
      throw DomainError("spin network: label " + std::to_string(ed.label) + " above the cap " + std::to_string(kMaxLabel));
    const bool free_loop = ed.u == -1 && ed.v == -1;
    if (free_loop) continue;
    if (ed.u < 0 || ed.u >= nv || ed.v < 0 || ed.v >= nv) throw DomainError("spin network: edge end out of range");
    if (ed.u == ed.v) throw DomainError("spin network: edge with both ends at one vertex");
  }
  for (int x = 0; x < nv; ++x) {
    const Vertex& vx = vertices[static_cast<std::size_t>(x)];
    for (int e : vx.edges) {
      if (e < 0 || e >= ne) throw DomainError("spin network: vertex lists a missing edge");
      const Edge& ed = edges[static_cast<std::size_t>(e)];
      if (ed.u != x && ed.v != x) throw DomainError("spin network: vertex lists an edge not incident to it");
      if (std::count(vx.edges.begin(), vx.edges.end(), e) != 1) throw DomainError("spin network: edge listed twice");
    }
    std::vector<int> lab;
    for (int e : vx.edges) lab.push_back(edges[static_cast<std::size_t>(e)].label);
    if (vx.boundary) {
      if (lab.size() != 1) throw DomainError("spin network: boundary vertex must be univalent");
    } else if (lab.size() == 2) {
      if (lab[0] != lab[1]) throw DomainError("spin network: bivalent vertex with unequal labels");
    } else if (lab.size() == 3) {
      if (!admissible(lab[0], lab[1], lab[2])) throw DomainError("spin network: inadmissible vertex");
    } else {
      throw DomainError("spin network: internal vertex must be bivalent or trivalent");
    }
  }
  for (int e = 0; e < ne; ++e) {
    const Edge& ed = edges[static_cast<std::size_t>(e)];
    if (ed.u == -1) continue;
    for (int x : {ed.u, ed.v}) {
      const auto& l = vertices[static_cast<std::size_t>(x)].edges;
      if (std::find(l.begin(), l.end(), e) == l.end()) throw DomainError("spin network: edge end missing from its vertex");
    }
  }
}

bool SpinNetwork::closed() const {
  return std::none_of(vertices.begin(), vertices.end(), [](const Vertex& v) { return v.boundary; });
}

std::vector<int> SpinNetwork::boundary_vertices() const {
  std::vector<int> out;
  for (int x = 0; x < static_cast<int>(vertices.size()); ++x)
    if (vertices[static_cast<std::size_t>(x)].boundary) out.push_back(x);
  return out;
}

std::vector<int> SpinNetwork::boundary_labels() const {
  std::vector<int> out;
  for (int x : boundary_vertices()) out.push_back(edges[static_cast<std::size_t>(vertices[static_cast<std::size_t>(x)].edges.at(0))].label);
  return out;
}

SpinNetwork SpinNetwork::mirrored() const {
  SpinNetwork m = *this;
  for (auto& v : m.vertices) std::reverse(v.edges.begin(), v.edges.end());
  // boundary vertices trade places so that their list order stays counterclockwise
  const std::vector<int> bv = boundary_vertices();
  std::vector<int> perm(vertices.size());
  for (std::size_t x = 0; x < perm.size(); ++x) perm[x] = static_cast<int>(x);
  for (std::size_t k = 0; k < bv.size(); ++k) perm[static_cast<std::size_t>(bv[k])] = bv[bv.size() - 1 - k];
  SpinNetwork r = m;
  for (std::size_t x = 0; x < perm.size(); ++x) r.vertices[static_cast<std::size_t>(perm[x])] = m.vertices[x];
  for (auto& e : r.edges)
    if (e.u != -1) {
      e.u = perm[static_cast<std::size_t>(e.u)];
      e.v = perm[static_cast<std::size_t>(e.v)];
    }
  return r;
}

SpinNetwork SpinNetwork::loop(int label) {
  SpinNetwork n;
  n.edges.push_back({-1, -1, label});
  return n;
}

SpinNetwork SpinNetwork::theta(int a, int b, int c) {
  SpinNetwork n;
  n.vertices = {{false, {0, 1, 2}}, {false, {2, 1, 0}}};
  n.edges = {{0, 1, a}, {0, 1, b}, {0, 1, c}};
  return n;
}

std::string SpinNetwork::json() const {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : vertices) j["vertices"].push_back({{"boundary", v.boundary}, {"edges", v.edges}});
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : edges) j["edges"].push_back({{"ends", {e.u, e.v}}, {"label", e.label}});
  return j.dump();
}

SpinNetwork SpinNetwork::parse_json(const std::string& s) {
  SpinNetwork n;
  try {
    const auto j = nlohmann::json::parse(s);
    for (const auto& v : j.at("vertices"))
      n.vertices.push_back({v.value("boundary", false), v.at("edges").get<std::vector<int>>()});
    for (const auto& e : j.at("edges")) {
      const auto ends = e.at("ends").get<std::vector<int>>();
      if (ends.size() != 2) throw DomainError("spin network: edge needs two ends");
      n.edges.push_back({ends[0], ends[1], e.at("label").get<int>()});
    }
  } catch (const nlohmann::json::exception& ex) {
    throw DomainError(std::string("spin network: bad JSON: ") + ex.what());
  }
  n.validate();
  return n;
}

namespace {

// Endpoints: every edge carries a projector box with points 0..2a-1 (the
// u end at the bottom); every boundary vertex carries its own terminal points.
// Strands at an edge end are counted counterclockwise around that vertex.
struct Wiring {
  std::vector<int> box_offset, terminal_offset;
  std::vector<int> partner;

  int end_point(const SpinNetwork& net, int e, int x, int t) const {
    const auto& ed = net.edges[static_cast<std::size_t>(e)];
    const int a = ed.label, off = box_offset[static_cast<std::size_t>(e)];
    return ed.u == x ? off + a - 1 - t : off + a + t;
  }
  void join(int p, int q) {
    partner[static_cast<std::size_t>(p)] = q;
    partner[static_cast<std::size_t>(q)] = p;
  }
};

Wiring wire(const SpinNetwork& net) {
  Wiring w;
  int total = 0;
  for (const auto& e : net.edges) {
    w.box_offset.push_back(total);
    total += 2 * e.label;
  }
  for (const auto& v : net.vertices) {
    w.terminal_offset.push_back(total);
    if (v.boundary) total += net.edges[static_cast<std::size_t>(v.edges[0])].label;
  }
  w.partner.assign(static_cast<std::size_t>(total), -1);
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const auto& ed = net.edges[e];
    if (ed.u != -1) continue;
    for (int t = 0; t < ed.label; ++t) w.join(w.box_offset[e] + t, w.box_offset[e] + ed.label + t);
  }
  for (int x = 0; x < static_cast<int>(net.vertices.size()); ++x) {
    const auto& v = net.vertices[static_cast<std::size_t>(x)];
    if (v.boundary) {
      const int e = v.edges[0];
      for (int t = 0; t < net.edges[static_cast<std::size_t>(e)].label; ++t)
        w.join(w.end_point(net, e, x, t), w.terminal_offset[static_cast<std::size_t>(x)] + t);
      continue;
    }
    const std::size_t deg = v.edges.size();
    std::vector<int> lab;
    for (int e : v.edges) lab.push_back(net.edges[static_cast<std::size_t>(e)].label);
    if (deg == 2) lab.push_back(0);
    // arcs between consecutive edges k and k+1: the last strands of k meet the first of k+1
    for (std::size_t k = 0; k < deg; ++k) {
      const std::size_t k1 = (k + 1) % 3, k2 = (k + 2) % 3;
      if (k1 >= deg) continue;
      const int between = (lab[k] + lab[k1] - lab[k2]) / 2;
      for (int t = 0; t < between; ++t)
        w.join(w.end_point(net, v.edges[k], x, lab[k] - 1 - t), w.end_point(net, v.edges[k1], x, t));
    }
  }
  return w;
}

using State = std::vector<std::int16_t>;

// p_a scaled by a common denominator so that every coefficient is a Laurent
// polynomial: p_a = terms / denominator.
struct ScaledProjector {
  LaurentPoly denominator = 1;
  std::vector<std::pair<Matching, LaurentPoly>> terms;
};

const ScaledProjector& scaled_projector(int a) {
  static std::mutex mu;
  static std::map<int, ScaledProjector> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(a);
  if (it != cache.end()) return it->second;
  ScaledProjector sp;
  const auto& jw = jones_wenzl(a).terms();
  for (const auto& [m, c] : jw) {
    const RatFunc x = RatFunc(sp.denominator) * c;
    if (x.den() != LaurentPoly(1)) sp.denominator *= x.den();
  }
  for (const auto& [m, c] : jw) {
    const RatFunc x = RatFunc(sp.denominator) * c;
    if (x.den() != LaurentPoly(1)) throw DomainError("scaled projector: denominator does not clear");
    sp.terms.emplace_back(m, x.num());
  }
  return cache.emplace(a, std::move(sp)).first->second;
}

struct Expansion {
  LaurentPoly denominator = 1;
  std::map<State, LaurentPoly> states;  // terminal pairing -> numerator
};

// Expands every box; each state records the induced pairing of terminal
// points, closed loops already valued.
Expansion expand_network(const SpinNetwork& net) {
  net.validate();
  const Wiring w = wire(net);
  Expansion ex;
  ex.states.emplace(State(w.partner.begin(), w.partner.end()), LaurentPoly(1));
  std::vector<LaurentPoly> loop_pow{LaurentPoly(1)};
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const int a = net.edges[e].label, off = w.box_offset[e];
    if (a == 0) continue;
    const ScaledProjector& p = scaled_projector(a);
    ex.denominator *= p.denominator;
    std::map<State, LaurentPoly> next;
    for (const auto& [st, c] : ex.states)
      for (const auto& [m, mc] : p.terms) {
        State s = st;
        int loops = 0;
        for (int pt = 0; pt < 2 * a; ++pt) {
          const int p2 = m.partner(pt);
          if (p2 < pt) continue;
          const int x = off + pt, y = off + p2;
          const int px = s[static_cast<std::size_t>(x)], py = s[static_cast<std::size_t>(y)];
          if (px == y) {
            ++loops;
          } else {
            s[static_cast<std::size_t>(px)] = static_cast<std::int16_t>(py);
            s[static_cast<std::size_t>(py)] = static_cast<std::int16_t>(px);
          }
          s[static_cast<std::size_t>(x)] = s[static_cast<std::size_t>(y)] = -1;
        }
        while (static_cast<int>(loop_pow.size()) <= loops) loop_pow.push_back(loop_pow.back() * quantum_integer(2));
        LaurentPoly term = c * mc;
        if (loops > 0) term *= loop_pow[static_cast<std::size_t>(loops)];
        auto [it, ins] = next.try_emplace(std::move(s), term);
        if (!ins) it->second += term;
      }
    ex.states.clear();
    for (auto& [s, c] : next)
      if (!c.is_zero()) ex.states.emplace(s, std::move(c));
  }
  return ex;
}

}  // namespace

RatFunc evaluate(const SpinNetwork& net) {
  if (!net.closed()) throw DomainError("evaluate: network has boundary");
  const Expansion ex = expand_network(net);
  LaurentPoly s(0);
  for (const auto& [st, c] : ex.states) s += c;
  return RatFunc(s, ex.denominator);
}

TLElement<RatFunc> evaluate_open(const SpinNetwork& net, int bottom) {
  net.validate();
  const auto bv = net.boundary_vertices();
  if (bottom < 0 || bottom > static_cast<int>(bv.size())) throw DomainError("evaluate_open: bad bottom count");
  const auto labels = net.boundary_labels();
  int nb = 0, nt = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) (static_cast<int>(k) < bottom ? nb : nt) += labels[k];
  if (nb != nt) throw DomainError("evaluate_open: bottom and top strand counts differ");
  const int n = nb;
  if (n > Matching::kMaxStrands) throw DomainError("evaluate_open: too many strands");
  const Wiring w = wire(net);
  // terminal point id -> TL point; counterclockwise order runs strands label-1..0
  std::map<int, int> tl_point;
  int ccw = 0;
  for (std::size_t k = 0; k < bv.size(); ++k)
    for (int t = labels[k] - 1; t >= 0; --t, ++ccw)
      tl_point[w.terminal_offset[static_cast<std::size_t>(bv[k])] + t] = ccw < n ? ccw : n + (2 * n - 1 - ccw);
  TLElement<RatFunc> out(n);
  const Expansion ex = expand_network(net);
  for (const auto& [st, c] : ex.states) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [id, p] : tl_point) {
      const int q = tl_point.at(st[static_cast<std::size_t>(id)]);
      if (p < q) pairs.emplace_back(p + 1, q + 1);
    }
    out.add(Matching::from_pairs(n, pairs), RatFunc(c, ex.denominator));
  }
  return out;
}

SpinNetwork glue(const SpinNetwork& x, const SpinNetwork& y) {
  x.validate();
  y.validate();
  if (x.boundary_labels() != y.boundary_labels()) throw DomainError("glue: boundary labels differ");
  const auto bx = x.boundary_vertices(), by = y.boundary_vertices();
  SpinNetwork g = x;
  const int eoff = static_cast<int>(x.edges.size());
  std::vector<int> vmap(y.vertices.size(), -1);
  for (std::size_t k = 0; k < by.size(); ++k) vmap[static_cast<std::size_t>(by[k])] = bx[k];
  for (std::size_t v = 0; v < y.vertices.size(); ++v) {
    if (vmap[v] != -1) continue;
    vmap[v] = static_cast<int>(g.vertices.size());
    SpinNetwork::Vertex nv = y.vertices[v];
    std::reverse(nv.edges.begin(), nv.edges.end());
    for (int& e : nv.edges) e += eoff;
    g.vertices.push_back(std::move(nv));
  }
  for (const auto& e : y.edges)
    g.edges.push_back(e.u == -1 ? e : SpinNetwork::Edge{vmap[static_cast<std::size_t>(e.u)], vmap[static_cast<std::size_t>(e.v)], e.label});
  for (std::size_t k = 0; k < bx.size(); ++k) {
    auto& v = g.vertices[static_cast<std::size_t>(bx[k])];
    v.boundary = false;
    v.edges.push_back(y.vertices[static_cast<std::size_t>(by[k])].edges[0] + eoff);
  }
  return g;
}

RatFunc pairing(const SpinNetwork& x, const SpinNetwork& y) { return evaluate(glue(x, y)); }

namespace {

std::vector<int> fusion_labels(int a, int b, int c, int d) {
  std::vector<int> out;
  for (int i = std::abs(a - b); i <= a + b; i += 2)
    if (admissible(i, c, d)) out.push_back(i);
  return out;
}

// Boundary vertices 0..3 carry a, b, c, d on edges 0..3; internal vertices 4, 5.
SpinNetwork four_boundary(int a, int b, int c, int d) {
  SpinNetwork n;
  for (int k = 0; k < 4; ++k) n.vertices.push_back({true, {k}});
  n.edges = {{0, -1, a}, {1, -1, b}, {2, -1, c}, {3, -1, d}};
  return n;
}

}  // namespace

std::vector<int> horizontal_labels(int a, int b, int c, int d) { return fusion_labels(a, b, c, d); }
std::vector<int> vertical_labels(int a, int b, int c, int d) { return fusion_labels(b, c, d, a); }

SpinNetwork horizontal_network(int a, int b, int c, int d, int i) {
  SpinNetwork n = four_boundary(a, b, c, d);
  // lower vertex: a (south-west), b (south-east), i (north)
  n.vertices.push_back({false, {0, 1, 4}});
  // upper vertex: i (south), c (north-east), d (north-west)
  n.vertices.push_back({false, {4, 2, 3}});
  n.edges[0].v = n.edges[1].v = 4;
  n.edges[2].v = n.edges[3].v = 5;
  n.edges.push_back({4, 5, i});
  n.validate();
  return n;
}

SpinNetwork vertical_network(int a, int b, int c, int d, int j) {
  SpinNetwork n = four_boundary(a, b, c, d);
  // right vertex: c (north), j (west), b (south)
  n.vertices.push_back({false, {2, 4, 1}});
  // left vertex: j (east), d (north), a (south)
  n.vertices.push_back({false, {4, 3, 0}});
  n.edges[1].v = n.edges[2].v = 4;
  n.edges[0].v = n.edges[3].v = 5;
  n.edges.push_back({4, 5, j});
  n.validate();
  return n;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  RatMatrix r(a.size(), std::vector<RatFunc>(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw DomainError("multiply: shape mismatch");
    for (std::size_t k = 0; k < inner; ++k)
      if (!a[i][k].is_zero())
        for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
  }
  return r;
}

RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.size();
  RatMatrix a = m, inv(n, std::vector<RatFunc>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw DomainError("inverse: matrix not square");
    inv[i][i] = RatFunc(1);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw DomainError("inverse: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const RatFunc s = a[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= s;
      inv[col][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const RatFunc f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

RatMatrix gram_matrix(const std::vector<SpinNetwork>& basis) {
  RatMatrix g(basis.size(), std::vector<RatFunc>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j) g[i][j] = g[j][i] = pairing(basis[i], basis[j]);
  return g;
}

BasisChange change_of_basis(const std::vector<SpinNetwork>& from, const std::vector<SpinNetwork>& to) {
  RatMatrix p(from.size(), std::vector<RatFunc>(to.size()));
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t k = 0; k < to.size(); ++k) p[i][k] = pairing(from[i], to[k]);
  BasisChange out;
  out.coeffs = multiply(p, inverse(gram_matrix(to)));
  return out;
}

namespace {

void check_labels(int a, int b, int c, int d) {
  for (int x : {a, b, c, d})
    if (x < 0 || x > SpinNetwork::kMaxLabel) throw DomainError("sixj: boundary label out of range");
  if ((a + b + c + d) % 2 != 0) throw DomainError("sixj: odd total label");
  if (horizontal_labels(a, b, c, d).empty() || vertical_labels(a, b, c, d).empty())
    throw DomainError("sixj: no admissible internal label");
}

std::vector<SpinNetwork> horizontal_basis(int a, int b, int c, int d) {
  std::vector<SpinNetwork> out;
  for (int i : horizontal_labels(a, b, c, d)) out.push_back(horizontal_network(a, b, c, d, i));
  return out;
}

std::vector<SpinNetwork> vertical_basis(int a, int b, int c, int d) {
  std::vector<SpinNetwork> out;
  for (int j : vertical_labels(a, b, c, d)) out.push_back(vertical_network(a, b, c, d, j));
  return out;
}

}  // namespace

BasisChange sixj(int a, int b, int c, int d) {
  check_labels(a, b, c, d);
  BasisChange s = change_of_basis(horizontal_basis(a, b, c, d), vertical_basis(a, b, c, d));
  s.from_labels = horizontal_labels(a, b, c, d);
  s.to_labels = vertical_labels(a, b, c, d);
  return s;
}

BasisChange sixj_inverse(int a, int b, int c, int d) {
  check_labels(a, b, c, d);
  BasisChange s = change_of_basis(vertical_basis(a, b, c, d), horizontal_basis(a, b, c, d));
  s.from_labels = vertical_labels(a, b, c, d);
  s.to_labels = horizontal_labels(a, b, c, d);
  s.from_name = "V";
  s.to_name = "H";
  return s;
}

std::string BasisChange::str() const {
  std::ostringstream o;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    o << from_name << from_labels.at(i) << " =";
    bool first = true;
    for (std::size_t j = 0; j < coeffs[i].size(); ++j) {
      if (coeffs[i][j].is_zero()) continue;
      o << (first ? " " : " + ") << "(" << coeffs[i][j].quantum_str() << ") " << to_name << to_labels.at(j);
      first = false;
    }
    if (first) o << " 0";
    o << "\n";
  }
  return o.str();
}

std::string BasisChange::json() const {
  nlohmann::ordered_json j;
  j["from"] = from_labels;
  j["to"] = to_labels;
  j["matrix"] = nlohmann::ordered_json::array();
  for (const auto& row : coeffs) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(c.str());
    j["matrix"].push_back(r);
  }
  return j.dump();
}

}  // namespace cjw
