#include "cjw/cob.hpp"

#include "json.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace cjw {

namespace {

using u64 = std::uint64_t;

constexpr int kMaxCircles = 64;

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[static_cast<std::size_t>(x)] != x) {
      p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
      x = p[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { p[static_cast<std::size_t>(find(a))] = find(b); }
};

// Least middle point of each loop formed when c is stacked on a.
std::vector<int> middle_loops(const Matching& a, const Matching& c) {
  const int n = a.n();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  // middle points reachable from the outer boundary
  for (int p = 0; p < 2 * n; ++p) {
    int layer = p < n ? 0 : 1, pt = p;
    for (;;) {
      int r = (layer == 0 ? a : c).partner(pt);
      if (layer == 0 && r < n) break;
      if (layer == 1 && r >= n) break;
      if (layer == 0) {
        used[static_cast<std::size_t>(r - n)] = 1;
        layer = 1;
        pt = r - n;
      } else {
        used[static_cast<std::size_t>(r)] = 1;
        layer = 0;
        pt = n + r;
      }
    }
  }
  std::vector<int> reps;
  for (int j = 0; j < n; ++j) {
    if (used[static_cast<std::size_t>(j)]) continue;
    reps.push_back(j);
    int mid = j;
    do {
      used[static_cast<std::size_t>(mid)] = 1;
      int via_a = a.partner(n + mid) - n;
      used[static_cast<std::size_t>(via_a)] = 1;
      mid = c.partner(via_a);
    } while (mid != j);
  }
  return reps;
}

// Least point of each loop in the closure of m.
std::vector<int> closure_reps(const Matching& m) {
  const int n = m.n();
  std::vector<char> seen(static_cast<std::size_t>(2 * n), 0);
  std::vector<int> reps;
  for (int s = 0; s < 2 * n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    reps.push_back(s);
    int p = s;
    while (!seen[static_cast<std::size_t>(p)]) {
      seen[static_cast<std::size_t>(p)] = 1;
      int r = m.partner(p);
      seen[static_cast<std::size_t>(r)] = 1;
      p = r < n ? r + n : r - n;
    }
  }
  return reps;
}

// Component of a glued surface: which input circles (two inputs) and which
// output circles it carries, and its genus.
struct Comp {
  u64 in0 = 0, in1 = 0, out = 0;
  int genus = 0;
  int b = 0;
};

struct GluePlan {
  int outputs = 0;
  std::vector<Comp> comps;
};

// Nodes [0,n0) are circles of input 0, [n0,n0+n1) of input 1, then `extra`
// undotted disks. Each node is a disk (chi 1); interval gluings cost 1.
GluePlan build_plan(int n0, int n1, int extra, const std::vector<std::pair<int, int>>& intervals,
                    const std::vector<std::pair<int, int>>& circles, const std::vector<int>& out_node) {
  const int total = n0 + n1 + extra;
  UnionFind uf(total);
  for (auto [x, y] : intervals) uf.unite(x, y);
  for (auto [x, y] : circles) uf.unite(x, y);
  std::map<int, int> idx;
  GluePlan plan;
  plan.outputs = static_cast<int>(out_node.size());
  std::vector<int> chi;
  auto comp_of = [&](int node) {
    int r = uf.find(node);
    auto [it, ins] = idx.try_emplace(r, static_cast<int>(plan.comps.size()));
    if (ins) {
      plan.comps.emplace_back();
      chi.push_back(0);
    }
    return it->second;
  };
  for (int v = 0; v < total; ++v) {
    int k = comp_of(v);
    ++chi[static_cast<std::size_t>(k)];
    if (v < n0) plan.comps[static_cast<std::size_t>(k)].in0 |= u64{1} << v;
    else if (v < n0 + n1) plan.comps[static_cast<std::size_t>(k)].in1 |= u64{1} << (v - n0);
  }
  for (auto [x, y] : intervals) --chi[static_cast<std::size_t>(comp_of(x))];
  for (std::size_t o = 0; o < out_node.size(); ++o) {
    auto& c = plan.comps[static_cast<std::size_t>(comp_of(out_node[o]))];
    c.out |= u64{1} << o;
    ++c.b;
  }
  for (std::size_t k = 0; k < plan.comps.size(); ++k) {
    int twice_g = 2 - chi[k] - plan.comps[k].b;
    if (twice_g < 0 || twice_g % 2) throw std::logic_error("glue: non-orientable or inconsistent surface");
    plan.comps[k].genus = twice_g / 2;
  }
  return plan;
}

struct Partial {
  u64 mask;
  long long c;
  int apow;
};

// Evaluates the plan on a pair of canonical inputs: each component becomes
// the iterated coproduct of 2^g X^(dots+g) in Z[alpha][X]/(X^2 - alpha).
void apply_pair(const GluePlan& plan, u64 m0, u64 m1, std::vector<Partial>& out) {
  out.clear();
  out.push_back({0, 1, 0});
  std::vector<Partial> next;
  for (const auto& c : plan.comps) {
    const int k = std::popcount(m0 & c.in0) + std::popcount(m1 & c.in1) + c.genus;
    const long long two_g = 1LL << c.genus;
    if (c.b == 0) {
      if (k % 2 == 0) {
        out.clear();
        return;
      }
      for (auto& p : out) {
        p.c *= two_g;
        p.apow += (k - 1) / 2;
      }
      continue;
    }
    const int parity = (c.b - 1 + k) % 2;
    next.clear();
    // enumerate subsets of c.out with the right parity
    for (u64 s = c.out;; s = (s - 1) & c.out) {
      const int sz = std::popcount(s);
      if (sz % 2 == parity) {
        const int ap = (c.b - 1 + k - sz) / 2;
        for (const auto& p : out) next.push_back({p.mask | s, p.c * two_g, p.apow + ap});
      }
      if (s == 0) break;
    }
    out.swap(next);
    if (out.empty()) return;
  }
}

std::vector<CobLC::Term> apply_plan(const GluePlan& plan, const std::vector<CobLC::Term>& a,
                                    const std::vector<CobLC::Term>& b) {
  std::map<u64, AlphaPoly> acc;
  std::vector<Partial> buf;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      apply_pair(plan, ma, mb, buf);
      if (buf.empty()) continue;
      AlphaPoly cab = ca * cb;
      for (const auto& p : buf) acc[p.mask] += AlphaPoly::alpha_pow(p.apow, p.c) * cab;
    }
  std::vector<CobLC::Term> t;
  for (auto& [m, c] : acc)
    if (!c.is_zero()) t.emplace_back(m, std::move(c));
  return t;
}

const std::vector<CobLC::Term>& unit_terms() {
  static const std::vector<CobLC::Term> t{{0, AlphaPoly(1)}};
  return t;
}

// Thread-safe memo keyed by a vector of (matching, circles) descriptors.
using PlanKey = std::vector<std::pair<Matching, int>>;

class PlanCache {
 public:
  template <class F>
  const GluePlan& get(const PlanKey& key, F build) {
    {
      std::lock_guard<std::mutex> g(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    GluePlan p = build();
    std::lock_guard<std::mutex> g(mu_);
    return map_.try_emplace(key, std::move(p)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<PlanKey, GluePlan> map_;
};

PlanCache& compose_cache() {
  static PlanCache c;
  return c;
}
PlanCache& stack_cache() {
  static PlanCache c;
  return c;
}
PlanCache& trace_cache() {
  static PlanCache c;
  return c;
}

std::pair<Matching, int> key_of(const DiagObject& a) { return {a.m, a.circles}; }

u64 remap_mask(u64 m, const std::vector<int>& to) {
  u64 r = 0;
  for (; m; m &= m - 1) r |= u64{1} << to[static_cast<std::size_t>(std::countr_zero(m))];
  return r;
}

nlohmann::json object_to_json(const DiagObject& a) {
  nlohmann::json j;
  j["n"] = a.n();
  j["q"] = a.q;
  j["matching"] = nlohmann::json::parse(a.m.json());
  std::vector<int> ids(static_cast<std::size_t>(a.circles));
  std::iota(ids.begin(), ids.end(), 0);
  j["circles"] = ids;
  return j;
}

DiagObject object_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> pr;
  for (const auto& e : j.at("matching")) pr.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  const auto ids = j.at("circles").get<std::vector<int>>();
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] != static_cast<int>(i)) throw DomainError("circle ids must be 0..k-1 in order");
  return DiagObject(Matching::from_pairs(n, pr), j.at("q").get<int>(), static_cast<int>(ids.size()));
}

}  // namespace

// ---- objects ----

std::string DiagObject::json() const { return object_to_json(*this).dump(); }

DiagObject DiagObject::parse_json(const std::string& s) { return object_from_json(nlohmann::json::parse(s)); }

std::string DiagObject::str() const {
  std::ostringstream os;
  if (q != 0) os << "q^" << q << ' ';
  os << m.word();
  if (circles) os << " +" << circles << 'o';
  return os.str();
}

DiagObject stack(const DiagObject& a, const DiagObject& c) {
  auto [m, loops] = compose(a.m, c.m);
  return DiagObject(m, a.q + c.q, a.circles + c.circles + loops);
}

DiagObject with_strands(const DiagObject& a, int k) { return DiagObject(a.m.with_strands(k), a.q, a.circles); }

DiagObject with_strands_left(const DiagObject& a, int k) { return DiagObject(a.m.with_strands_left(k), a.q, a.circles); }

DiagObject flipped(const DiagObject& a) { return DiagObject(a.m.flipped(), a.q, a.circles); }

DiagObject traced(const DiagObject& a) {
  return DiagObject::empty(a.q, a.m.closure_loops() + a.circles);
}

BoundaryInfo boundary_circles(const DiagObject& src, const DiagObject& tgt) {
  const int n = src.n();
  if (tgt.n() != n) throw DomainError("boundary: strand count mismatch");
  BoundaryInfo bi;
  bi.n = n;
  bi.circle_of_point.assign(static_cast<std::size_t>(2 * n), -1);
  for (int s = 0; s < 2 * n; ++s) {
    if (bi.circle_of_point[static_cast<std::size_t>(s)] != -1) continue;
    const int id = bi.arc_circles++;
    bi.arc_rep.push_back(s);
    int p = s;
    bool via_src = true;
    do {
      bi.circle_of_point[static_cast<std::size_t>(p)] = id;
      p = via_src ? src.m.partner(p) : tgt.m.partner(p);
      bi.circle_of_point[static_cast<std::size_t>(p)] = id;
      via_src = !via_src;
    } while (p != s);
  }
  bi.src_circles = src.circles;
  bi.tgt_circles = tgt.circles;
  if (bi.count() > kMaxCircles) throw DomainError("too many boundary circles");
  return bi;
}

CobDegree degree(const DiagObject& src, const DiagObject& tgt, std::uint64_t dots) {
  const int c = boundary_circles(src, tgt).count();
  const int t = c - src.n() - 2 * std::popcount(dots);
  const int qd = tgt.q - src.q;
  return {t, qd, t + qd};
}

// ---- linear combinations ----

CobLC::CobLC(DiagObject src, DiagObject tgt, std::vector<Term> terms) : src_(std::move(src)), tgt_(std::move(tgt)) {
  check_size();
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  const u64 limit = boundary_circles(src_, tgt_).count() == 64 ? ~u64{0}
                                                               : (u64{1} << boundary_circles(src_, tgt_).count()) - 1;
  for (auto& [m, c] : terms) {
    if (m & ~limit) throw DomainError("dot on a nonexistent circle");
    if (c.is_zero()) continue;
    if (!t_.empty() && t_.back().first == m) {
      t_.back().second += c;
      if (t_.back().second.is_zero()) t_.pop_back();
    } else {
      t_.emplace_back(m, std::move(c));
    }
  }
}

void CobLC::check_size() const {
  if (src_.n() != tgt_.n()) throw DomainError("morphism: strand count mismatch");
}

AlphaPoly CobLC::coeff(std::uint64_t mask) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), mask, [](const Term& t, u64 m) { return t.first < m; });
  return it != t_.end() && it->first == mask ? it->second : AlphaPoly(0);
}

CobLC CobLC::operator-() const {
  CobLC r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

namespace {
void merge_into(std::vector<CobLC::Term>& dst, const std::vector<CobLC::Term>& src, bool negate) {
  std::vector<CobLC::Term> out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, negate ? -src[j].second : src[j].second);
      ++j;
    } else {
      AlphaPoly c = negate ? dst[i].second - src[j].second : dst[i].second + src[j].second;
      if (!c.is_zero()) out.emplace_back(dst[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  dst.swap(out);
}
}  // namespace

CobLC& CobLC::operator+=(const CobLC& o) {
  if (!(o.src_ == src_ && o.tgt_ == tgt_)) throw DomainError("adding morphisms with different boundary");
  merge_into(t_, o.t_, false);
  return *this;
}

CobLC& CobLC::operator-=(const CobLC& o) {
  if (!(o.src_ == src_ && o.tgt_ == tgt_)) throw DomainError("subtracting morphisms with different boundary");
  merge_into(t_, o.t_, true);
  return *this;
}

CobLC operator*(const AlphaPoly& s, const CobLC& f) {
  CobLC r(f.src_, f.tgt_);
  if (s.is_zero()) return r;
  for (const auto& [m, c] : f.t_) r.t_.emplace_back(m, s * c);
  return r;
}

bool CobLC::homogeneous_of_degree(int total) const {
  // alpha is worth two dots
  for (const auto& [m, c] : t_) {
    const int d = degree(src_, tgt_, m).total;
    for (int k = 0; k <= c.degree(); ++k)
      if (c.coeffs()[static_cast<std::size_t>(k)] != 0 && d - 4 * k != total) return false;
  }
  return true;
}

int CobLC::unit_identity_sign() const {
  if (!(src_ == tgt_) || t_.empty()) return 0;
  const CobLC id = identity(src_);
  if (id.t_.size() != t_.size()) return 0;
  const AlphaPoly& u = t_.front().second;
  if (!u.is_unit()) return 0;
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (t_[i].first != id.t_[i].first || !(t_[i].second == u)) return 0;
  return u == AlphaPoly(1) ? 1 : -1;
}

CobLC CobLC::with_q(int src_q, int tgt_q) const {
  CobLC r = *this;
  r.src_.q = src_q;
  r.tgt_.q = tgt_q;
  return r;
}

std::string CobLC::json() const {
  nlohmann::json j;
  j["source"] = object_to_json(src_);
  j["target"] = object_to_json(tgt_);
  const int c = boundary_circles(src_, tgt_).count();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, co] : t_) {
    nlohmann::json blocks = nlohmann::json::array();
    for (int i = 0; i < c; ++i) blocks.push_back({{"circles", {i}}, {"dot", static_cast<int>((m >> i) & 1)}});
    terms.push_back({{"coeff", co.str()}, {"blocks", blocks}});
  }
  j["terms"] = terms;
  return j.dump();
}

CobLC CobLC::parse_json(const std::string& s) {
  auto j = nlohmann::json::parse(s);
  DiagObject a = object_from_json(j.at("source")), b = object_from_json(j.at("target"));
  const int c = boundary_circles(a, b).count();
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    u64 m = 0;
    std::vector<char> seen(static_cast<std::size_t>(c), 0);
    for (const auto& blk : t.at("blocks")) {
      const auto& cs = blk.at("circles");
      if (cs.size() != 1) throw DomainError("only singleton blocks are canonical");
      const int i = cs.at(0).get<int>();
      if (i < 0 || i >= c || seen[static_cast<std::size_t>(i)]) throw DomainError("bad block circle");
      seen[static_cast<std::size_t>(i)] = 1;
      const int d = blk.at("dot").get<int>();
      if (d != 0 && d != 1) throw DomainError("dot flag must be 0 or 1");
      if (d) m |= u64{1} << i;
    }
    if (std::count(seen.begin(), seen.end(), 1) != c) throw DomainError("every boundary circle needs a block");
    terms.emplace_back(m, AlphaPoly::parse(t.at("coeff").get<std::string>()));
  }
  return CobLC(a, b, std::move(terms));
}

std::string CobLC::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.str() << ")[";
    for (u64 x = m; x; x &= x - 1) os << 'd' << std::countr_zero(x);
    os << ']';
  }
  return os.str();
}

// ---- gluing ----

CobLC compose(const CobLC& f, const CobLC& g) {
  if (!(f.tgt() == g.src())) throw DomainError("compose: boundary mismatch");
  const DiagObject &A = f.src(), &B = f.tgt(), &C = g.tgt();
  if (f.is_zero() || g.is_zero()) return zero(A, C);
  const GluePlan& plan = compose_cache().get({key_of(A), key_of(B), key_of(C)}, [&] {
    const BoundaryInfo bf = boundary_circles(A, B), bg = boundary_circles(B, C), bo = boundary_circles(A, C);
    const int nf = bf.count(), n = A.n();
    std::vector<std::pair<int, int>> iv, ci;
    for (int p = 0; p < 2 * n; ++p)
      if (B.m.partner(p) > p)
        iv.emplace_back(bf.circle_of_point[static_cast<std::size_t>(p)], nf + bg.circle_of_point[static_cast<std::size_t>(p)]);
    for (int j = 0; j < B.circles; ++j) ci.emplace_back(bf.tgt_free(j), nf + bg.src_free(j));
    std::vector<int> out;
    for (int r : bo.arc_rep) out.push_back(bf.circle_of_point[static_cast<std::size_t>(r)]);
    for (int j = 0; j < A.circles; ++j) out.push_back(bf.src_free(j));
    for (int j = 0; j < C.circles; ++j) out.push_back(nf + bg.tgt_free(j));
    return build_plan(nf, bg.count(), 0, iv, ci, out);
  });
  return CobLC(A, C, apply_plan(plan, f.terms(), g.terms()));
}

CobLC stack(const CobLC& f, const CobLC& g) {
  const DiagObject &A = f.src(), &B = f.tgt(), &C = g.src(), &D = g.tgt();
  if (A.n() != C.n()) throw DomainError("stack: strand count mismatch");
  const DiagObject X = stack(A, C), Y = stack(B, D);
  if (f.is_zero() || g.is_zero()) return zero(X, Y);
  const GluePlan& plan = stack_cache().get({key_of(A), key_of(B), key_of(C), key_of(D)}, [&] {
    const int n = A.n();
    const BoundaryInfo bf = boundary_circles(A, B), bg = boundary_circles(C, D), bo = boundary_circles(X, Y);
    const int nf = bf.count();
    auto fc = [&](int p) { return bf.circle_of_point[static_cast<std::size_t>(p)]; };
    auto gc = [&](int p) { return nf + bg.circle_of_point[static_cast<std::size_t>(p)]; };
    std::vector<std::pair<int, int>> iv;
    for (int p = 0; p < n; ++p) iv.emplace_back(fc(n + p), gc(p));
    std::vector<int> out;
    for (int r : bo.arc_rep) out.push_back(r < n ? fc(r) : gc(r));
    for (int j = 0; j < A.circles; ++j) out.push_back(bf.src_free(j));
    for (int j = 0; j < C.circles; ++j) out.push_back(nf + bg.src_free(j));
    for (int p : middle_loops(A.m, C.m)) out.push_back(fc(n + p));
    for (int j = 0; j < B.circles; ++j) out.push_back(bf.tgt_free(j));
    for (int j = 0; j < D.circles; ++j) out.push_back(nf + bg.tgt_free(j));
    for (int p : middle_loops(B.m, D.m)) out.push_back(fc(n + p));
    return build_plan(nf, bg.count(), 0, iv, {}, out);
  });
  return CobLC(X, Y, apply_plan(plan, f.terms(), g.terms()));
}

CobLC traced(const CobLC& f) {
  const DiagObject &A = f.src(), &B = f.tgt();
  const DiagObject X = traced(A), Y = traced(B);
  if (f.is_zero()) return zero(X, Y);
  const GluePlan& plan = trace_cache().get({key_of(A), key_of(B)}, [&] {
    const int n = A.n();
    const BoundaryInfo bf = boundary_circles(A, B);
    const int nf = bf.count();
    auto fc = [&](int p) { return bf.circle_of_point[static_cast<std::size_t>(p)]; };
    std::vector<std::pair<int, int>> iv;
    for (int i = 0; i < n; ++i) {
      iv.emplace_back(nf + i, fc(i));
      iv.emplace_back(nf + i, fc(n + i));
    }
    std::vector<int> out;
    for (int r : closure_reps(A.m)) out.push_back(fc(r));
    for (int j = 0; j < A.circles; ++j) out.push_back(bf.src_free(j));
    for (int r : closure_reps(B.m)) out.push_back(fc(r));
    for (int j = 0; j < B.circles; ++j) out.push_back(bf.tgt_free(j));
    return build_plan(nf, 0, n, iv, {}, out);
  });
  return CobLC(X, Y, apply_plan(plan, f.terms(), unit_terms()));
}

CobLC with_strands(const CobLC& f, int k) {
  const DiagObject X = with_strands(f.src(), k), Y = with_strands(f.tgt(), k);
  const BoundaryInfo bo = boundary_circles(f.src(), f.tgt()), bn = boundary_circles(X, Y);
  const int n = f.src().n();
  std::vector<int> to(static_cast<std::size_t>(bo.count()));
  for (int c = 0; c < bo.arc_circles; ++c) {
    int r = bo.arc_rep[static_cast<std::size_t>(c)];
    to[static_cast<std::size_t>(c)] = bn.circle_of_point[static_cast<std::size_t>(r < n ? r : r + k)];
  }
  for (int j = 0; j < bo.src_circles + bo.tgt_circles; ++j)
    to[static_cast<std::size_t>(bo.arc_circles + j)] = bn.arc_circles + j;
  std::vector<CobLC::Term> t;
  for (const auto& [m, c] : f.terms()) t.emplace_back(remap_mask(m, to), c);
  return CobLC(X, Y, std::move(t));
}

CobLC with_strands_left(const CobLC& f, int k) {
  const DiagObject X = with_strands_left(f.src(), k), Y = with_strands_left(f.tgt(), k);
  const BoundaryInfo bo = boundary_circles(f.src(), f.tgt()), bn = boundary_circles(X, Y);
  const int n = f.src().n();
  std::vector<int> to(static_cast<std::size_t>(bo.count()));
  for (int c = 0; c < bo.arc_circles; ++c) {
    int r = bo.arc_rep[static_cast<std::size_t>(c)];
    to[static_cast<std::size_t>(c)] = bn.circle_of_point[static_cast<std::size_t>(r < n ? r + k : r + 2 * k)];
  }
  for (int j = 0; j < bo.src_circles + bo.tgt_circles; ++j)
    to[static_cast<std::size_t>(bo.arc_circles + j)] = bn.arc_circles + j;
  std::vector<CobLC::Term> t;
  for (const auto& [m, c] : f.terms()) t.emplace_back(remap_mask(m, to), c);
  return CobLC(X, Y, std::move(t));
}

CobLC flipped(const CobLC& f) {
  const DiagObject X = flipped(f.src()), Y = flipped(f.tgt());
  const BoundaryInfo bo = boundary_circles(f.src(), f.tgt()), bn = boundary_circles(X, Y);
  const int n = f.src().n();
  std::vector<int> to(static_cast<std::size_t>(bo.count()));
  for (int c = 0; c < bo.arc_circles; ++c) {
    int r = bo.arc_rep[static_cast<std::size_t>(c)];
    to[static_cast<std::size_t>(c)] = bn.circle_of_point[static_cast<std::size_t>(r < n ? r + n : r - n)];
  }
  for (int j = 0; j < bo.src_circles + bo.tgt_circles; ++j)
    to[static_cast<std::size_t>(bo.arc_circles + j)] = bn.arc_circles + j;
  std::vector<CobLC::Term> t;
  for (const auto& [m, c] : f.terms()) t.emplace_back(remap_mask(m, to), c);
  return CobLC(X, Y, std::move(t));
}

// ---- constructors ----

CobLC zero(const DiagObject& src, const DiagObject& tgt) { return CobLC(src, tgt); }

CobLC basis(const DiagObject& src, const DiagObject& tgt, std::uint64_t dots) {
  return CobLC(src, tgt, {{dots, AlphaPoly(1)}});
}

CobLC identity(const DiagObject& a) {
  // arcs: undotted disks; each free circle: cylinder = dot on source copy + dot on target copy
  const BoundaryInfo bi = boundary_circles(a, a);
  std::vector<CobLC::Term> t{{0, AlphaPoly(1)}};
  for (int j = 0; j < a.circles; ++j) {
    std::vector<CobLC::Term> nt;
    for (const auto& [m, c] : t) {
      nt.emplace_back(m | (u64{1} << bi.src_free(j)), c);
      nt.emplace_back(m | (u64{1} << bi.tgt_free(j)), c);
    }
    t.swap(nt);
  }
  return CobLC(a, a, std::move(t));
}

CobLC saddle(const DiagObject& src, const DiagObject& tgt) {
  if (src.circles || tgt.circles) throw DomainError("saddle: objects must be circle-free");
  if (src.n() != tgt.n()) throw DomainError("saddle: strand count mismatch");
  if (boundary_circles(src, tgt).count() != src.n() - 1) throw DomainError("saddle: diagrams differ by more than one surgery");
  return basis(src, tgt, 0);
}

CobLC cap(const DiagObject& a, int c, bool dotted) {
  if (c < 0 || c >= a.circles) throw DomainError("cap: no such circle");
  DiagObject b(a.m, a.q + (dotted ? 1 : -1), a.circles - 1);
  const BoundaryInfo bi = boundary_circles(a, b);
  // identity on the surviving circles, disk with optional dot on circle c
  std::vector<CobLC::Term> t{{dotted ? u64{1} << bi.src_free(c) : 0, AlphaPoly(1)}};
  for (int j = 0, k = 0; j < a.circles; ++j) {
    if (j == c) continue;
    std::vector<CobLC::Term> nt;
    for (const auto& [m, co] : t) {
      nt.emplace_back(m | (u64{1} << bi.src_free(j)), co);
      nt.emplace_back(m | (u64{1} << bi.tgt_free(k)), co);
    }
    t.swap(nt);
    ++k;
  }
  return CobLC(a, b, std::move(t));
}

CobLC cup(const DiagObject& a, bool dotted) {
  DiagObject b(a.m, a.q + (dotted ? 1 : -1), a.circles + 1);
  const BoundaryInfo bi = boundary_circles(a, b);
  std::vector<CobLC::Term> t{{dotted ? u64{1} << bi.tgt_free(a.circles) : 0, AlphaPoly(1)}};
  for (int j = 0; j < a.circles; ++j) {
    std::vector<CobLC::Term> nt;
    for (const auto& [m, co] : t) {
      nt.emplace_back(m | (u64{1} << bi.src_free(j)), co);
      nt.emplace_back(m | (u64{1} << bi.tgt_free(j)), co);
    }
    t.swap(nt);
  }
  return CobLC(a, b, std::move(t));
}

CobLC add_dot(const CobLC& f, int c) {
  if (c < 0 || c >= boundary_circles(f.src(), f.tgt()).count()) throw DomainError("add_dot: no such circle");
  const u64 bit = u64{1} << c;
  std::vector<CobLC::Term> t;
  for (const auto& [m, co] : f.terms()) {
    if (m & bit) t.emplace_back(m & ~bit, AlphaPoly::alpha_pow(1) * co);
    else t.emplace_back(m | bit, co);
  }
  return CobLC(f.src(), f.tgt(), std::move(t));
}

}  // namespace cjw
