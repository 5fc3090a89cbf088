#include "cjw/projector.hpp"

#include "cjw/simplify.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace cjw {

namespace {

constexpr int kEulerLookahead = 3;

DiagObject obj(const Matching& m, int q) { return DiagObject(m, q, 0); }

// Identity on x with one dot on the boundary circle through point p, landing in q^2 x.
CobLC dot_at(const DiagObject& x, int p) {
  const BoundaryInfo bi = boundary_circles(x, x);
  return add_dot(identity(x), bi.circle_of_point[static_cast<std::size_t>(p)]).with_q(x.q, x.q + 2);
}

int top_cap_point(const Matching& m) {
  const int n = m.n();
  for (int p = n; p < 2 * n; ++p)
    if (m.partner(p) >= n) return p;
  throw DomainError("diagram has no top cap");
}

int bottom_cup_point(const Matching& m) {
  const int n = m.n();
  for (int p = 0; p < n; ++p)
    if (m.partner(p) < n) return p;
  throw DomainError("diagram has no bottom cup");
}

// Dot on the top cap plus sign times a dot on the bottom cup.
CobLC cap_cup_dots(const DiagObject& x, int sign) {
  return dot_at(x, top_cap_point(x.m)) + AlphaPoly(sign) * dot_at(x, bottom_cup_point(x.m));
}

Matching product(const Matching& bottom, const Matching& top) {
  auto [m, loops] = compose(bottom, top);
  if (loops != 0) throw DomainError("unexpected closed loop in a sequence diagram");
  return m;
}

DiagObject fk_object(int n, int m) {
  if (m == 0) return obj(Matching::identity(n), 0);
  if (m < n) {
    Matching d = Matching::generator(n, n - 1);
    for (int t = 2; t <= m; ++t) d = product(d, Matching::generator(n, n - t));
    return obj(d, m);
  }
  if (m <= 2 * (n - 1)) return fk_object(n, 2 * n - m - 1).shifted(2 * (m - n + 1));
  return fk_object(n, m - 2 * (n - 1)).shifted(2 * n);
}

struct Step {
  int l;
  int j;
  bool three;
};

// Saddle steps f_{l-1} for l in [1, upto], each with its turnback.
std::vector<Step> cfk_steps(int n, int upto) {
  std::vector<Step> s;
  for (int l = 1; l <= upto; ++l)
    if (fk(n, l - 1).out_map_degree == 1) s.push_back({l, fk_turnback(n, l - 1), fk(n, l).out_map_degree == 2});
  return s;
}

// [1 -> q e_j] or [1 -> q e_j -> q^3 e_j] with the dot difference on e_j.
ChainComplex step_factor(int n, const Step& s) {
  const DiagObject one = obj(Matching::identity(n), 0), e = obj(Matching::generator(n, s.j), 1);
  ChainComplex t;
  t.n = n;
  t.push_group({one}, {});
  Matrix m;
  m.set(0, 0, saddle(one, e));
  t.push_group({e}, m);
  if (s.three) {
    Matrix m2;
    m2.set(0, 0, dot_at(e, top_point(n, s.j)) - dot_at(e, bottom_point(s.j)));
    t.push_group({e.shifted(2)}, m2);
  }
  return t;
}

ChainComplex identity_complex(int n) { return single_object(obj(Matching::identity(n), 0)); }

std::string invariant_violation(const ChainComplex& c, int l) {
  const DiagObject one = obj(Matching::identity(c.n), 0);
  for (int k = c.min_degree; k <= c.max_degree(); ++k) {
    const auto& g = c.group(k);
    if (k < 0 && !g.empty()) return "nonzero chain group in negative degree";
    for (const auto& x : g) {
      if (x.q < 0) return "negative q-shift in degree " + std::to_string(k);
      if (k > 0 && k <= l && x.m.is_identity()) return "identity diagram in degree " + std::to_string(k);
    }
  }
  if (c.min_degree > 0 || c.group(0) != std::vector<DiagObject>{one}) return "degree-0 group is not the identity";
  const auto rep = validate(c);
  if (!rep.ok) return rep.message;
  return {};
}

// Complex for P_n certified in degrees < d.
ChainComplex build(int n, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, ChainComplex> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({n, d}); it != cache.end()) return it->second;
  }
  ChainComplex x;
  if (n == 1) {
    x = identity_complex(1);
  } else if (n == 2) {
    x = p2(d - 1).complex;
  } else {
    const std::vector<Step> steps = cfk_steps(n, d - 1);
    // every reduction loses one certified degree at the top
    x = disjoint_union(build(n - 1, d + static_cast<int>(steps.size())), 1);
    for (const Step& s : steps) {
      const ChainComplex st = stack(x, step_factor(n, s));
      // the terms of x sit last in each degree of the stack
      std::vector<std::vector<char>> fresh;
      for (int k = st.min_degree; k <= st.max_degree(); ++k) {
        const std::size_t total = st.group(k).size();
        const std::size_t old = (k >= x.min_degree && k <= x.max_degree()) ? x.group(k).size() : 0;
        std::vector<char> f(total, 1);
        for (std::size_t i = total - old; i < total; ++i) f[i] = 0;
        fresh.push_back(std::move(f));
      }
      x = cut_above(reduce(st, fresh).complex, st.trunc - 1);
    }
    x = cut_above(x, d);
    x.euler_order = fk(n, d).object.q;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(n, d), x);
  return x;
}

}  // namespace

TruncatedProjector p2(int l) {
  if (l < 0) throw DomainError("length must be nonnegative");
  const int n = 2;
  const DiagObject one = obj(Matching::identity(n), 0);
  const Matching e1 = Matching::generator(n, 1);
  ChainComplex c;
  c.n = n;
  c.push_group({one}, {});
  for (int k = 1; k <= l; ++k) {
    const DiagObject x = obj(e1, 2 * k - 1);
    Matrix m;
    if (k == 1) {
      m.set(0, 0, saddle(one, x));
    } else {
      // out of degree k-1: dot difference when k-1 is odd, dot sum when even
      const DiagObject prev = obj(e1, 2 * k - 3);
      m.set(0, 0, cap_cup_dots(prev, (k - 1) % 2 == 1 ? -1 : 1));
    }
    c.push_group({x}, m);
  }
  c.trunc = l + 1;
  c.euler_order = 2 * (l + 1) - 1;
  return {n, l, c, "explicit"};
}

TruncatedProjector p3(int l) {
  if (l < 0) throw DomainError("length must be nonnegative");
  const int n = 3;
  const Matching e1 = Matching::generator(n, 1), e2 = Matching::generator(n, 2);
  const Matching e12 = product(e1, e2), e21 = product(e2, e1);
  const DiagObject one = obj(Matching::identity(n), 0);
  // degree k >= 1 is k = 4p + r + 1: r = 0,3 hold (e1, e2), r = 1,2 hold (e1e2, e2e1)
  auto group = [&](int k) -> std::vector<DiagObject> {
    const int p = (k - 1) / 4, r = (k - 1) % 4;
    static const int offset[4] = {1, 2, 4, 5};
    const int q = 6 * p + offset[r];
    if (r == 0 || r == 3) return {obj(e1, q), obj(e2, q)};
    return {obj(e12, q), obj(e21, q)};
  };
  ChainComplex c;
  c.n = n;
  c.push_group({one}, {});
  for (int k = 1; k <= l; ++k) {
    const std::vector<DiagObject> tgt = group(k);
    Matrix m(2, k == 1 ? 1 : 2);
    if (k == 1) {
      m.set(0, 0, -saddle(one, tgt[0]));
      m.set(1, 0, saddle(one, tgt[1]));
    } else {
      const std::vector<DiagObject> src = group(k - 1);
      const int r = (k - 2) % 4;  // map out of degree k-1
      if (r == 0 || r == 2) {
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) m.set(a, b, saddle(src[static_cast<std::size_t>(b)], tgt[static_cast<std::size_t>(a)]));
      } else {
        for (int a = 0; a < 2; ++a) m.set(a, a, cap_cup_dots(src[static_cast<std::size_t>(a)], 1));
        m.set(0, 1, -basis(src[1], tgt[0]));
        m.set(1, 0, -basis(src[0], tgt[1]));
      }
    }
    c.push_group(tgt, m);
  }
  c.trunc = l + 1;
  c.euler_order = fk(3, l + 1).object.q;
  return {n, l, c, "explicit"};
}

FKTerm fk(int n, int m) {
  if (n < 2) throw DomainError("fk: need n >= 2");
  if (m < 0) throw DomainError("fk: need m >= 0");
  FKTerm t;
  t.n = n;
  t.m = m;
  t.object = fk_object(n, m);
  t.out_map_degree = fk_object(n, m + 1).q - t.object.q;
  if (t.out_map_degree != 1 && t.out_map_degree != 2) throw DomainError("fk: map degree out of range");
  return t;
}

int fk_turnback(int n, int m) {
  const FKTerm t = fk(n, m);
  if (t.out_map_degree != 1) return 0;
  const Matching next = fk_object(n, m + 1).m;
  for (int j = 1; j < n; ++j) {
    auto [p, loops] = compose(t.object.m, Matching::generator(n, j));
    if (loops == 0 && p == next) return j;
  }
  throw DomainError("fk: saddle step is not a single turnback");
}

CobLC fk_map(int n, int m) {
  const FKTerm t = fk(n, m);
  const DiagObject next = fk_object(n, m + 1);
  if (t.out_map_degree == 1) return saddle(t.object, next);
  // newest turnback: the last saddle step before m
  int prev = m - 1;
  int run = 0;  // degree-2 maps immediately before this one
  while (prev >= 0 && fk(n, prev).out_map_degree == 2) {
    --prev;
    ++run;
  }
  if (prev < 0) throw DomainError("fk: degree-2 map without a preceding turnback");
  const int j = fk_turnback(n, prev);
  const Matching before = fk_object(n, prev).m;
  // the cup of e_j joins the strands of `before` ending at top points j, j+1
  const int below = before.partner(top_point(n, j));
  const int sign = run % 2 == 0 ? -1 : 1;
  return dot_at(t.object, top_point(n, j)) + AlphaPoly(sign) * dot_at(t.object, below);
}

ChainComplex cfk(int n, int l) {
  if (n < 2) throw DomainError("cfk: need n >= 2");
  if (l < 0) throw DomainError("cfk: need l >= 0");
  ChainComplex c = disjoint_union(truncated_projector(n - 1, l).complex, 1);
  for (const Step& s : cfk_steps(n, l)) c = stack(c, step_factor(n, s));
  return c;
}

TruncatedProjector truncated_projector(int n, int l) {
  if (n < 1) throw DomainError("projector: need n >= 1");
  if (l < 0) throw DomainError("projector: need l >= 0");
  if (n == 1) return {1, l, identity_complex(1), "explicit"};
  if (n == 2) return p2(l);
  TruncatedProjector p{n, l, build(n, l + 1), "cfk-reduced"};
  // omitted degrees can start below the sequence shift; look a few degrees ahead
  const ChainComplex ahead = build(n, l + 1 + kEulerLookahead);
  for (int k = l + 1; k <= ahead.max_degree(); ++k)
    for (const auto& x : ahead.group(k)) p.complex.euler_order = std::min(p.complex.euler_order, x.q);
  if (const std::string v = invariant_violation(p.complex, l); !v.empty())
    throw DomainError("projector construction error: " + v);
  return p;
}

std::string UniversalReport::str() const {
  std::ostringstream os;
  for (const auto& [name, pass] : checks) os << (pass ? "PASS " : "FAIL ") << name << "\n";
  return os.str();
}

UniversalReport verify_universal(int n, int l, int w) {
  UniversalReport r;
  auto check = [&](const std::string& name, bool pass) {
    r.checks.emplace_back(name, pass);
    r.ok = r.ok && pass;
  };
  ChainComplex p;
  try {
    p = truncated_projector(n, l).complex;
  } catch (const DomainError& e) {
    check(std::string("construction: ") + e.what(), false);
    return r;
  }
  bool nonneg = true, no_identity = true;
  for (int k = p.min_degree; k <= p.max_degree(); ++k)
    for (const auto& x : p.group(k)) {
      if (k < 0 || x.q < 0) nonneg = false;
      if (k > 0 && x.m.is_identity()) no_identity = false;
    }
  check("1a nonnegative degrees and q-shifts", nonneg);
  check("1b degree-zero differential with d^2 = 0", validate(p).ok);
  check("2a degree 0 is the identity", p.min_degree <= 0 && p.group(0) == std::vector<DiagObject>{obj(Matching::identity(n), 0)});
  check("2b identity absent in degrees 1.." + std::to_string(l), no_identity);
  for (int i = 1; i < n; ++i) {
    const ChainComplex e = single_object(obj(Matching::generator(n, i), 0));
    check("3a P e" + std::to_string(i) + " contractible below degree " + std::to_string(l - w), contractible_in_window(stack(p, e), l, w));
    check("3b e" + std::to_string(i) + " P contractible below degree " + std::to_string(l - w), contractible_in_window(stack(e, p), l, w));
  }
  return r;
}

bool stability_check(int n, int l) {
  const ChainComplex a = truncated_projector(n, l).complex, b = truncated_projector(n, l + 1).complex;
  if (a.min_degree != b.min_degree || b.max_degree() < l) return false;
  for (int k = a.min_degree; k <= l; ++k) {
    if (a.group(k) != b.group(k)) return false;
    if (k < l && !(a.diff(k) == b.diff(k))) return false;
  }
  return true;
}

ChainComplex double_complex(const ChainComplex& c) { return stack(flip(c), c); }

std::vector<TurnbackClass> classify_turnbacks(int n, int i, int count) {
  if (i < 1 || i >= n) throw DomainError("classify: generator out of range");
  const Matching e = Matching::generator(n, i);
  std::vector<TurnbackClass> out(static_cast<std::size_t>(count));
  std::vector<char> commutes(static_cast<std::size_t>(count), 0);
  for (int m = 0; m < count; ++m) {
    auto [y, loops] = compose(fk_object(n, m).m, e);
    if (loops != 0) continue;
    for (int j : {i, i - 1, i - 2}) {
      if (j < 1 || j > n - 2) continue;
      if (y.partner(bottom_point(j)) == bottom_point(j + 1)) {
        out[static_cast<std::size_t>(m)] = {TurnbackClass::Kind::Commutes, j, m};
        commutes[static_cast<std::size_t>(m)] = 1;
        break;
      }
    }
  }
  for (int m = 0; m < count;) {
    if (commutes[static_cast<std::size_t>(m)]) {
      ++m;
      continue;
    }
    int end = m;
    while (end < count && !commutes[static_cast<std::size_t>(end)]) ++end;
    // split the run [m, end) into quadruples around degree-2 maps and triples
    int p = m;
    while (p < end) {
      TurnbackClass::Kind kind;
      int len;
      if (fk(n, p + 1).out_map_degree == 2) {
        kind = TurnbackClass::Kind::Quadruple;
        len = 4;
      } else {
        kind = TurnbackClass::Kind::Triple;
        len = 3;
      }
      const bool fits = p + len <= end;
      const bool clipped = end == count && !fits;
      for (int t = p; t < std::min(p + len, end); ++t)
        out[static_cast<std::size_t>(t)] = fits ? TurnbackClass{kind, 0, p}
                                                : TurnbackClass{clipped ? TurnbackClass::Kind::Boundary : TurnbackClass::Kind::Unclassified, 0, p};
      p += len;
    }
    m = end;
  }
  return out;
}

}  // namespace cjw
