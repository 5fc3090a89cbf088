#include "cjw/simplify.hpp"

#include "json.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

namespace cjw {

namespace {

using u64 = std::uint64_t;

// Rank/select over alive flags.
class Fenwick {
 public:
  explicit Fenwick(int n) : t_(static_cast<std::size_t>(n) + 1, 0) {
    for (int i = 0; i < n; ++i) add(i, 1);
  }
  void add(int i, int v) {
    for (++i; i < static_cast<int>(t_.size()); i += i & -i) t_[static_cast<std::size_t>(i)] += v;
  }
  int prefix(int i) const {  // alive count in [0, i)
    int s = 0;
    for (; i > 0; i -= i & -i) s += t_[static_cast<std::size_t>(i)];
    return s;
  }

 private:
  std::vector<int> t_;
};

// Sparse complex with stable object ids for in-place Gaussian elimination.
struct Work {
  struct Diff {
    std::vector<std::map<int, CobLC>> cols;  // source id -> target id -> entry
    std::vector<std::set<int>> rows;         // target id -> source ids
  };

  ChainComplex shape;  // n, min_degree, trunc, euler_order
  std::vector<std::vector<DiagObject>> objs;
  std::vector<std::vector<char>> alive;
  std::vector<Fenwick> rank;
  std::vector<Diff> d;  // d[k]: degree k -> k+1 (relative)

  explicit Work(const ChainComplex& c) : shape(c) {
    shape.groups.clear();
    shape.diffs.clear();
    const std::size_t g = c.groups.size();
    objs = c.groups;
    for (const auto& v : objs) {
      alive.emplace_back(v.size(), 1);
      rank.emplace_back(static_cast<int>(v.size()));
    }
    d.resize(g);
    for (std::size_t k = 0; k < g; ++k) {
      d[k].cols.resize(objs[k].size());
      d[k].rows.resize(k + 1 < g ? objs[k + 1].size() : 0);
    }
    for (std::size_t k = 0; k + 1 < g; ++k)
      for (const auto& [rc, f] : c.diffs[k].entries) {
        d[k].cols[static_cast<std::size_t>(rc.second)].emplace(rc.first, f);
        d[k].rows[static_cast<std::size_t>(rc.first)].insert(rc.second);
      }
  }

  int index_of(std::size_t k, int id) const { return rank[k].prefix(id); }

  const CobLC* entry(std::size_t k, int row, int col) const {
    const auto& m = d[k].cols[static_cast<std::size_t>(col)];
    auto it = m.find(row);
    return it == m.end() ? nullptr : &it->second;
  }

  void set_entry(std::size_t k, int row, int col, CobLC f) {
    auto& m = d[k].cols[static_cast<std::size_t>(col)];
    if (f.is_zero()) {
      if (m.erase(row)) d[k].rows[static_cast<std::size_t>(row)].erase(col);
      return;
    }
    m.insert_or_assign(row, std::move(f));
    d[k].rows[static_cast<std::size_t>(row)].insert(col);
  }

  static int unit_sign(const CobLC& f) {
    if (!(f.src() == f.tgt())) return 0;
    if (f.src().circles == 0) {
      if (f.terms().size() != 1 || f.terms()[0].first != 0) return 0;
      const AlphaPoly& u = f.terms()[0].second;
      if (u == AlphaPoly(1)) return 1;
      if (u == AlphaPoly(-1)) return -1;
      return 0;
    }
    return f.unit_identity_sign();
  }

  // Cancels the entry (row in k+1, col in k); returns false if it is not a unit identity.
  bool eliminate(std::size_t k, int row, int col) {
    const CobLC* phi = entry(k, row, col);
    if (!phi) return false;
    const int u = unit_sign(*phi);
    if (u == 0) return false;
    // eta - mu phi^-1 lambda on the remaining block
    std::vector<std::pair<int, CobLC>> lambda, mu;
    for (int c : d[k].rows[static_cast<std::size_t>(row)])
      if (c != col) lambda.emplace_back(c, *entry(k, row, c));
    for (const auto& [r, f] : d[k].cols[static_cast<std::size_t>(col)])
      if (r != row) mu.emplace_back(r, f);
    for (const auto& [c, l] : lambda)
      for (const auto& [r, m] : mu) {
        CobLC corr = compose(l, m);
        if (u < 0) corr = -corr;
        const CobLC* cur = entry(k, r, c);
        set_entry(k, r, c, cur ? *cur - corr : -corr);
      }
    // drop column col and row row of d_k
    for (const auto& [r, f] : d[k].cols[static_cast<std::size_t>(col)]) d[k].rows[static_cast<std::size_t>(r)].erase(col);
    d[k].cols[static_cast<std::size_t>(col)].clear();
    for (int c : d[k].rows[static_cast<std::size_t>(row)]) d[k].cols[static_cast<std::size_t>(c)].erase(row);
    d[k].rows[static_cast<std::size_t>(row)].clear();
    // row col of d_{k-1}, column row of d_{k+1}
    if (k > 0) {
      auto& dm = d[k - 1];
      for (int c : dm.rows[static_cast<std::size_t>(col)]) dm.cols[static_cast<std::size_t>(c)].erase(col);
      dm.rows[static_cast<std::size_t>(col)].clear();
    }
    if (k + 1 < d.size()) {
      auto& dp = d[k + 1];
      for (const auto& [r, f] : dp.cols[static_cast<std::size_t>(row)]) dp.rows[static_cast<std::size_t>(r)].erase(row);
      dp.cols[static_cast<std::size_t>(row)].clear();
    }
    alive[k][static_cast<std::size_t>(col)] = 0;
    alive[k + 1][static_cast<std::size_t>(row)] = 0;
    rank[k].add(col, -1);
    rank[k + 1].add(row, -1);
    return true;
  }

  ChainComplex finish() const {
    ChainComplex c = shape;
    std::vector<std::vector<int>> newidx(objs.size());
    for (std::size_t k = 0; k < objs.size(); ++k) {
      std::vector<DiagObject> g;
      newidx[k].assign(objs[k].size(), -1);
      for (std::size_t i = 0; i < objs[k].size(); ++i)
        if (alive[k][i]) {
          newidx[k][i] = static_cast<int>(g.size());
          g.push_back(objs[k][i]);
        }
      c.groups.push_back(std::move(g));
    }
    for (std::size_t k = 0; k + 1 < objs.size(); ++k) {
      Matrix m(static_cast<int>(c.groups[k + 1].size()), static_cast<int>(c.groups[k].size()));
      for (std::size_t col = 0; col < d[k].cols.size(); ++col)
        for (const auto& [r, f] : d[k].cols[col])
          m.entries.emplace(std::make_pair(newidx[k + 1][static_cast<std::size_t>(r)], newidx[k][col]), f);
      c.diffs.push_back(std::move(m));
    }
    return c;
  }
};

std::size_t rel(const ChainComplex& c, int degree) {
  const long long k = static_cast<long long>(degree) - c.min_degree;
  if (k < 0 || k >= static_cast<long long>(c.groups.size())) throw DomainError("degree out of range");
  return static_cast<std::size_t>(k);
}

// Removes bit position `p` from a mask; higher bits shift down.
u64 drop_bit(u64 m, int p) {
  const u64 low = (u64{1} << p) - 1;
  return (m & low) | ((m >> (p + 1)) << p);
}

}  // namespace

// ---- trace JSON ----

std::string ReductionTrace::json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : steps) {
    if (s.kind == ReductionStep::Kind::Deloop) j.push_back({{"kind", "deloop"}, {"degree", s.degree}, {"index", s.row}});
    else j.push_back({{"kind", "eliminate"}, {"degree", s.degree}, {"row", s.row}, {"col", s.col}});
  }
  return nlohmann::json{{"steps", j}}.dump();
}

ReductionTrace ReductionTrace::parse_json(const std::string& s) {
  auto j = nlohmann::json::parse(s);
  ReductionTrace t;
  for (const auto& e : j.at("steps")) {
    ReductionStep st;
    const std::string kind = e.at("kind").get<std::string>();
    st.degree = e.at("degree").get<int>();
    if (kind == "deloop") {
      st.kind = ReductionStep::Kind::Deloop;
      st.row = e.at("index").get<int>();
    } else if (kind == "eliminate") {
      st.kind = ReductionStep::Kind::Eliminate;
      st.row = e.at("row").get<int>();
      st.col = e.at("col").get<int>();
    } else {
      throw DomainError("unknown reduction step kind: " + kind);
    }
    t.steps.push_back(st);
  }
  return t;
}

// ---- delooping ----

ChainComplex deloop_step(const ChainComplex& c, int degree, int index) {
  const std::size_t k = rel(c, degree);
  const auto& g = c.groups[k];
  if (index < 0 || index >= static_cast<int>(g.size())) throw DomainError("deloop: no such object");
  const DiagObject x = g[static_cast<std::size_t>(index)];
  if (x.circles == 0) throw DomainError("deloop: object has no free circle");
  const DiagObject y(x.m, 0, x.circles - 1);
  const DiagObject ym = DiagObject(y.m, x.q - 1, y.circles), yp = DiagObject(y.m, x.q + 1, y.circles);
  ChainComplex r = c;
  auto& ng = r.groups[k];
  ng[static_cast<std::size_t>(index)] = ym;
  ng.insert(ng.begin() + index + 1, yp);
  auto shift = [&](int i) { return i > index ? i + 1 : i; };
  // incoming: d_{k-1} rows; x's last circle is the last boundary circle of Hom(w, x)
  if (k > 0) {
    Matrix m(static_cast<int>(ng.size()), c.diffs[k - 1].cols);
    for (const auto& [rc, f] : c.diffs[k - 1].entries) {
      if (rc.first != index) {
        m.entries.emplace(std::make_pair(shift(rc.first), rc.second), f);
        continue;
      }
      const int bit = boundary_circles(f.src(), x).tgt_free(x.circles - 1);
      const u64 b = u64{1} << bit;
      std::vector<CobLC::Term> tm, tp;
      for (const auto& [mask, co] : f.terms()) (mask & b ? tm : tp).emplace_back(drop_bit(mask, bit), co);
      m.set(index, rc.second, CobLC(f.src(), ym, std::move(tm)));
      m.set(index + 1, rc.second, CobLC(f.src(), yp, std::move(tp)));
    }
    r.diffs[k - 1] = std::move(m);
  }
  if (k < c.diffs.size()) {
    Matrix m(c.diffs[k].rows, static_cast<int>(ng.size()));
    for (const auto& [rc, f] : c.diffs[k].entries) {
      if (rc.second != index) {
        m.entries.emplace(std::make_pair(rc.first, shift(rc.second)), f);
        continue;
      }
      const int bit = boundary_circles(x, f.tgt()).src_free(x.circles - 1);
      const u64 b = u64{1} << bit;
      std::vector<CobLC::Term> tm, tp;
      for (const auto& [mask, co] : f.terms()) (mask & b ? tp : tm).emplace_back(drop_bit(mask, bit), co);
      m.set(rc.first, index, CobLC(ym, f.tgt(), std::move(tm)));
      m.set(rc.first, index + 1, CobLC(yp, f.tgt(), std::move(tp)));
    }
    r.diffs[k] = std::move(m);
  }
  return r;
}

Reduced deloop(const ChainComplex& c) {
  Reduced out;
  ChainComplex r = c;
  // each object with k circles becomes 2^k objects, indexed by v with bit j
  // set when circle j takes its q^+1 copy; increasing v is the order produced
  // by repeatedly delooping the last circle
  for (std::size_t k = 0; k < c.groups.size(); ++k) {
    std::vector<DiagObject> ng;
    const int deg = c.min_degree + static_cast<int>(k);
    for (const DiagObject& x : c.groups[k]) {
      std::function<void(int, int)> rec = [&](int at, int left) {
        if (left == 0) return;
        out.trace.steps.push_back({ReductionStep::Kind::Deloop, deg, at, 0});
        rec(at, left - 1);
        rec(at + (1 << (left - 1)), left - 1);
      };
      rec(static_cast<int>(ng.size()), x.circles);
      for (u64 v = 0; v < (u64{1} << x.circles); ++v) {
        const int plus = std::popcount(v);
        ng.push_back(DiagObject(x.m, x.q + plus - (x.circles - plus), 0));
      }
    }
    r.groups[k] = std::move(ng);
  }
  std::vector<std::vector<int>> first(c.groups.size());
  for (std::size_t k = 0; k < c.groups.size(); ++k) {
    first[k].assign(c.groups[k].size() + 1, 0);
    for (std::size_t i = 0; i < c.groups[k].size(); ++i)
      first[k][i + 1] = first[k][i] + (1 << c.groups[k][i].circles);
  }
  for (std::size_t k = 0; k + 1 < c.groups.size(); ++k) {
    Matrix m(static_cast<int>(r.groups[k + 1].size()), static_cast<int>(r.groups[k].size()));
    for (const auto& [rc, f] : c.diffs[k].entries) {
      const DiagObject &w = c.groups[k][static_cast<std::size_t>(rc.second)], &x = c.groups[k + 1][static_cast<std::size_t>(rc.first)];
      const BoundaryInfo bi = boundary_circles(w, x);
      u64 wbits = 0, xbits = 0;
      for (int j = 0; j < w.circles; ++j) wbits |= u64{1} << bi.src_free(j);
      for (int j = 0; j < x.circles; ++j) xbits |= u64{1} << bi.tgt_free(j);
      const u64 arcs = (u64{1} << bi.arc_circles) - 1;
      for (u64 sv = 0; sv < (u64{1} << w.circles); ++sv)
        for (u64 tv = 0; tv < (u64{1} << x.circles); ++tv) {
          // source circle j: minus keeps undotted, plus keeps dotted
          // target circle j: minus keeps dotted, plus keeps undotted
          u64 want = 0;
          for (int j = 0; j < w.circles; ++j)
            if ((sv >> j) & 1) want |= u64{1} << bi.src_free(j);
          for (int j = 0; j < x.circles; ++j)
            if (!((tv >> j) & 1)) want |= u64{1} << bi.tgt_free(j);
          const u64 bits = wbits | xbits;
          std::vector<CobLC::Term> t;
          for (const auto& [mask, co] : f.terms())
            if ((mask & bits) == want) t.emplace_back(mask & arcs, co);
          if (t.empty()) continue;
          const int col = first[k][static_cast<std::size_t>(rc.second)] + static_cast<int>(sv);
          const int row = first[k + 1][static_cast<std::size_t>(rc.first)] + static_cast<int>(tv);
          m.set(row, col, CobLC(r.groups[k][static_cast<std::size_t>(col)], r.groups[k + 1][static_cast<std::size_t>(row)], std::move(t)));
        }
    }
    r.diffs[k] = std::move(m);
  }
  out.complex = std::move(r);
  return out;
}

// ---- elimination ----

ChainComplex eliminate_step(const ChainComplex& c, int degree, int row, int col) {
  const std::size_t k = rel(c, degree);
  if (k + 1 >= c.groups.size()) throw DomainError("eliminate: no differential at this degree");
  if (row < 0 || col < 0 || row >= static_cast<int>(c.groups[k + 1].size()) || col >= static_cast<int>(c.groups[k].size()))
    throw DomainError("eliminate: index out of range");
  Work w(c);
  if (!w.eliminate(k, row, col)) throw DomainError("eliminate: entry is not a unit multiple of the identity");
  return w.finish();
}

Reduced eliminate(const ChainComplex& c, EntryLoc at) {
  return {eliminate_step(c, at.degree, at.row, at.col), {{{ReductionStep::Kind::Eliminate, at.degree, at.row, at.col}}}};
}

Reduced eliminate_simultaneous(const ChainComplex& c, const std::vector<EntryLoc>& schedule) {
  Work w(c);
  Reduced out;
  std::set<std::pair<std::size_t, int>> used;
  for (const auto& e : schedule) {
    const std::size_t k = rel(c, e.degree);
    if (k + 1 >= c.groups.size()) throw DomainError("schedule entry outside the complex");
    if (!used.insert({k, e.col}).second || !used.insert({k + 1, e.row}).second)
      throw DomainError("schedule entries overlap");
    const CobLC* f = w.entry(k, e.row, e.col);
    if (!f || Work::unit_sign(*f) == 0) throw DomainError("schedule entry is not invertible");
  }
  for (int parity = 0; parity < 2; ++parity)
    for (const auto& e : schedule) {
      const std::size_t k = rel(c, e.degree);
      if (static_cast<int>(k % 2) != parity) continue;
      const int ri = w.index_of(k + 1, e.row), ci = w.index_of(k, e.col);
      if (!w.eliminate(k, e.row, e.col)) throw DomainError("schedule entry is not invertible after earlier eliminations");
      out.trace.steps.push_back({ReductionStep::Kind::Eliminate, e.degree, ri, ci});
    }
  out.complex = w.finish();
  return out;
}

Reduced reduce(const ChainComplex& c) {
  std::vector<std::vector<char>> all;
  for (const auto& g : c.groups) all.emplace_back(g.size(), 1);
  return reduce(c, all);
}

Reduced reduce(const ChainComplex& c, const std::vector<std::vector<char>>& eligible) {
  if (eligible.size() != c.groups.size()) throw DomainError("reduce: eligibility shape mismatch");
  Reduced dl = deloop(c);
  // delooping expands object i into 2^circles consecutive objects
  std::vector<std::vector<char>> ok(c.groups.size());
  for (std::size_t k = 0; k < c.groups.size(); ++k) {
    if (eligible[k].size() != c.groups[k].size()) throw DomainError("reduce: eligibility shape mismatch");
    for (std::size_t i = 0; i < c.groups[k].size(); ++i) ok[k].insert(ok[k].end(), std::size_t{1} << c.groups[k][i].circles, eligible[k][i]);
  }
  Work w(dl.complex);
  Reduced out;
  out.trace = std::move(dl.trace);
  for (std::size_t k = 0; k + 1 < w.objs.size(); ++k) {
    // eliminations in d_k only rewrite d_k, so one degree at a time suffices
    bool changed = true;
    while (changed) {
      changed = false;
      for (int row = 0; row < static_cast<int>(w.objs[k + 1].size()); ++row) {
        if (!w.alive[k + 1][static_cast<std::size_t>(row)]) continue;
        const bool row_ok = ok[k + 1][static_cast<std::size_t>(row)];
        const auto& cols = w.d[k].rows[static_cast<std::size_t>(row)];
        for (int col : cols) {
          if (!row_ok && !ok[k][static_cast<std::size_t>(col)]) continue;
          const CobLC* f = w.entry(k, row, col);
          if (Work::unit_sign(*f) == 0) continue;
          const int ri = w.index_of(k + 1, row), ci = w.index_of(k, col);
          w.eliminate(k, row, col);
          out.trace.steps.push_back({ReductionStep::Kind::Eliminate, c.min_degree + static_cast<int>(k), ri, ci});
          changed = true;
          break;  // row is gone
        }
      }
    }
  }
  out.complex = w.finish();
  return out;
}

ChainComplex replay(const ChainComplex& c, const ReductionTrace& t) {
  ChainComplex r = c;
  for (const auto& s : t.steps) {
    if (s.kind == ReductionStep::Kind::Deloop) r = deloop_step(r, s.degree, s.row);
    else r = eliminate_step(r, s.degree, s.row, s.col);
  }
  return r;
}

bool zero_below(const ChainComplex& reduced, int degree) {
  for (std::size_t k = 0; k < reduced.groups.size(); ++k)
    if (reduced.min_degree + static_cast<int>(k) < degree && !reduced.groups[k].empty()) return false;
  return true;
}

bool contractible_in_window(const ChainComplex& c, int l, int w) { return zero_below(reduce(c).complex, l - w); }

}  // namespace cjw
