#include "cjw/complex.hpp"

#include "json.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cjw {

namespace {

int sat_add(int a, int b) {
  if (a == INT_MAX || b == INT_MAX) return INT_MAX;
  long long s = static_cast<long long>(a) + b;
  return s >= INT_MAX ? INT_MAX : static_cast<int>(s);
}

const std::vector<DiagObject>& no_objects() {
  static const std::vector<DiagObject> v;
  return v;
}

// Lowest q-exponent in the Euler contribution of any object of c, including
// the omitted tail (bounded by euler_order).
// Lowest q-power in the Euler contribution of the objects.
int lowest_exponent(const std::vector<DiagObject>& g) {
  int lo = PowerSeries::kExact;
  for (const auto& o : g) lo = std::min(lo, o.q - o.circles);
  return lo;
}

int lowest_exponent(const ChainComplex& c) {
  int lo = c.euler_order;
  for (const auto& g : c.groups) lo = std::min(lo, lowest_exponent(g));
  return lo;
}

}  // namespace

std::map<int, std::vector<std::pair<int, const CobLC*>>> column_index(const Matrix& m) {
  std::map<int, std::vector<std::pair<int, const CobLC*>>> r;
  for (const auto& [rc, f] : m.entries) r[rc.second].emplace_back(rc.first, &f);
  return r;
}

// ---- Matrix ----

const CobLC* Matrix::at(int r, int c) const {
  auto it = entries.find({r, c});
  return it == entries.end() ? nullptr : &it->second;
}

void Matrix::set(int r, int c, CobLC f) {
  if (f.is_zero()) entries.erase({r, c});
  else entries.insert_or_assign({r, c}, std::move(f));
}

void Matrix::add(int r, int c, const CobLC& f) {
  if (f.is_zero()) return;
  auto it = entries.find({r, c});
  if (it == entries.end()) {
    entries.emplace(std::make_pair(r, c), f);
    return;
  }
  it->second += f;
  if (it->second.is_zero()) entries.erase(it);
}

// ---- ChainComplex ----

bool ChainComplex::empty() const {
  for (const auto& g : groups)
    if (!g.empty()) return false;
  return true;
}

std::size_t ChainComplex::total_objects() const {
  std::size_t s = 0;
  for (const auto& g : groups) s += g.size();
  return s;
}

const std::vector<DiagObject>& ChainComplex::group(int deg) const {
  const long long k = static_cast<long long>(deg) - min_degree;
  if (k < 0 || k >= static_cast<long long>(groups.size())) return no_objects();
  return groups[static_cast<std::size_t>(k)];
}

const Matrix& ChainComplex::diff(int deg) const {
  static const Matrix empty_matrix;
  const long long k = static_cast<long long>(deg) - min_degree;
  if (k < 0 || k >= static_cast<long long>(diffs.size())) return empty_matrix;
  return diffs[static_cast<std::size_t>(k)];
}

Matrix& ChainComplex::diff_mut(int deg) { return diffs.at(static_cast<std::size_t>(deg - min_degree)); }

void ChainComplex::push_group(std::vector<DiagObject> objs, Matrix d) {
  if (!groups.empty()) {
    d.rows = static_cast<int>(objs.size());
    d.cols = static_cast<int>(groups.back().size());
    diffs.push_back(std::move(d));
  }
  groups.push_back(std::move(objs));
}

void ChainComplex::trim() {
  while (!groups.empty() && groups.back().empty()) {
    groups.pop_back();
    if (!diffs.empty()) diffs.pop_back();
  }
  while (!groups.empty() && groups.front().empty()) {
    groups.erase(groups.begin());
    if (!diffs.empty()) diffs.erase(diffs.begin());
    ++min_degree;
  }
  if (groups.empty()) diffs.clear();
}

std::string ChainComplex::json() const {
  nlohmann::json j;
  j["n"] = n;
  j["min_degree"] = min_degree;
  nlohmann::json gs = nlohmann::json::array();
  for (const auto& g : groups) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& o : g) row.push_back(nlohmann::json::parse(o.json()));
    gs.push_back(row);
  }
  j["groups"] = gs;
  nlohmann::json ds = nlohmann::json::array();
  for (const auto& m : diffs) {
    nlohmann::json mat = nlohmann::json::array();
    for (int r = 0; r < m.rows; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < m.cols; ++c) {
        const CobLC* e = m.at(r, c);
        row.push_back(e ? nlohmann::json::parse(e->json()) : nlohmann::json());
      }
      mat.push_back(row);
    }
    ds.push_back(mat);
  }
  j["diffs"] = ds;
  j["truncation"] = trunc == kUnbounded ? nlohmann::json() : nlohmann::json(trunc);
  j["euler_order"] = euler_order == PowerSeries::kExact ? nlohmann::json() : nlohmann::json(euler_order);
  return j.dump();
}

ChainComplex ChainComplex::parse_json(const std::string& s) {
  auto j = nlohmann::json::parse(s);
  ChainComplex c;
  c.n = j.at("n").get<int>();
  c.min_degree = j.at("min_degree").get<int>();
  for (const auto& g : j.at("groups")) {
    std::vector<DiagObject> objs;
    for (const auto& o : g) {
      objs.push_back(DiagObject::parse_json(o.dump()));
      if (objs.back().n() != c.n) throw DomainError("object strand count differs from complex");
    }
    c.groups.push_back(std::move(objs));
  }
  const auto& ds = j.at("diffs");
  if (c.groups.size() > 0 && ds.size() != c.groups.size() - 1) throw DomainError("diffs/groups size mismatch");
  for (std::size_t k = 0; k < ds.size(); ++k) {
    Matrix m(static_cast<int>(c.groups[k + 1].size()), static_cast<int>(c.groups[k].size()));
    if (ds[k].size() != static_cast<std::size_t>(m.rows)) throw DomainError("matrix row count mismatch");
    for (int r = 0; r < m.rows; ++r) {
      const auto& row = ds[k][static_cast<std::size_t>(r)];
      if (row.size() != static_cast<std::size_t>(m.cols)) throw DomainError("matrix column count mismatch");
      for (int col = 0; col < m.cols; ++col) {
        const auto& e = row[static_cast<std::size_t>(col)];
        if (e.is_null()) continue;
        CobLC f = CobLC::parse_json(e.dump());
        if (!(f.src() == c.groups[k][static_cast<std::size_t>(col)]) || !(f.tgt() == c.groups[k + 1][static_cast<std::size_t>(r)]))
          throw DomainError("entry boundary does not match chain groups");
        m.set(r, col, std::move(f));
      }
    }
    c.diffs.push_back(std::move(m));
  }
  c.trunc = j.at("truncation").is_null() ? kUnbounded : j.at("truncation").get<int>();
  c.euler_order = !j.contains("euler_order") || j.at("euler_order").is_null() ? PowerSeries::kExact
                                                                              : j.at("euler_order").get<int>();
  return c;
}

std::string ChainComplex::summary() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    os << "C" << min_degree + static_cast<int>(k) << ":";
    for (const auto& o : groups[k]) os << "  " << o.str();
    os << '\n';
  }
  return os.str();
}

ChainComplex single_object(const DiagObject& a, int degree) {
  ChainComplex c;
  c.n = a.n();
  c.min_degree = degree;
  c.groups.push_back({a});
  return c;
}

// ---- validation ----

ValidationReport validate(const ChainComplex& c, bool check_monotone) {
  auto fail = [](std::string m) { return ValidationReport{false, std::move(m)}; };
  if (!c.groups.empty() && c.diffs.size() + 1 != c.groups.size()) return fail("diffs/groups size mismatch");
  if (c.trunc != ChainComplex::kUnbounded && !c.groups.empty() && c.max_degree() >= c.trunc)
    return fail("groups stored at or beyond the truncation degree");
  for (std::size_t k = 0; k < c.groups.size(); ++k)
    for (const auto& o : c.groups[k])
      if (o.n() != c.n) return fail("object with wrong strand count in degree " + std::to_string(c.min_degree + static_cast<int>(k)));
  for (std::size_t k = 0; k < c.diffs.size(); ++k) {
    const Matrix& m = c.diffs[k];
    const int deg = c.min_degree + static_cast<int>(k);
    if (m.rows != static_cast<int>(c.groups[k + 1].size()) || m.cols != static_cast<int>(c.groups[k].size()))
      return fail("matrix shape mismatch at degree " + std::to_string(deg));
    for (const auto& [rc, f] : m.entries) {
      if (!(f.src() == c.groups[k][static_cast<std::size_t>(rc.second)]) || !(f.tgt() == c.groups[k + 1][static_cast<std::size_t>(rc.first)]))
        return fail("entry boundary mismatch at degree " + std::to_string(deg));
      if (!f.homogeneous_of_degree(0))
        return fail("entry of nonzero degree at degree " + std::to_string(deg) + " (" + std::to_string(rc.first) + "," +
                    std::to_string(rc.second) + ")");
    }
  }
  for (std::size_t k = 0; k + 1 < c.diffs.size(); ++k) {
    const Matrix &d0 = c.diffs[k], &d1 = c.diffs[k + 1];
    const int deg = c.min_degree + static_cast<int>(k);
    // (d1 d0)(r, col) = sum_m d1(r, m) . d0(m, col)
    std::map<std::pair<int, int>, CobLC> prod;
    const auto by_col = column_index(d1);
    for (const auto& [rc0, f] : d0.entries) {
      auto it = by_col.find(rc0.first);
      if (it == by_col.end()) continue;
      for (const auto& [row, g1] : it->second) {
        CobLC g = compose(f, *g1);
        auto [pos, ins] = prod.try_emplace(std::make_pair(row, rc0.second), g);
        if (!ins) pos->second += g;
      }
    }
    for (const auto& [rc, f] : prod)
      if (!f.is_zero())
        return fail("d^2 != 0 from degree " + std::to_string(deg) + " at (" + std::to_string(rc.first) + "," +
                    std::to_string(rc.second) + ")");
  }
  if (check_monotone) {
    bool have = false;
    int last_max = 0, last_min = 0;
    for (std::size_t k = 0; k < c.groups.size(); ++k) {
      if (c.groups[k].empty()) continue;
      int mx = INT_MIN, mn = INT_MAX;
      for (const auto& o : c.groups[k]) {
        mx = std::max(mx, o.q + o.circles);
        mn = std::min(mn, o.q - o.circles);
      }
      if (have && (mx < last_max || mn < last_min))
        return fail("q-degrees not monotone at degree " + std::to_string(c.min_degree + static_cast<int>(k)));
      have = true;
      last_max = mx;
      last_min = mn;
    }
  }
  return {};
}

// ---- constructions ----

ChainComplex stack(const ChainComplex& c, const ChainComplex& d) {
  if (c.n != d.n) throw DomainError("stack: strand count mismatch");
  ChainComplex r;
  r.n = c.n;
  if (c.groups.empty() || d.groups.empty()) return r;
  r.min_degree = c.min_degree + d.min_degree;
  r.trunc = std::min(sat_add(c.trunc, d.min_degree), sat_add(d.trunc, c.min_degree));
  r.euler_order = std::min(sat_add(c.euler_order, lowest_exponent(d)), sat_add(d.euler_order, lowest_exponent(c)));
  int top = c.max_degree() + d.max_degree();
  if (r.trunc != ChainComplex::kUnbounded) top = std::min(top, r.trunc - 1);
  // stored pairs landing above the cut are lost from the Euler series too
  for (int i = c.min_degree; i <= c.max_degree(); ++i)
    for (int j = d.min_degree; j <= d.max_degree(); ++j)
      if (i + j > top && !c.group(i).empty() && !d.group(j).empty())
        r.euler_order = std::min(r.euler_order, lowest_exponent(c.group(i)) + lowest_exponent(d.group(j)));
  // each closed loop from stacking uses at least two middle points
  if (r.euler_order != PowerSeries::kExact) r.euler_order -= c.n / 2;
  std::vector<std::map<int, std::vector<std::pair<int, const CobLC*>>>> ccol, dcol;
  for (int i = c.min_degree; i <= c.max_degree(); ++i) ccol.push_back(column_index(c.diff(i)));
  for (int j = d.min_degree; j <= d.max_degree(); ++j) dcol.push_back(column_index(d.diff(j)));
  // index[(i, a, j, b)] within total degree i + j, ordered by i, a, b
  struct Slot {
    int i, a, j, b;
  };
  std::vector<std::vector<Slot>> slots(static_cast<std::size_t>(std::max(0, top - r.min_degree + 1)));
  std::map<std::tuple<int, int, int, int>, int> index;
  for (int i = c.min_degree; i <= c.max_degree(); ++i)
    for (int a = 0; a < static_cast<int>(c.group(i).size()); ++a)
      for (int j = d.min_degree; j <= d.max_degree(); ++j) {
        if (i + j > top) break;
        for (int b = 0; b < static_cast<int>(d.group(j).size()); ++b) {
          auto& s = slots[static_cast<std::size_t>(i + j - r.min_degree)];
          index[{i, a, j, b}] = static_cast<int>(s.size());
          s.push_back({i, a, j, b});
        }
      }
  for (std::size_t k = 0; k < slots.size(); ++k) {
    std::vector<DiagObject> objs;
    for (const auto& s : slots[k]) objs.push_back(stack(c.group(s.i)[static_cast<std::size_t>(s.a)], d.group(s.j)[static_cast<std::size_t>(s.b)]));
    Matrix m;
    if (k > 0) {
      for (int col = 0; col < static_cast<int>(slots[k - 1].size()); ++col) {
        const Slot& s = slots[k - 1][static_cast<std::size_t>(col)];
        const DiagObject& x = c.group(s.i)[static_cast<std::size_t>(s.a)];
        const DiagObject& y = d.group(s.j)[static_cast<std::size_t>(s.b)];
        if (auto cc = ccol[s.i - c.min_degree].find(s.a); cc != ccol[s.i - c.min_degree].end())
          for (const auto& [row, f] : cc->second) {
            auto it = index.find({s.i + 1, row, s.j, s.b});
            if (it == index.end()) continue;
            m.add(it->second, col, stack(*f, identity(y)));
          }
        const bool odd = ((s.i % 2) + 2) % 2 == 1;
        if (auto dc = dcol[s.j - d.min_degree].find(s.b); dc != dcol[s.j - d.min_degree].end())
          for (const auto& [row, g] : dc->second) {
            auto it = index.find({s.i, s.a, s.j + 1, row});
            if (it == index.end()) continue;
            CobLC e = stack(identity(x), *g);
            m.add(it->second, col, odd ? -e : e);
          }
      }
    }
    r.push_group(std::move(objs), std::move(m));
  }
  return r;
}

ChainComplex cut_above(const ChainComplex& c, int t) {
  ChainComplex r = c;
  r.trunc = std::min(c.trunc, t);
  const long long keep = std::max(0LL, static_cast<long long>(r.trunc) - c.min_degree);
  if (keep < static_cast<long long>(r.groups.size())) {
    for (std::size_t k = static_cast<std::size_t>(keep); k < r.groups.size(); ++k)
      r.euler_order = std::min(r.euler_order, lowest_exponent(r.groups[k]));
    r.groups.resize(static_cast<std::size_t>(keep));
    r.diffs.resize(r.groups.empty() ? 0 : r.groups.size() - 1);
  }
  return r;
}

ChainComplex disjoint_union(const ChainComplex& c, int k) {
  if (k < 0) throw DomainError("disjoint_union: negative strand count");
  ChainComplex r = c;
  r.n = c.n + k;
  for (auto& g : r.groups)
    for (auto& o : g) o = with_strands(o, k);
  for (auto& m : r.diffs)
    for (auto& [rc, f] : m.entries) f = with_strands(f, k);
  return r;
}

ChainComplex pad(const ChainComplex& c, int left, int right) {
  if (left < 0) throw DomainError("pad: negative strand count");
  ChainComplex r = disjoint_union(c, right);
  r.n += left;
  for (auto& g : r.groups)
    for (auto& o : g) o = with_strands_left(o, left);
  for (auto& m : r.diffs)
    for (auto& [rc, f] : m.entries) f = with_strands_left(f, left);
  return r;
}

ChainComplex trace(const ChainComplex& c) {
  ChainComplex r = c;
  r.n = 0;
  for (auto& g : r.groups)
    for (auto& o : g) o = traced(o);
  for (auto& m : r.diffs)
    for (auto& [rc, f] : m.entries) f = traced(f);
  if (r.euler_order != PowerSeries::kExact) r.euler_order -= c.n;
  return r;
}

ChainComplex flip(const ChainComplex& c) {
  ChainComplex r = c;
  for (auto& g : r.groups)
    for (auto& o : g) o = flipped(o);
  for (auto& m : r.diffs)
    for (auto& [rc, f] : m.entries) f = flipped(f);
  return r;
}

ChainComplex shift_degree(const ChainComplex& c, int s) {
  ChainComplex r = c;
  r.min_degree += s;
  r.trunc = sat_add(r.trunc, s);
  return r;
}

ChainComplex shift_q(const ChainComplex& c, int k) {
  ChainComplex r = c;
  for (auto& g : r.groups)
    for (auto& o : g) o.q += k;
  for (auto& m : r.diffs)
    for (auto& [rc, f] : m.entries) f = f.with_q(f.src().q + k, f.tgt().q + k);
  r.euler_order = sat_add(r.euler_order, k);
  return r;
}

bool is_chain_map(const ChainMap& f) {
  const ChainComplex &C = f.src, &D = f.tgt;
  auto map_at = [&](int deg) -> const Matrix* {
    auto it = f.maps.find(deg);
    return it == f.maps.end() ? nullptr : &it->second;
  };
  const int lo = std::min(C.min_degree, D.min_degree);
  const int hi = std::max(C.max_degree(), D.max_degree());
  for (int k = lo; k < hi; ++k) {
    if (k + 1 >= C.trunc || k + 1 >= D.trunc) break;
    // f_{k+1} dC_k == dD_k f_k on C_k -> D_{k+1}
    std::map<std::pair<int, int>, CobLC> lhs, rhs;
    auto acc = [](std::map<std::pair<int, int>, CobLC>& m, std::pair<int, int> key, const CobLC& g) {
      auto [it, ins] = m.try_emplace(key, g);
      if (!ins) it->second += g;
    };
    auto product = [&](const Matrix& first, const Matrix& second, std::map<std::pair<int, int>, CobLC>& out) {
      const auto by_col = column_index(second);
      for (const auto& [rc0, a] : first.entries) {
        auto it = by_col.find(rc0.first);
        if (it == by_col.end()) continue;
        for (const auto& [row, b] : it->second) acc(out, {row, rc0.second}, compose(a, *b));
      }
    };
    if (const Matrix* f1 = map_at(k + 1)) product(C.diff(k), *f1, lhs);
    if (const Matrix* f0 = map_at(k)) product(*f0, D.diff(k), rhs);
    std::set<std::pair<int, int>> keys;
    for (const auto& [key, g] : lhs) keys.insert(key);
    for (const auto& [key, g] : rhs) keys.insert(key);
    for (const auto& key : keys) {
      auto li = lhs.find(key), ri = rhs.find(key);
      bool lz = li == lhs.end() || li->second.is_zero(), rz = ri == rhs.end() || ri->second.is_zero();
      if (lz && rz) continue;
      if (lz != rz || !(li->second == ri->second)) return false;
    }
  }
  return true;
}

ChainComplex cone(const ChainMap& f) {
  if (f.src.n != f.tgt.n) throw DomainError("cone: strand count mismatch");
  if (!is_chain_map(f)) throw DomainError("cone: input is not a chain map");
  const ChainComplex &C = f.src, &D = f.tgt;
  ChainComplex r;
  r.n = C.n;
  if (C.groups.empty() && D.groups.empty()) return r;
  const int lo = std::min(C.groups.empty() ? INT_MAX : C.min_degree - 1, D.groups.empty() ? INT_MAX : D.min_degree);
  const int hi = std::max(C.groups.empty() ? INT_MIN : C.max_degree() - 1, D.groups.empty() ? INT_MIN : D.max_degree());
  r.min_degree = lo;
  r.trunc = std::min(C.trunc == ChainComplex::kUnbounded ? C.trunc : C.trunc - 1, D.trunc);
  r.euler_order = std::min(C.euler_order, D.euler_order);
  for (int k = lo; k <= hi && k < r.trunc; ++k) {
    const auto& cs = C.group(k + 1);
    const auto& ds = D.group(k);
    std::vector<DiagObject> objs(cs.begin(), cs.end());
    objs.insert(objs.end(), ds.begin(), ds.end());
    Matrix m;
    if (k > lo) {
      const int pc = static_cast<int>(C.group(k).size());
      for (const auto& [rc, g] : C.diff(k).entries) m.add(rc.first, rc.second, -g);
      for (const auto& [rc, g] : D.diff(k - 1).entries) m.add(static_cast<int>(cs.size()) + rc.first, pc + rc.second, g);
      auto it = f.maps.find(k);
      if (it != f.maps.end())
        for (const auto& [rc, g] : it->second.entries) m.add(static_cast<int>(cs.size()) + rc.first, rc.second, g);
    }
    r.push_group(std::move(objs), std::move(m));
  }
  return r;
}

// ---- Euler characteristic ----

TLElement<PowerSeries> euler(const ChainComplex& c, int order) {
  const int cut = std::min(order, c.euler_order);
  std::map<Matching, LaurentPoly> acc;
  for (std::size_t k = 0; k < c.groups.size(); ++k) {
    const bool odd = ((c.min_degree + static_cast<int>(k)) % 2 + 2) % 2 == 1;
    for (const auto& o : c.groups[k]) {
      LaurentPoly t = LaurentPoly::q(o.q);
      for (int i = 0; i < o.circles; ++i) t *= quantum_integer(2);
      acc[o.m] += odd ? -t : t;
    }
  }
  TLElement<PowerSeries> r(c.n);
  for (const auto& [m, p] : acc) {
    PowerSeries s = PowerSeries(p, PowerSeries::kExact);
    if (cut != PowerSeries::kExact) s = s.truncated(cut);
    r.add(m, s);  // truncated zeros are kept so their order stays visible
  }
  return r;
}

PowerSeries euler_closed(const ChainComplex& c, int order) {
  if (c.n != 0) throw DomainError("euler_closed: complex is not closed");
  const int cut = std::min(order, c.euler_order);
  auto e = euler(c, order);
  PowerSeries s = e.coeff(Matching::identity(0));
  if (cut != PowerSeries::kExact) s = s.truncated(cut);
  return s;
}

std::map<int, std::vector<DiagObject>> group_multiset(const ChainComplex& c, int below) {
  std::map<int, std::vector<DiagObject>> r;
  for (std::size_t k = 0; k < c.groups.size(); ++k) {
    const int deg = c.min_degree + static_cast<int>(k);
    if (deg >= below || c.groups[k].empty()) continue;
    auto v = c.groups[k];
    std::sort(v.begin(), v.end());
    r[deg] = std::move(v);
  }
  return r;
}

}  // namespace cjw
