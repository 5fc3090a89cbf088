#include "cjw/homology.hpp"

#include "cjw/simplify.hpp"

#include "json.hpp"

#include <algorithm>
#include <future>

namespace cjw {

namespace {

IntMatrix zeros(std::size_t r, std::size_t c) { return IntMatrix(r, std::vector<BigInt>(c, 0)); }

IntMatrix eye(std::size_t n) {
  IntMatrix m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::size_t cols_of(const IntMatrix& m, std::size_t fallback = 0) { return m.empty() ? fallback : m[0].size(); }

// Columns j of m as vectors.
std::vector<std::vector<BigInt>> columns(const IntMatrix& m, std::size_t ncols) {
  std::vector<std::vector<BigInt>> out(ncols, std::vector<BigInt>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) out[j][i] = m[i][j];
  return out;
}

IntMatrix from_columns(const std::vector<std::vector<BigInt>>& cols, std::size_t nrows) {
  IntMatrix m = zeros(nrows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < nrows; ++i) m[i][j] = cols[j][i];
  return m;
}

// Basis of the integer kernel of m restricted to the flagged columns, embedded in Z^n.
std::vector<std::vector<BigInt>> kernel(const IntMatrix& m, std::size_t n, const std::vector<char>& use) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < n; ++j)
    if (use[j]) idx.push_back(j);
  IntMatrix sub = zeros(m.size(), idx.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t t = 0; t < idx.size(); ++t) sub[i][t] = m[i][idx[t]];
  std::vector<std::vector<BigInt>> out;
  if (idx.empty()) return out;
  if (m.empty()) {
    for (std::size_t t = 0; t < idx.size(); ++t) {
      std::vector<BigInt> v(n, 0);
      v[idx[t]] = 1;
      out.push_back(std::move(v));
    }
    return out;
  }
  const SmithForm s = smith_normal_form(sub);
  for (std::size_t t = static_cast<std::size_t>(s.rank); t < idx.size(); ++t) {
    std::vector<BigInt> v(n, 0);
    for (std::size_t r = 0; r < idx.size(); ++r) v[idx[r]] = s.v[r][t];
    out.push_back(std::move(v));
  }
  return out;
}

// Invariants of span(big) / span(small), assuming span(small) lies in span(big).
HomologyEntry quotient(const std::vector<std::vector<BigInt>>& big, const std::vector<std::vector<BigInt>>& small, std::size_t n) {
  HomologyEntry e;
  if (big.empty()) return e;
  const SmithForm s1 = smith_normal_form(from_columns(big, n));
  const std::size_t r1 = static_cast<std::size_t>(s1.rank);
  IntMatrix coords = zeros(r1, small.size());
  for (std::size_t j = 0; j < small.size(); ++j)
    for (std::size_t i = 0; i < r1; ++i) {
      BigInt x = 0;
      for (std::size_t k = 0; k < n; ++k) x += s1.u[i][k] * small[j][k];
      if (x % s1.d[i][i] != 0) throw DomainError("homology: sublattice not contained in lattice");
      coords[i][j] = x / s1.d[i][i];
    }
  int r2 = 0;
  if (!small.empty() && r1 > 0) {
    const SmithForm s2 = smith_normal_form(coords);
    r2 = s2.rank;
    for (int i = 0; i < s2.rank; ++i)
      if (s2.d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] > 1) e.torsion.push_back(s2.d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
  }
  e.free_rank = static_cast<int>(r1) - r2;
  return e;
}

std::vector<HomologyEntry> homology_in_degree(const FreeComplex& f, int k) {
  std::vector<HomologyEntry> out;
  if (k < f.min_degree || k > f.max_degree()) return out;
  const std::size_t rel = static_cast<std::size_t>(k - f.min_degree);
  const std::vector<int>& qs = f.qdeg[rel];
  const std::size_t n = qs.size();
  if (n == 0) return out;
  const IntMatrix empty;
  const IntMatrix& out_d = rel < f.diffs.size() ? f.diffs[rel] : empty;
  std::vector<std::vector<BigInt>> bound;
  if (rel > 0) bound = columns(f.diffs[rel - 1], f.qdeg[rel - 1].size());
  std::vector<int> levels(qs.begin(), qs.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  // cycles in filtration level >= p, plus boundaries
  auto lattice = [&](std::size_t li) {
    std::vector<std::vector<BigInt>> gens = bound;
    if (li < levels.size()) {
      std::vector<char> use(n);
      for (std::size_t j = 0; j < n; ++j) use[j] = qs[j] >= levels[li];
      for (auto& v : kernel(out_d, n, use)) gens.push_back(std::move(v));
    }
    return gens;
  };
  std::vector<std::vector<BigInt>> upper = lattice(levels.size());
  for (std::size_t li = levels.size(); li-- > 0;) {
    std::vector<std::vector<BigInt>> lower = lattice(li);
    HomologyEntry e = quotient(lower, upper, n);
    e.degree = k;
    e.q = levels[li];
    if (e.free_rank > 0 || !e.torsion.empty()) out.push_back(std::move(e));
    upper = std::move(lower);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string term(int q, const std::string& group) { return "q^" + std::to_string(q) + " " + group; }

}  // namespace

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t r = a.size(), inner = b.size(), c = cols_of(b);
  IntMatrix m = zeros(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i].size() != inner) throw DomainError("multiply: shape mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) m[i][j] += a[i][k] * b[k][j];
    }
  }
  return m;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.size(), c = cols_of(m);
  SmithForm s{m, eye(r), eye(c), 0};
  IntMatrix& d = s.d;
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    std::swap(d[a], d[b]);
    std::swap(s.u[a], s.u[b]);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (auto& row : d) std::swap(row[a], row[b]);
    for (auto& row : s.v) std::swap(row[a], row[b]);
  };
  // row a += k row b
  auto add_row = [&](std::size_t a, std::size_t b, const BigInt& k) {
    for (std::size_t j = 0; j < c; ++j) d[a][j] += k * d[b][j];
    for (std::size_t j = 0; j < r; ++j) s.u[a][j] += k * s.u[b][j];
  };
  auto add_col = [&](std::size_t a, std::size_t b, const BigInt& k) {
    for (std::size_t i = 0; i < r; ++i) d[i][a] += k * d[i][b];
    for (std::size_t i = 0; i < c; ++i) s.v[i][a] += k * s.v[i][b];
  };
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    // pivot: least nonzero absolute value, which keeps entry growth down
    auto place_min = [&](bool whole) {
      bool found = false;
      BigInt best = 0;
      std::size_t bi = t, bj = t;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j) {
          if (!whole && i != t && j != t) continue;
          if (d[i][j] == 0) continue;
          const BigInt a = abs(d[i][j]);
          if (!found || a < best) {
            found = true;
            best = a;
            bi = i;
            bj = j;
          }
        }
      if (found) {
        swap_rows(t, bi);
        swap_cols(t, bj);
      }
      return found;
    };
    if (!place_min(true)) break;
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i)
        if (d[i][t] != 0) {
          add_row(i, t, -(d[i][t] / d[t][t]));
          if (d[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < c; ++j)
        if (d[t][j] != 0) {
          add_col(j, t, -(d[t][j] / d[t][t]));
          if (d[t][j] != 0) clean = false;
        }
      if (!clean) {
        place_min(false);
        continue;
      }
      // divisibility: fold an offending row into the pivot row
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (d[i][j] % d[t][t] != 0) {
            add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d[t][t] < 0) {
      for (std::size_t j = 0; j < c; ++j) d[t][j] = -d[t][j];
      for (std::size_t j = 0; j < r; ++j) s.u[t][j] = -s.u[t][j];
    }
    ++s.rank;
  }
  return s;
}

FreeComplex to_free_complex(const ChainComplex& c, long long alpha) {
  if (c.n != 0) throw DomainError("homology: complex is not closed");
  const ChainComplex dl = deloop(c).complex;
  FreeComplex f;
  f.min_degree = dl.min_degree;
  f.trunc = dl.trunc;
  for (const auto& g : dl.groups) {
    std::vector<int> qs;
    for (const auto& o : g) qs.push_back(o.q);
    f.qdeg.push_back(std::move(qs));
  }
  const BigInt a = alpha;
  for (std::size_t k = 0; k + 1 < dl.groups.size(); ++k) {
    IntMatrix m = zeros(dl.groups[k + 1].size(), dl.groups[k].size());
    for (const auto& [rc, g] : dl.diffs[k].entries)
      for (const auto& [mask, co] : g.terms()) m[static_cast<std::size_t>(rc.first)][static_cast<std::size_t>(rc.second)] += co.eval(a);
    f.diffs.push_back(std::move(m));
  }
  return f;
}

GradedHomology graded_homology(const FreeComplex& f, int max_degree) {
  if (f.trunc != ChainComplex::kUnbounded && max_degree + 1 >= f.trunc)
    throw DomainError("homology: degree " + std::to_string(max_degree) + " is not certified by the truncation");
  std::vector<std::future<std::vector<HomologyEntry>>> parts;
  for (int k = f.min_degree; k <= max_degree; ++k)
    parts.push_back(std::async(std::launch::async, [&f, k] { return homology_in_degree(f, k); }));
  GradedHomology h;
  for (auto& p : parts)
    for (auto& e : p.get()) h.entries.push_back(std::move(e));
  return h;
}

GradedHomology graded_homology(const ChainComplex& c, long long alpha, int max_degree) {
  return graded_homology(to_free_complex(c, alpha), max_degree);
}

std::vector<HomologyEntry> GradedHomology::in_degree(int degree) const {
  std::vector<HomologyEntry> out;
  for (const auto& e : entries)
    if (e.degree == degree) out.push_back(e);
  return out;
}

std::string GradedHomology::str(int degree) const {
  std::vector<std::string> parts;
  auto es = in_degree(degree);
  std::sort(es.begin(), es.end(), [](const HomologyEntry& a, const HomologyEntry& b) { return a.q > b.q; });
  for (const auto& e : es) {
    if (e.free_rank == 1) parts.push_back(term(e.q, "Z"));
    else if (e.free_rank > 1) parts.push_back(term(e.q, "Z^" + std::to_string(e.free_rank)));
    for (const auto& t : e.torsion) parts.push_back(term(e.q, "Z/" + t.str()));
  }
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

std::string GradedHomology::json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& x : e.torsion) t.push_back(x.str());
    j.push_back({{"degree", e.degree}, {"q", e.q}, {"free", e.free_rank}, {"torsion", t}});
  }
  return j.dump();
}

}  // namespace cjw
