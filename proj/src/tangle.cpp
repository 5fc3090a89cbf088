#include "cjw/tangle.hpp"

#include "cjw/projector.hpp"
#include "cjw/simplify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cjw {

BraidWord::BraidWord(int n, std::vector<int> w) : strands(n), letters(std::move(w)) {
  if (n < 1) throw DomainError("braid: need at least one strand");
  for (int g : letters)
    if (g == 0 || std::abs(g) >= n) throw DomainError("braid: generator index out of range");
}

BraidWord BraidWord::parse(const std::string& s, int strands) {
  std::istringstream in(s);
  std::vector<int> w;
  std::string tok;
  int need = 1;
  while (in >> tok) {
    if (tok.size() < 2 || (tok[0] != 's' && tok[0] != 'S')) throw DomainError("braid: bad token '" + tok + "'");
    int i = 0;
    try {
      std::size_t used = 0;
      i = std::stoi(tok.substr(1), &used);
      if (used != tok.size() - 1) throw DomainError("");
    } catch (const std::exception&) {
      throw DomainError("braid: bad token '" + tok + "'");
    }
    if (i < 1) throw DomainError("braid: bad token '" + tok + "'");
    w.push_back(tok[0] == 's' ? i : -i);
    need = std::max(need, i + 1);
  }
  return BraidWord(strands == 0 ? need : strands, std::move(w));
}

std::string BraidWord::str() const {
  std::string s;
  for (int g : letters) {
    if (!s.empty()) s += ' ';
    s += (g > 0 ? "s" : "S") + std::to_string(std::abs(g));
  }
  return s;
}

std::vector<std::vector<int>> BraidWord::components() const {
  // perm[p]: top position reached from bottom position p
  std::vector<int> at(static_cast<std::size_t>(strands));
  std::iota(at.begin(), at.end(), 0);  // at[strand] = current position
  for (int g : letters) {
    const int i = std::abs(g) - 1;
    for (int& p : at) {
      if (p == i) p = i + 1;
      else if (p == i + 1) p = i;
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(strands), 0);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < strands; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<int> comp;
    for (int p = s; !seen[static_cast<std::size_t>(p)]; p = at[static_cast<std::size_t>(p)]) {
      seen[static_cast<std::size_t>(p)] = 1;
      comp.push_back(p + 1);
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

ChainComplex crossing_complex(int sign, int n, int i) {
  if (sign != 1 && sign != -1) throw DomainError("crossing: sign must be +1 or -1");
  if (i < 1 || i >= n) throw DomainError("crossing: position out of range");
  const DiagObject one(Matching::identity(n), 0, 0), e(Matching::generator(n, i), 0, 0);
  ChainComplex c;
  c.n = n;
  Matrix m;
  if (sign > 0) {
    c.push_group({one.shifted(1)}, {});
    m.set(0, 0, saddle(one.shifted(1), e.shifted(2)));
    c.push_group({e.shifted(2)}, m);
  } else {
    c.min_degree = -1;
    c.push_group({e.shifted(-2)}, {});
    m.set(0, 0, saddle(e.shifted(-2), one.shifted(-1)));
    c.push_group({one.shifted(-1)}, m);
  }
  return c;
}

ChainComplex braid_complex(const BraidWord& w) {
  ChainComplex c = single_object(DiagObject(Matching::identity(w.strands), 0, 0));
  for (int g : w.letters) c = stack(c, crossing_complex(g > 0 ? 1 : -1, w.strands, std::abs(g)));
  return c;
}

PowerSeries jones(const BraidWord& w, int order) {
  return euler_closed(reduce(trace(braid_complex(w))).complex, order);
}

BraidWord cable(const BraidWord& w, int m) {
  if (m < 1) throw DomainError("cable: color must be positive");
  std::vector<int> out;
  for (int g : w.letters) {
    const int i = std::abs(g), sign = g > 0 ? 1 : -1;
    // strand r of the left block (counted from its right end) crosses the right block
    for (int r = 0; r < m; ++r)
      for (int s = 0; s < m; ++s) out.push_back(sign * (i * m - r + s));
  }
  return BraidWord(w.strands * m, std::move(out));
}

namespace {

// One projector per closure component, each stacked above the previous ones.
std::vector<ChainComplex> insertions(const BraidWord& w, int m, int l, const std::vector<int>& at) {
  std::vector<ChainComplex> out;
  const auto comps = w.components();
  if (!at.empty() && at.size() != comps.size()) throw DomainError("cable: one insertion strand per component");
  for (std::size_t c = 0; c < comps.size(); ++c)
    if (!at.empty() && !std::binary_search(comps[c].begin(), comps[c].end(), at[c]))
      throw DomainError("cable: insertion strand not on its component");
  if (m == 1) return out;
  const ChainComplex p = truncated_projector(m, l).complex;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const int s = at.empty() ? comps[c].front() : at[c];
    out.push_back(pad(p, (s - 1) * m, (w.strands - s) * m));
  }
  return out;
}

std::vector<ChainComplex> factors(const BraidWord& w, int m, int l, const std::vector<int>& at) {
  std::vector<ChainComplex> f = insertions(w, m, l, at);
  const BraidWord cw = cable(w, m);
  for (int g : cw.letters) f.push_back(crossing_complex(g > 0 ? 1 : -1, cw.strands, std::abs(g)));
  return f;
}

ChainComplex reduce_and_cut(const ChainComplex& c) {
  ChainComplex r = reduce(c).complex;
  if (c.trunc != ChainComplex::kUnbounded) r = cut_above(r, c.trunc - 1);
  return r;
}

}  // namespace

ChainComplex cabled_complex(const BraidWord& w, int m, int l, const std::vector<int>& at) {
  ChainComplex c = single_object(DiagObject(Matching::identity(w.strands * m), 0, 0));
  for (const auto& f : factors(w, m, l, at)) c = stack(c, f);
  return trace(c);
}

ChainComplex cabled_reduced(const BraidWord& w, int m, int l, const std::vector<int>& at) {
  const BraidWord cw = cable(w, m);
  // degrees lost on the way: one per reduction, one more per negative crossing
  int lost = static_cast<int>(w.components().size()) + static_cast<int>(cw.letters.size());
  for (int g : cw.letters)
    if (g < 0) ++lost;
  ChainComplex c = single_object(DiagObject(Matching::identity(cw.strands), 0, 0));
  for (const auto& f : factors(w, m, l + lost, at)) c = reduce_and_cut(stack(c, f));
  return reduce_and_cut(trace(c));
}

PowerSeries colored_jones(const BraidWord& w, int m, int l, int order) {
  const ChainComplex c = cabled_reduced(w, m, l);
  return euler_closed(c, std::min(order, c.euler_order));
}

bool reidemeister_check(const BraidWord& lhs, const BraidWord& rhs) {
  if (lhs.strands != rhs.strands) return false;
  return group_multiset(reduce(braid_complex(lhs)).complex) == group_multiset(reduce(braid_complex(rhs)).complex);
}

bool reidemeister_check(Move move) {
  if (move == Move::R2) return reidemeister_check(BraidWord(2, {1, -1}), BraidWord(2, {}));
  return reidemeister_check(BraidWord(3, {1, 2, 1}), BraidWord(3, {2, 1, 2}));
}

}  // namespace cjw
