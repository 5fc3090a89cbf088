#include "cjw/tl.hpp"

#include "json.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace cjw {

struct MatchingBuilder {
  static Matching make(int n, const std::vector<int>& partner) {
    if (n < 0 || n > Matching::kMaxStrands) throw DomainError("strand count out of range");
    Matching m;
    m.n_ = n;
    for (int i = 0; i < 2 * n; ++i) m.p_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(partner[static_cast<std::size_t>(i)]);
    return m;
  }
};

namespace {

// cyclic position: b_1..b_n then t_n..t_1
int cyc(int n, int p) { return p < n ? p : 3 * n - 1 - p; }

}  // namespace

bool is_planar(int n, const std::vector<int>& partner) {
  if (static_cast<int>(partner.size()) != 2 * n) return false;
  for (int p = 0; p < 2 * n; ++p) {
    int r = partner[static_cast<std::size_t>(p)];
    if (r < 0 || r >= 2 * n || r == p || partner[static_cast<std::size_t>(r)] != p) return false;
  }
  std::vector<int> at(static_cast<std::size_t>(2 * n));
  for (int p = 0; p < 2 * n; ++p) at[static_cast<std::size_t>(cyc(n, p))] = p;
  std::vector<int> stack;
  for (int k = 0; k < 2 * n; ++k) {
    int r = cyc(n, partner[static_cast<std::size_t>(at[static_cast<std::size_t>(k)])]);
    if (r > k) stack.push_back(k);
    else {
      if (stack.empty() || stack.back() != r) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

Matching Matching::identity(int n) {
  std::vector<int> p(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    p[static_cast<std::size_t>(i)] = n + i;
    p[static_cast<std::size_t>(n + i)] = i;
  }
  return MatchingBuilder::make(n, p);
}

Matching Matching::generator(int n, int i) {
  if (i < 1 || i > n - 1) throw DomainError("generator index out of range");
  Matching m = identity(n);
  std::vector<int> p(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < 2 * n; ++k) p[static_cast<std::size_t>(k)] = m.partner(k);
  int b = i - 1, t = n + i - 1;
  p[static_cast<std::size_t>(b)] = b + 1;
  p[static_cast<std::size_t>(b + 1)] = b;
  p[static_cast<std::size_t>(t)] = t + 1;
  p[static_cast<std::size_t>(t + 1)] = t;
  return MatchingBuilder::make(n, p);
}

Matching Matching::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  if (n < 0 || n > kMaxStrands) throw DomainError("strand count out of range");
  std::vector<int> p(static_cast<std::size_t>(2 * n), -1);
  for (auto [a, b] : pairs) {
    if (a < 1 || b < 1 || a > 2 * n || b > 2 * n || a == b) throw DomainError("bad point label");
    if (p[static_cast<std::size_t>(a - 1)] != -1 || p[static_cast<std::size_t>(b - 1)] != -1)
      throw DomainError("point used twice");
    p[static_cast<std::size_t>(a - 1)] = b - 1;
    p[static_cast<std::size_t>(b - 1)] = a - 1;
  }
  if (!is_planar(n, p)) throw DomainError("matching is not a planar perfect matching");
  return MatchingBuilder::make(n, p);
}

bool Matching::is_identity() const { return *this == identity(n_); }

std::vector<std::pair<int, int>> Matching::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < 2 * n_; ++p)
    if (partner(p) > p) out.emplace_back(p + 1, partner(p) + 1);
  return out;
}

int Matching::closure_loops() const {
  std::vector<char> seen(static_cast<std::size_t>(2 * n_), 0);
  int loops = 0;
  for (int s = 0; s < 2 * n_; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    ++loops;
    int p = s;
    while (!seen[static_cast<std::size_t>(p)]) {
      seen[static_cast<std::size_t>(p)] = 1;
      int r = partner(p);
      seen[static_cast<std::size_t>(r)] = 1;
      p = r < n_ ? r + n_ : r - n_;  // closure arc
    }
  }
  return loops;
}

Matching Matching::flipped() const {
  std::vector<int> p(static_cast<std::size_t>(2 * n_));
  auto sw = [&](int x) { return x < n_ ? x + n_ : x - n_; };
  for (int k = 0; k < 2 * n_; ++k) p[static_cast<std::size_t>(sw(k))] = sw(partner(k));
  return MatchingBuilder::make(n_, p);
}

Matching Matching::with_strands(int k) const {
  const int m = n_ + k;
  std::vector<int> p(static_cast<std::size_t>(2 * m));
  auto relabel = [&](int x) { return x < n_ ? x : x + k; };
  for (int x = 0; x < 2 * n_; ++x) p[static_cast<std::size_t>(relabel(x))] = relabel(partner(x));
  for (int j = 0; j < k; ++j) {
    p[static_cast<std::size_t>(n_ + j)] = m + n_ + j;
    p[static_cast<std::size_t>(m + n_ + j)] = n_ + j;
  }
  return MatchingBuilder::make(m, p);
}

Matching Matching::with_strands_left(int k) const {
  const int m = n_ + k;
  std::vector<int> p(static_cast<std::size_t>(2 * m));
  auto relabel = [&](int x) { return x < n_ ? x + k : x + 2 * k; };
  for (int x = 0; x < 2 * n_; ++x) p[static_cast<std::size_t>(relabel(x))] = relabel(partner(x));
  for (int j = 0; j < k; ++j) {
    p[static_cast<std::size_t>(j)] = m + j;
    p[static_cast<std::size_t>(m + j)] = j;
  }
  return MatchingBuilder::make(m, p);
}

std::string Matching::json() const {
  nlohmann::json j = nlohmann::json::array();
  for (auto [a, b] : pairs()) j.push_back({a, b});
  return j.dump();
}

Matching Matching::parse_json(const std::string& s) {
  auto j = nlohmann::json::parse(s);
  std::vector<std::pair<int, int>> pr;
  for (const auto& e : j) pr.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return from_pairs(static_cast<int>(pr.size()), pr);
}

std::size_t Matching::hash() const {
  std::size_t h = 1469598103934665603ULL ^ static_cast<std::size_t>(n_);
  for (int i = 0; i < 2 * n_; ++i) h = (h ^ p_[static_cast<std::size_t>(i)]) * 1099511628211ULL;
  return h;
}

std::pair<Matching, int> compose(const Matching& a, const Matching& b) {
  const int n = a.n();
  if (b.n() != n) throw DomainError("compose: strand count mismatch");
  // nodes: a points 0..2n-1, b points 2n..4n-1; a.top j glued to b.bottom j
  std::vector<int> res(static_cast<std::size_t>(2 * n), -1);
  std::vector<char> used_mid(static_cast<std::size_t>(n), 0);
  auto walk = [&](int start_layer, int start_pt) {
    int layer = start_layer, pt = start_pt;
    for (;;) {
      const Matching& m = layer == 0 ? a : b;
      int r = m.partner(pt);
      if (layer == 0 && r < n) return r;        // result bottom
      if (layer == 1 && r >= n) return r;       // result top (b-top index)
      if (layer == 0) {                          // a top r -> b bottom r-n
        used_mid[static_cast<std::size_t>(r - n)] = 1;
        layer = 1;
        pt = r - n;
      } else {                                   // b bottom r -> a top n+r
        used_mid[static_cast<std::size_t>(r)] = 1;
        layer = 0;
        pt = n + r;
      }
    }
  };
  for (int p = 0; p < 2 * n; ++p) {
    if (res[static_cast<std::size_t>(p)] != -1) continue;
    int q = p < n ? walk(0, p) : walk(1, p);
    res[static_cast<std::size_t>(p)] = q;
    res[static_cast<std::size_t>(q)] = p;
  }
  int loops = 0;
  for (int j = 0; j < n; ++j) {
    if (used_mid[static_cast<std::size_t>(j)]) continue;
    ++loops;
    int mid = j;
    do {
      used_mid[static_cast<std::size_t>(mid)] = 1;
      int via_a = a.partner(n + mid) - n;  // closed cycles never reach the boundary
      used_mid[static_cast<std::size_t>(via_a)] = 1;
      mid = b.partner(via_a);
    } while (mid != j);
  }
  return {MatchingBuilder::make(n, res), loops};
}

std::vector<Matching> all_matchings(int n) {
  std::vector<Matching> out;
  std::vector<int> at(static_cast<std::size_t>(2 * n));
  for (int p = 0; p < 2 * n; ++p) at[static_cast<std::size_t>(cyc(n, p))] = p;
  std::vector<int> pc(static_cast<std::size_t>(2 * n), -1);  // cyclic partner
  std::function<void(int, std::vector<int>&)> rec = [&](int k, std::vector<int>& st) {
    if (k == 2 * n) {
      if (!st.empty()) return;
      std::vector<int> p(static_cast<std::size_t>(2 * n));
      for (int c = 0; c < 2 * n; ++c)
        p[static_cast<std::size_t>(at[static_cast<std::size_t>(c)])] = at[static_cast<std::size_t>(pc[static_cast<std::size_t>(c)])];
      out.push_back(MatchingBuilder::make(n, p));
      return;
    }
    if (static_cast<int>(st.size()) < 2 * n - k) {
      st.push_back(k);
      rec(k + 1, st);
      st.pop_back();
    }
    if (!st.empty()) {
      int o = st.back();
      st.pop_back();
      pc[static_cast<std::size_t>(o)] = k;
      pc[static_cast<std::size_t>(k)] = o;
      rec(k + 1, st);
      st.push_back(o);
    }
  };
  std::vector<int> st;
  rec(0, st);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Shortest generator word for every matching of TL_n, by BFS.
const std::unordered_map<Matching, std::vector<int>>& words(int n) {
  static std::mutex mu;
  static std::map<int, std::unordered_map<Matching, std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::unordered_map<Matching, std::vector<int>> w;
  std::deque<Matching> queue;
  Matching id = Matching::identity(n);
  w[id] = {};
  queue.push_back(id);
  while (!queue.empty()) {
    Matching m = queue.front();
    queue.pop_front();
    for (int i = 1; i < n; ++i) {
      auto [r, loops] = compose(m, Matching::generator(n, i));
      if (w.count(r)) continue;
      auto wr = w[m];
      wr.push_back(i);
      w[r] = wr;
      queue.push_back(r);
    }
  }
  return cache.emplace(n, std::move(w)).first->second;
}

}  // namespace

std::string Matching::word() const {
  const auto& w = words(n_).at(*this);
  if (w.empty()) return "1";
  std::string s;
  for (int i : w) s += "e" + std::to_string(i);
  return s;
}

const TLElement<RatFunc>& jones_wenzl(int n) {
  if (n < 1) throw DomainError("jones_wenzl requires n >= 1");
  static std::mutex mu;
  static std::map<int, TLElement<RatFunc>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  TLElement<RatFunc> p;
  if (n == 1) {
    p = TLElement<RatFunc>::identity(1);
  } else {
    TLElement<RatFunc> prev = jones_wenzl(n - 1).with_strands(1);
    TLElement<RatFunc> e(Matching::generator(n, n - 1), RatFunc(1));
    RatFunc c(quantum_integer(n - 1), quantum_integer(n));
    p = prev - c * (prev * e * prev);
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

namespace {

template <class R, class F>
std::string render_impl(const TLElement<R>& x, F coeff_str) {
  if (x.is_zero()) return "0";
  // identity first, then by word length and lexicographic word
  std::vector<std::pair<Matching, R>> terms(x.terms().begin(), x.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    std::string wa = a.first.word(), wb = b.first.word();
    if (wa == "1" || wb == "1") return wa == "1" && wb != "1";
    if (wa.size() != wb.size()) return wa.size() < wb.size();
    return wa < wb;
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    auto [neg, body] = coeff_str(c);
    std::string w = m.word();
    std::string term;
    if (body == "1") term = w;
    else if (w == "1") term = body;
    else term = "(" + body + ") " + w;
    if (first) out += neg ? "-" + term : term;
    else out += (neg ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

}  // namespace

std::string render(const TLElement<RatFunc>& x) {
  return render_impl(x, [](const RatFunc& c) {
    std::string s = c.quantum_str();
    bool neg = !s.empty() && s[0] == '-';
    if (neg && s.find(' ') == std::string::npos) s = s.substr(1);
    else neg = false;
    return std::pair<bool, std::string>{neg, s};
  });
}

std::string render(const TLElement<PowerSeries>& x) {
  return render_impl(x, [](const PowerSeries& c) {
    return std::pair<bool, std::string>{false, c.str()};
  });
}

std::string to_json(const TLElement<RatFunc>& x) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [m, c] : x.terms()) j[m.json()] = c.str();
  return j.dump();
}

}  // namespace cjw
