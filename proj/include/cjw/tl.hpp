#pragma once

#include "cjw/coeff.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cjw {

// Non-crossing perfect matching on 2n boundary points. Internally points are
// 0-based: bottom 0..n-1 and top n..2n-1, both left to right. External
// (JSON) labels are 1-based.
class Matching {
 public:
  static constexpr int kMaxStrands = 16;

  Matching() = default;
  static Matching identity(int n);
  static Matching generator(int n, int i);  // e_i, 1 <= i <= n-1
  // pairs in 1-based labels; validates involution and planarity
  static Matching from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

  int n() const { return n_; }
  int partner(int p) const { return p_[static_cast<std::size_t>(p)]; }
  bool is_identity() const;
  std::vector<std::pair<int, int>> pairs() const;  // sorted, 1-based, first < second

  // Number of loops formed by joining bottom i to top i.
  int closure_loops() const;
  Matching flipped() const;           // top <-> bottom
  Matching with_strands(int k) const;  // k vertical strands added on the right
  Matching with_strands_left(int k) const;  // k vertical strands added on the left

  std::string json() const;
  static Matching parse_json(const std::string& s);
  std::string word() const;  // e.g. "e1e2", "1" for the identity

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.n_ == b.n_ && a.p_ == b.p_;
  }
  friend auto operator<=>(const Matching& a, const Matching& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.p_ <=> b.p_;
  }
  std::size_t hash() const;

 private:
  friend struct MatchingBuilder;
  int n_ = 0;
  std::array<std::uint8_t, 2 * kMaxStrands> p_{};
};

bool is_planar(int n, const std::vector<int>& partner);

// b stacked on top of a; returns (result, number of closed loops).
std::pair<Matching, int> compose(const Matching& a, const Matching& b);

std::vector<Matching> all_matchings(int n);

template <class R>
R loop_value();
template <>
inline LaurentPoly loop_value<LaurentPoly>() { return quantum_integer(2); }
template <>
inline RatFunc loop_value<RatFunc>() { return RatFunc(quantum_integer(2)); }
template <>
inline PowerSeries loop_value<PowerSeries>() { return PowerSeries(quantum_integer(2)); }

template <class R>
class TLElement {
 public:
  TLElement() = default;
  explicit TLElement(int n) : n_(n) {}
  TLElement(const Matching& m, R c) : n_(m.n()) { add(m, std::move(c)); }
  static TLElement identity(int n) { return TLElement(Matching::identity(n), R(1)); }

  int n() const { return n_; }
  const std::map<Matching, R>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  R coeff(const Matching& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? R(0) : it->second;
  }

  void add(const Matching& m, const R& c) {
    if (m.n() != n_) throw DomainError("strand count mismatch");
    if (c == R(0)) return;
    auto [it, ins] = t_.try_emplace(m, c);
    if (!ins) {
      it->second += c;
      if (it->second == R(0)) t_.erase(it);
    }
  }

  TLElement& operator+=(const TLElement& o) {
    check(o);
    for (const auto& [m, c] : o.t_) add(m, c);
    return *this;
  }
  TLElement& operator-=(const TLElement& o) {
    check(o);
    for (const auto& [m, c] : o.t_) add(m, -c);
    return *this;
  }
  friend TLElement operator+(TLElement a, const TLElement& b) { return a += b; }
  friend TLElement operator-(TLElement a, const TLElement& b) { return a -= b; }
  friend TLElement operator*(const R& s, const TLElement& x) {
    TLElement r(x.n_);
    for (const auto& [m, c] : x.t_) r.add(m, s * c);
    return r;
  }
  // y stacked on top of x
  friend TLElement operator*(const TLElement& x, const TLElement& y) {
    x.check(y);
    TLElement r(x.n_);
    const R loop = loop_value<R>();
    std::vector<R> pw{R(1)};
    for (const auto& [a, ca] : x.t_)
      for (const auto& [b, cb] : y.t_) {
        auto [m, loops] = compose(a, b);
        while (static_cast<int>(pw.size()) <= loops) pw.push_back(pw.back() * loop);
        r.add(m, ca * cb * pw[static_cast<std::size_t>(loops)]);
      }
    return r;
  }
  friend bool operator==(const TLElement& a, const TLElement& b) {
    return a.n_ == b.n_ && a.t_ == b.t_;
  }

  TLElement with_strands(int k) const {
    TLElement r(n_ + k);
    for (const auto& [m, c] : t_) r.add(m.with_strands(k), c);
    return r;
  }

  template <class S, class F>
  TLElement<S> map_coeffs(F f) const {
    TLElement<S> r(n_);
    for (const auto& [m, c] : t_) r.add(m, f(c));
    return r;
  }

 private:
  void check(const TLElement& o) const {
    if (o.n_ != n_) throw DomainError("strand count mismatch");
  }
  int n_ = 0;
  std::map<Matching, R> t_;
};

template <class R>
R trace(const TLElement<R>& x) {
  R s(0);
  const R loop = loop_value<R>();
  for (const auto& [m, c] : x.terms()) {
    R t = c;
    for (int k = m.closure_loops(); k > 0; --k) t = t * loop;
    s += t;
  }
  return s;
}

const TLElement<RatFunc>& jones_wenzl(int n);

// "1 - (1/[2]) e1" style rendering.
std::string render(const TLElement<RatFunc>& x);
std::string render(const TLElement<PowerSeries>& x);
std::string to_json(const TLElement<RatFunc>& x);

}  // namespace cjw

template <>
struct std::hash<cjw::Matching> {
  std::size_t operator()(const cjw::Matching& m) const noexcept { return m.hash(); }
};
