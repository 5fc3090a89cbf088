#include "cjw/coeff.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cjw {

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

BigInt gcd_big(BigInt a, BigInt b) {
  a = abs_big(a);
  b = abs_big(b);
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Dense integer polynomials, index = exponent, no trailing zeros.
using Dense = std::vector<BigInt>;

void trim(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

BigInt content(const Dense& p) {
  BigInt g = 0;
  for (const auto& c : p) g = gcd_big(g, c);
  return g;
}

Dense primitive(Dense p) {
  BigInt g = content(p);
  if (g > 1)
    for (auto& c : p) c /= g;
  return p;
}

// Pseudo-remainder of a by b (b nonzero).
Dense prem(Dense a, const Dense& b) {
  const std::size_t db = b.size() - 1;
  const BigInt& lb = b.back();
  while (a.size() >= b.size()) {
    BigInt la = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

Dense poly_gcd(Dense a, Dense b) {
  trim(a);
  trim(b);
  if (a.empty()) return primitive(b);
  if (b.empty()) return primitive(a);
  a = primitive(a);
  b = primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    Dense r = primitive(prem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  if (a.back() < 0)
    for (auto& c : a) c = -c;
  return a;
}

// Exact division a / b over Z; b primitive and divides a over Q.
Dense poly_div_exact(Dense a, const Dense& b) {
  trim(a);
  if (a.empty()) return {};
  Dense q(a.size() - b.size() + 1);
  const BigInt& lb = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    const BigInt& top = a[k + b.size() - 1];
    if (top % lb != 0) throw DomainError("inexact polynomial division");
    q[k] = top / lb;
    for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= q[k] * b[i];
  }
  return q;
}

Dense to_dense(const LaurentPoly& p, int base) {
  Dense d;
  if (p.is_zero()) return d;
  d.resize(static_cast<std::size_t>(p.max_exp() - base + 1));
  for (const auto& [e, c] : p.terms()) d[static_cast<std::size_t>(e - base)] = c;
  return d;
}

LaurentPoly from_dense(const Dense& d, int base) {
  LaurentPoly r;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) r += LaurentPoly::monomial(d[i], base + static_cast<int>(i));
  return r;
}

std::string term_str(const BigInt& abs_c, int e, const char* var) {
  std::string v = var;
  if (e == 0) return abs_c.str();
  std::string mono = e == 1 ? v : v + "^" + std::to_string(e);
  if (abs_c == 1) return mono;
  return abs_c.str() + mono;
}

struct Lexer {
  std::string_view s;
  std::size_t i = 0;
  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool at_end() {
    ws();
    return i >= s.size();
  }
  bool peek_digit() {
    ws();
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  }
  BigInt number() {
    ws();
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) throw DomainError("expected number");
    BigInt v(std::string(s.substr(i, j - i)));
    i = j;
    return v;
  }
  int exponent() {
    ws();
    bool neg = false;
    if (eat('-')) neg = true;
    else if (eat('+')) neg = false;
    BigInt v = number();
    int e = static_cast<int>(v);
    return neg ? -e : e;
  }
};

// Grammar: sum of terms "c", "c var^e", "c*var^e", "var", "-var^e".
std::map<int, BigInt> parse_terms(std::string_view s, char var) {
  Lexer lx{s};
  std::map<int, BigInt> out;
  if (lx.at_end()) throw DomainError("empty polynomial");
  bool first = true;
  while (!lx.at_end()) {
    int sign = 1;
    if (lx.eat('-')) sign = -1;
    else if (!lx.eat('+') && !first) throw DomainError("expected + or -");
    first = false;
    BigInt c = 1;
    bool have_num = false;
    if (lx.peek_digit()) {
      c = lx.number();
      have_num = true;
    }
    lx.eat('*');
    int e = 0;
    if (lx.eat(var)) {
      e = 1;
      if (lx.eat('^')) e = lx.exponent();
    } else if (!have_num) {
      throw DomainError("expected term");
    }
    out[e] += sign * c;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Laurent

LaurentPoly::LaurentPoly(long long c) {
  if (c != 0) t_[0] = c;
}

LaurentPoly LaurentPoly::monomial(BigInt c, int e) {
  LaurentPoly p;
  if (c != 0) p.t_[e] = std::move(c);
  return p;
}

int LaurentPoly::min_exp() const {
  if (t_.empty()) throw DomainError("min_exp of zero polynomial");
  return t_.begin()->first;
}

int LaurentPoly::max_exp() const {
  if (t_.empty()) throw DomainError("max_exp of zero polynomial");
  return t_.rbegin()->first;
}

BigInt LaurentPoly::coeff(int e) const {
  auto it = t_.find(e);
  return it == t_.end() ? BigInt(0) : it->second;
}

BigInt LaurentPoly::content() const {
  BigInt g = 0;
  for (const auto& [e, c] : t_) g = gcd_big(g, c);
  return g;
}

void LaurentPoly::add_term(int e, const BigInt& c) {
  if (c == 0) return;
  auto [it, ins] = t_.try_emplace(e, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.t_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) r.add_term(ea + eb, ca * cb);
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r;
  for (const auto& [e, c] : t_) r.t_.emplace_hint(r.t_.end(), e + k, c);
  return r;
}

LaurentPoly LaurentPoly::mirrored() const {
  LaurentPoly r;
  for (const auto& [e, c] : t_) r.t_.emplace(-e, c);
  return r;
}

LaurentPoly LaurentPoly::divided_exact(const BigInt& d) const {
  LaurentPoly r;
  for (const auto& [e, c] : t_) {
    if (c % d != 0) throw DomainError("inexact integer division");
    r.t_.emplace_hint(r.t_.end(), e, c / d);
  }
  return r;
}

BigInt LaurentPoly::eval(const BigInt& x) const {
  BigInt s = 0;
  for (const auto& [e, c] : t_) {
    if (e < 0) {
      if (abs_big(x) != 1) throw DomainError("negative power at non-unit");
      s += c * ((-e) % 2 == 0 || x == 1 ? BigInt(1) : BigInt(-1));
    } else {
      s += c * boost::multiprecision::pow(x, static_cast<unsigned>(e));
    }
  }
  return s;
}

std::string LaurentPoly::str() const {
  if (t_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : t_) {
    if (first) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    out += term_str(abs_big(c), e, "q");
    first = false;
  }
  return out;
}

LaurentPoly LaurentPoly::parse(std::string_view s) {
  LaurentPoly p;
  p.t_ = parse_terms(s, 'q');
  return p;
}

LaurentPoly quantum_integer(int n) {
  if (n <= 0) throw DomainError("quantum integer requires n >= 1");
  LaurentPoly r;
  for (int e = -(n - 1); e <= n - 1; e += 2) r += LaurentPoly::q(e);
  return r;
}

// ---------------------------------------------------------------- Alpha

AlphaPoly::AlphaPoly(long long c) {
  if (c != 0) c_.push_back(c);
}

AlphaPoly AlphaPoly::alpha_pow(int k, BigInt c) {
  AlphaPoly a;
  if (c == 0) return a;
  a.c_.assign(static_cast<std::size_t>(k) + 1, BigInt(0));
  a.c_.back() = std::move(c);
  return a;
}

void AlphaPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool AlphaPoly::is_unit() const { return c_.size() == 1 && abs_big(c_[0]) == 1; }

AlphaPoly AlphaPoly::operator-() const {
  AlphaPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

AlphaPoly& AlphaPoly::operator+=(const AlphaPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

AlphaPoly& AlphaPoly::operator-=(const AlphaPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

AlphaPoly operator*(const AlphaPoly& a, const AlphaPoly& b) {
  AlphaPoly r;
  if (a.c_.empty() || b.c_.empty()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  r.trim();
  return r;
}

BigInt AlphaPoly::eval(const BigInt& alpha) const {
  BigInt s = 0;
  for (std::size_t i = c_.size(); i-- > 0;) s = s * alpha + c_[i];
  return s;
}

std::string AlphaPoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const BigInt& c = c_[i];
    if (c == 0) continue;
    if (first) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    out += term_str(abs_big(c), static_cast<int>(i), "a");
    first = false;
  }
  return out;
}

AlphaPoly AlphaPoly::parse(std::string_view s) {
  AlphaPoly r;
  for (const auto& [e, c] : parse_terms(s, 'a')) {
    if (e < 0) throw DomainError("negative power of alpha");
    r += alpha_pow(e, c);
  }
  return r;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(LaurentPoly n, LaurentPoly d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw DomainError("zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  const int nb = num_.min_exp(), db = den_.min_exp();
  Dense n = to_dense(num_, nb), d = to_dense(den_, db);
  Dense g = poly_gcd(n, d);
  if (g.size() > 1) {
    n = poly_div_exact(n, g);
    d = poly_div_exact(d, g);
  }
  BigInt c = gcd_big(content(n), content(d));
  if (d.back() < 0) c = -c;
  if (c != 1)
    for (auto* v : {&n, &d})
      for (auto& x : *v) x /= c;
  // units q^k are absorbed so the denominator starts at q^0
  num_ = from_dense(n, nb - db);
  den_ = from_dense(d, 0);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw DomainError("inverse of zero");
  return RatFunc(den_, num_);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

std::string RatFunc::str() const {
  if (den_ == LaurentPoly(1)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

namespace {

// Greedily writes p = sign * q^shift * prod [k]; false if a non-unit remains.
bool quantum_factor(LaurentPoly p, std::vector<int>& factors, int& shift, int& sign) {
  if (p.is_zero()) return false;
  for (int k = p.max_exp() - p.min_exp() + 1; k >= 2; --k) {
    for (;;) {
      if (p.max_exp() - p.min_exp() < k - 1) break;
      const int base = p.min_exp();
      Dense num = to_dense(p, base);
      Dense qk = to_dense(quantum_integer(k), -(k - 1));
      Dense g = poly_gcd(num, qk);
      if (g.size() != qk.size()) break;
      Dense quo = poly_div_exact(num, qk);
      p = from_dense(quo, base + (k - 1));
      factors.push_back(k);
    }
  }
  if (p.terms().size() != 1) return false;
  const auto& [e, c] = *p.terms().begin();
  if (abs_big(c) != 1) return false;
  shift = e;
  sign = c < 0 ? -1 : 1;
  return true;
}

std::string product_str(const std::vector<int>& f) {
  if (f.empty()) return "1";
  std::string s;
  std::vector<int> g = f;
  std::sort(g.begin(), g.end());
  for (int k : g) s += "[" + std::to_string(k) + "]";
  return s;
}

}  // namespace

std::string RatFunc::quantum_str() const {
  std::vector<int> fn, fd;
  int sn = 0, sd = 0, gn = 1, gd = 1;
  if (num_.is_zero()) return "0";
  if (quantum_factor(num_, fn, sn, gn) && quantum_factor(den_, fd, sd, gd) && sn == sd) {
    std::string s = gn * gd < 0 ? "-" : "";
    s += product_str(fn);
    if (!fd.empty()) s += "/" + product_str(fd);
    return s;
  }
  return str();
}

RatFunc RatFunc::parse(std::string_view s) {
  auto slash = s.find(")/(");
  if (slash == std::string_view::npos) return RatFunc(LaurentPoly::parse(s));
  auto strip = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  std::string_view n = strip(s.substr(0, slash + 1)), d = strip(s.substr(slash + 2));
  if (n.size() < 2 || n.front() != '(' || d.size() < 2 || d.back() != ')')
    throw DomainError("malformed rational function");
  return RatFunc(LaurentPoly::parse(n.substr(1, n.size() - 2)),
                 LaurentPoly::parse(d.substr(1, d.size() - 2)));
}

// ---------------------------------------------------------------- Series

PowerSeries PowerSeries::make(std::map<int, BigInt> t, int trunc) {
  PowerSeries s;
  s.trunc_ = trunc;
  for (auto it = t.begin(); it != t.end();)
    it = (it->second == 0 || it->first >= trunc) ? t.erase(it) : std::next(it);
  if (t.empty()) return s;
  s.min_exp_ = t.begin()->first;
  s.c_.assign(static_cast<std::size_t>(t.rbegin()->first - s.min_exp_ + 1), BigInt(0));
  for (auto& [e, c] : t) s.c_[static_cast<std::size_t>(e - s.min_exp_)] = std::move(c);
  return s;
}

PowerSeries::PowerSeries(const LaurentPoly& p, int truncation) {
  *this = make(p.terms(), truncation);
}

BigInt PowerSeries::coeff(int e) const {
  if (e >= trunc_) throw DomainError("coefficient beyond truncation order");
  if (c_.empty() || e < min_exp_ || e >= min_exp_ + static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(e - min_exp_)];
}

LaurentPoly PowerSeries::to_laurent() const {
  LaurentPoly p;
  for (std::size_t i = 0; i < c_.size(); ++i)
    p += LaurentPoly::monomial(c_[i], min_exp_ + static_cast<int>(i));
  return p;
}

PowerSeries PowerSeries::truncated(int order) const {
  return PowerSeries(to_laurent(), std::min(order, trunc_));
}

PowerSeries PowerSeries::operator-() const {
  PowerSeries r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  return PowerSeries(a.to_laurent() + b.to_laurent(), std::min(a.trunc_, b.trunc_));
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + (-b); }

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  // unknown tails: a's tail starts at a.trunc, multiplied by b's lowest term
  auto low = [](const PowerSeries& s) -> long long {
    return s.c_.empty() ? static_cast<long long>(s.trunc_) : s.min_exp_;
  };
  long long t = PowerSeries::kExact;
  if (a.trunc_ != PowerSeries::kExact) t = std::min(t, a.trunc_ + low(b));
  if (b.trunc_ != PowerSeries::kExact) t = std::min(t, b.trunc_ + low(a));
  t = std::clamp<long long>(t, INT_MIN, PowerSeries::kExact);
  return PowerSeries(a.to_laurent() * b.to_laurent(), static_cast<int>(t));
}

std::string PowerSeries::str() const {
  std::string s = to_laurent().str();
  if (trunc_ != kExact) {
    if (c_.empty()) s = "";
    else s += " + ";
    s += "O(q^" + std::to_string(trunc_) + ")";
  }
  return s;
}

PowerSeries expand(const RatFunc& r, int order) {
  if (r.is_zero()) return PowerSeries(LaurentPoly(), order);
  const LaurentPoly& d = r.den();
  const int dmin = d.min_exp();
  const BigInt lead = d.coeff(dmin);
  // q^dmin * u(q) with u(0) = lead; 1/u expanded by recursion on coefficients
  const int nmin = r.num().min_exp();
  const int base = nmin - dmin;
  std::map<int, BigInt> out;
  std::map<int, BigInt> rem(r.num().terms().begin(), r.num().terms().end());
  for (int e = base; e < order; ++e) {
    auto it = rem.find(e + dmin);
    BigInt c = it == rem.end() ? BigInt(0) : it->second;
    if (c == 0) continue;
    if (c % lead != 0) throw DomainError("series expansion not integral");
    BigInt k = c / lead;
    out[e] = k;
    for (const auto& [de, dc] : d.terms()) {
      auto& slot = rem[e + de];
      slot -= k * dc;
    }
  }
  LaurentPoly p;
  for (auto& [e, c] : out) p += LaurentPoly::monomial(c, e);
  return PowerSeries(p, order);
}

}  // namespace cjw
