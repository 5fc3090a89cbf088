#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <climits>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cjw {

using BigInt = boost::multiprecision::cpp_int;

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Z[q, q^-1]. Zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long long c);  // NOLINT: constants convert implicitly
  static LaurentPoly monomial(BigInt c, int e);
  static LaurentPoly q(int e = 1) { return monomial(1, e); }

  const std::map<int, BigInt>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int min_exp() const;
  int max_exp() const;
  BigInt coeff(int e) const;
  BigInt content() const;  // gcd of coefficients, positive; 0 for zero

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  LaurentPoly shifted(int k) const;     // multiply by q^k
  LaurentPoly mirrored() const;         // q -> q^-1
  LaurentPoly divided_exact(const BigInt& c) const;
  BigInt eval(const BigInt& x) const;   // requires min_exp >= 0 or |x| == 1

  std::string str() const;
  static LaurentPoly parse(std::string_view s);

 private:
  void add_term(int e, const BigInt& c);
  std::map<int, BigInt> t_;
};

LaurentPoly quantum_integer(int n);

// Z[alpha], dense by exponent with no trailing zeros.
class AlphaPoly {
 public:
  AlphaPoly() = default;
  AlphaPoly(long long c);  // NOLINT
  static AlphaPoly alpha_pow(int k, BigInt c = 1);

  const std::vector<BigInt>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_unit() const;     // +-1
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  AlphaPoly operator-() const;
  AlphaPoly& operator+=(const AlphaPoly& o);
  AlphaPoly& operator-=(const AlphaPoly& o);
  friend AlphaPoly operator+(AlphaPoly a, const AlphaPoly& b) { return a += b; }
  friend AlphaPoly operator-(AlphaPoly a, const AlphaPoly& b) { return a -= b; }
  friend AlphaPoly operator*(const AlphaPoly& a, const AlphaPoly& b);
  friend bool operator==(const AlphaPoly&, const AlphaPoly&) = default;

  BigInt eval(const BigInt& alpha) const;
  std::string str() const;
  static AlphaPoly parse(std::string_view s);

 private:
  void trim();
  std::vector<BigInt> c_;
};

// Element of Q(q), stored as a normalized pair of Laurent polynomials.
// Normal form: no common factor, integer content removed, denominator has
// lowest exponent 0 and positive leading coefficient.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(long long c) : num_(c), den_(1) {}  // NOLINT
  RatFunc(LaurentPoly p) : num_(std::move(p)), den_(1) { normalize(); }  // NOLINT
  RatFunc(LaurentPoly n, LaurentPoly d);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator-() const;
  RatFunc inverse() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc&, const RatFunc&) = default;

  // "(num)/(den)" or a quantum-integer quotient such as "[2][3]/[4]".
  std::string str() const;
  std::string quantum_str() const;
  static RatFunc parse(std::string_view s);

 private:
  void normalize();
  LaurentPoly num_, den_;
};

// Series in q bounded below; coefficients are exact for exponents below
// truncation_order. kExact marks a finite (polynomial) value.
class PowerSeries {
 public:
  static constexpr int kExact = INT_MAX;

  PowerSeries() = default;
  PowerSeries(const LaurentPoly& p, int truncation = kExact);  // NOLINT
  PowerSeries(long long c) : PowerSeries(LaurentPoly(c)) {}   // NOLINT

  int min_exponent() const { return min_exp_; }
  const std::vector<BigInt>& coefficients() const { return c_; }
  int truncation_order() const { return trunc_; }
  bool is_exact() const { return trunc_ == kExact; }
  bool is_zero() const { return c_.empty(); }
  BigInt coeff(int e) const;
  LaurentPoly to_laurent() const;  // known part only
  PowerSeries truncated(int order) const;

  PowerSeries operator-() const;
  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  PowerSeries& operator+=(const PowerSeries& o) { return *this = *this + o; }
  PowerSeries& operator*=(const PowerSeries& o) { return *this = *this * o; }
  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

  std::string str() const;

 private:
  static PowerSeries make(std::map<int, BigInt> t, int trunc);
  int min_exp_ = 0;
  std::vector<BigInt> c_;
  int trunc_ = kExact;
};

PowerSeries expand(const RatFunc& r, int order);

}  // namespace cjw
