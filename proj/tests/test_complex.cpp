#include "doctest.h"

#include "cjw/complex.hpp"

#include <random>

using namespace cjw;

namespace {

DiagObject obj(const Matching& m, int q = 0, int c = 0) { return DiagObject(m, q, c); }

// q 1 -> q^2 e_i (positive) or q^-2 e_i -> q^-1 1 (negative), degree 0 first.
ChainComplex crossing(int sign, int n, int i) {
  const DiagObject one = obj(Matching::identity(n)), e = obj(Matching::generator(n, i));
  ChainComplex c;
  c.n = n;
  if (sign > 0) {
    c.push_group({one.shifted(1)}, {});
    Matrix m;
    m.set(0, 0, saddle(one.shifted(1), e.shifted(2)));
    c.push_group({e.shifted(2)}, m);
  } else {
    c.min_degree = -1;
    c.push_group({e.shifted(-2)}, {});
    Matrix m;
    m.set(0, 0, saddle(e.shifted(-2), one.shifted(-1)));
    c.push_group({one.shifted(-1)}, m);
  }
  return c;
}

ChainComplex random_braid(std::mt19937& rng, int n, int len) {
  ChainComplex c = single_object(obj(Matching::identity(n)));
  std::uniform_int_distribution<int> pos(1, n - 1), sg(0, 1);
  for (int k = 0; k < len; ++k) c = stack(c, crossing(sg(rng) ? 1 : -1, n, pos(rng)));
  return c;
}

}  // namespace

TEST_CASE("validate") {
  const DiagObject a = obj(Matching::identity(2));
  CHECK(validate(single_object(a)).ok);
  ChainComplex bad;
  bad.n = 2;
  bad.push_group({a}, {});
  Matrix m;
  m.set(0, 0, identity(a));
  bad.push_group({a}, m);
  bad.push_group({a}, m);
  auto rep = validate(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.message.find("d^2") != std::string::npos);
  CHECK(validate(crossing(1, 2, 1)).ok);
  CHECK(validate(crossing(-1, 3, 2)).ok);
  // nonzero degree entry
  ChainComplex skew;
  skew.n = 2;
  skew.push_group({a}, {});
  Matrix s;
  s.set(0, 0, saddle(a, obj(Matching::generator(2, 1))));
  skew.push_group({obj(Matching::generator(2, 1))}, s);
  CHECK_FALSE(validate(skew).ok);
}

TEST_CASE("stack basics") {
  const ChainComplex c = crossing(1, 2, 1);
  CHECK(stack(c, single_object(obj(Matching::identity(2)))) == c);
  CHECK(stack(single_object(obj(Matching::identity(2))), c) == c);
  const DiagObject e1 = obj(Matching::generator(2, 1));
  ChainComplex ee = stack(single_object(e1), single_object(e1));
  REQUIRE(ee.groups.size() == 1);
  REQUIRE(ee.groups[0].size() == 1);
  CHECK(ee.groups[0][0] == obj(Matching::generator(2, 1), 0, 1));
}

TEST_CASE("stack of two crossings expands the bicomplex") {
  const ChainComplex c = crossing(1, 2, 1);
  const ChainComplex cc = stack(c, c);
  CHECK(validate(cc).ok);
  REQUIRE(cc.groups.size() == 3);
  const DiagObject one = obj(Matching::identity(2)), e1 = obj(Matching::generator(2, 1));
  CHECK(cc.group(0) == std::vector<DiagObject>{one.shifted(2)});
  CHECK(cc.group(1) == std::vector<DiagObject>{e1.shifted(3), e1.shifted(3)});
  CHECK(cc.group(2) == std::vector<DiagObject>{obj(e1.m, 4, 1)});
  // slot (0,0,1,0) first, then (1,0,0,0)
  const CobLC s1 = saddle(one.shifted(1), e1.shifted(2));
  CHECK(*cc.diff(0).at(0, 0) == stack(identity(one.shifted(1)), s1));
  CHECK(*cc.diff(0).at(1, 0) == stack(s1, identity(one.shifted(1))));
  CHECK(*cc.diff(1).at(0, 0) == stack(s1, identity(e1.shifted(2))));
  CHECK(*cc.diff(1).at(0, 1) == -stack(identity(e1.shifted(2)), s1));
}

TEST_CASE("stack is associative up to regrading") {
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    ChainComplex a = random_braid(rng, 3, 1), b = random_braid(rng, 3, 1), c = random_braid(rng, 3, 1);
    ChainComplex l = stack(stack(a, b), c), r = stack(a, stack(b, c));
    CHECK(validate(l).ok);
    CHECK(validate(r).ok);
    CHECK(group_multiset(l) == group_multiset(r));
  }
}

TEST_CASE("disjoint union, flip, trace") {
  const ChainComplex c = crossing(1, 2, 1);
  CHECK(disjoint_union(c, 0) == c);
  const ChainComplex u = disjoint_union(c, 1);
  CHECK(u.n == 3);
  CHECK(validate(u).ok);
  CHECK(u.group(1)[0] == obj(Matching::generator(3, 1), 2));
  CHECK(flip(flip(c)) == c);
  CHECK(flip(c) == c);
  const ChainComplex e2 = single_object(obj(Matching::generator(3, 2)));
  CHECK(flip(e2) == e2);
  const ChainComplex t1 = trace(single_object(obj(Matching::identity(1))));
  CHECK(t1.groups[0][0] == DiagObject::empty(0, 1));
  CHECK(trace(single_object(obj(Matching::generator(2, 1)))).groups[0][0].circles == 1);
  CHECK(validate(trace(c)).ok);
}

TEST_CASE("euler characteristic is multiplicative and commutes with trace") {
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 2;
    ChainComplex a = random_braid(rng, n, 2), b = random_braid(rng, n, 2);
    CHECK(euler(stack(a, b)) == euler(a) * euler(b));
    CHECK(euler_closed(trace(a)) == trace(euler(a)));
  }
  const DiagObject x = obj(Matching::generator(3, 1), 5, 0);
  CHECK(euler(single_object(x)) == TLElement<PowerSeries>(x.m, PowerSeries(LaurentPoly::q(5))));
}

TEST_CASE("euler respects truncation") {
  ChainComplex c = crossing(1, 2, 1);
  c.euler_order = 2;
  auto e = euler(c);
  CHECK(e.coeff(Matching::identity(2)).truncation_order() == 2);
  CHECK(e.coeff(Matching::identity(2)).coeff(1) == 1);
  CHECK_THROWS_AS(e.coeff(Matching::identity(2)).coeff(2), DomainError);
  CHECK(euler(c, 1).coeff(Matching::identity(2)).truncation_order() == 1);
}

TEST_CASE("cone") {
  const ChainComplex d = crossing(1, 2, 1);
  const DiagObject e = obj(Matching::generator(2, 1), 2);
  ChainMap f{single_object(e, 1), d, {}};
  Matrix id;
  id.set(0, 0, identity(e));
  f.maps[1] = id;
  CHECK(is_chain_map(f));
  const ChainComplex k = cone(f);
  CHECK(validate(k).ok);
  CHECK(k.group(0).size() == 2);
  CHECK(k.group(1).size() == 1);
  CHECK(*k.diff(0).at(0, 0) == identity(e));
  // zero map: cone = shifted src (+) tgt with no mixing
  ChainMap z{d, d, {}};
  const ChainComplex kz = cone(z);
  CHECK(validate(kz).ok);
  CHECK(kz.min_degree == -1);
  CHECK(kz.total_objects() == 4);
  // a non-chain map is rejected
  ChainMap bad{single_object(obj(Matching::identity(2), 1), 0), d, {}};
  Matrix b;
  b.set(0, 0, identity(obj(Matching::identity(2), 1)));
  bad.maps[0] = b;
  CHECK_FALSE(is_chain_map(bad));
  CHECK_THROWS_AS(cone(bad), DomainError);
}

TEST_CASE("json round trip") {
  std::mt19937 rng(5);
  for (int t = 0; t < 5; ++t) {
    ChainComplex c = random_braid(rng, 3, 3);
    c.trunc = t % 2 ? ChainComplex::kUnbounded : 7;
    if (c.max_degree() >= c.trunc) continue;
    CHECK(ChainComplex::parse_json(c.json()) == c);
    CHECK(ChainComplex::parse_json(c.json()).json() == c.json());
  }
}

TEST_CASE("cutting keeps the Euler series honest") {
  std::mt19937 rng(9);
  for (int t = 0; t < 6; ++t) {
    const ChainComplex c = random_braid(rng, 3, 3);
    for (int cut = c.min_degree; cut <= c.max_degree(); ++cut) {
      const ChainComplex r = cut_above(c, cut);
      CHECK(r.trunc == cut);
      CHECK(r.max_degree() < cut);
      // the stored part agrees with the full series below the reported order
      const int order = r.euler_order;
      const TLElement<PowerSeries> a = euler(r, order), b = euler(c, order);
      for (const auto& m : all_matchings(3)) CHECK(a.coeff(m).truncated(order) == b.coeff(m).truncated(order));
    }
  }
}
