#include "doctest.h"

#include "cjw/tl.hpp"

#include <set>

using namespace cjw;

namespace {

using TLR = TLElement<RatFunc>;

TLR gen(int n, int i) { return TLR(Matching::generator(n, i), RatFunc(1)); }

// Independent construction of p_3: unknown coefficients on the five matchings
// of TL_3, fixed by c(1) = 1 and e_1 x = e_2 x = 0. The linear system is solved
// by hand-rolled Gaussian elimination over Q(q).
TLR p3_from_axioms() {
  auto ms = all_matchings(3);
  const int k = static_cast<int>(ms.size());
  std::vector<std::vector<RatFunc>> rows;
  std::vector<RatFunc> rhs;
  // identity coefficient
  {
    std::vector<RatFunc> r(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j)
      if (ms[static_cast<std::size_t>(j)].is_identity()) r[static_cast<std::size_t>(j)] = RatFunc(1);
    rows.push_back(r);
    rhs.push_back(RatFunc(1));
  }
  const RatFunc loop(quantum_integer(2));
  for (int i = 1; i <= 2; ++i)
    for (int side = 0; side < 2; ++side)
      for (const auto& target : ms) {
        std::vector<RatFunc> r(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) {
          auto [m, loops] = side == 0 ? compose(Matching::generator(3, i), ms[static_cast<std::size_t>(j)])
                                      : compose(ms[static_cast<std::size_t>(j)], Matching::generator(3, i));
          if (m == target) {
            RatFunc c(1);
            for (int l = 0; l < loops; ++l) c = c * loop;
            r[static_cast<std::size_t>(j)] += c;
          }
        }
        rows.push_back(r);
        rhs.push_back(RatFunc(0));
      }
  // row reduce
  const int m = static_cast<int>(rows.size());
  int piv_row = 0;
  std::vector<int> pivcol;
  for (int c = 0; c < k && piv_row < m; ++c) {
    int p = -1;
    for (int r = piv_row; r < m; ++r)
      if (!rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero()) { p = r; break; }
    if (p < 0) continue;
    std::swap(rows[static_cast<std::size_t>(p)], rows[static_cast<std::size_t>(piv_row)]);
    std::swap(rhs[static_cast<std::size_t>(p)], rhs[static_cast<std::size_t>(piv_row)]);
    RatFunc inv = rows[static_cast<std::size_t>(piv_row)][static_cast<std::size_t>(c)].inverse();
    for (auto& x : rows[static_cast<std::size_t>(piv_row)]) x = x * inv;
    rhs[static_cast<std::size_t>(piv_row)] = rhs[static_cast<std::size_t>(piv_row)] * inv;
    for (int r = 0; r < m; ++r) {
      if (r == piv_row) continue;
      RatFunc f = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (f.is_zero()) continue;
      for (int cc = 0; cc < k; ++cc)
        rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -= f * rows[static_cast<std::size_t>(piv_row)][static_cast<std::size_t>(cc)];
      rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(piv_row)];
    }
    pivcol.push_back(c);
    ++piv_row;
  }
  REQUIRE(static_cast<int>(pivcol.size()) == k);  // unique solution
  TLR x(3);
  for (int r = 0; r < k; ++r) x.add(ms[static_cast<std::size_t>(pivcol[static_cast<std::size_t>(r)])], rhs[static_cast<std::size_t>(r)]);
  return x;
}

}  // namespace

TEST_CASE("generators") {
  auto e1 = Matching::generator(2, 1);
  CHECK(e1.pairs() == std::vector<std::pair<int, int>>{{1, 2}, {3, 4}});
  auto e2 = Matching::generator(3, 2);
  CHECK(e2.pairs() == std::vector<std::pair<int, int>>{{1, 4}, {2, 3}, {5, 6}});
  CHECK_THROWS_AS(Matching::generator(3, 3), DomainError);
  CHECK_THROWS_AS(Matching::generator(3, 0), DomainError);
  CHECK(Matching::from_pairs(3, {{1, 2}, {3, 6}, {4, 5}}).json() == "[[1,2],[3,6],[4,5]]");
  CHECK_THROWS_AS(Matching::from_pairs(2, {{1, 4}, {2, 3}}), DomainError);  // crossing
}

TEST_CASE("composition relations") {
  auto e1 = Matching::generator(2, 1);
  CHECK(compose(e1, e1) == std::pair<Matching, int>{e1, 1});
  auto a = Matching::generator(3, 1), b = Matching::generator(3, 2);
  CHECK(compose(compose(a, b).first, a) == std::pair<Matching, int>{a, 0});
  CHECK(compose(compose(b, a).first, b) == std::pair<Matching, int>{b, 0});
  for (int n = 1; n <= 5; ++n)
    for (const auto& d : all_matchings(n)) {
      CHECK(compose(Matching::identity(n), d) == std::pair<Matching, int>{d, 0});
      CHECK(compose(d, Matching::identity(n)) == std::pair<Matching, int>{d, 0});
    }
}

TEST_CASE("far commutativity") {
  for (int n = 3; n <= 7; ++n)
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j)
        if (std::abs(i - j) >= 2)
          CHECK(compose(Matching::generator(n, i), Matching::generator(n, j)) ==
                compose(Matching::generator(n, j), Matching::generator(n, i)));
}

TEST_CASE("catalan count") {
  const int catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
  for (int n = 0; n <= 8; ++n) {
    auto ms = all_matchings(n);
    std::set<Matching> uniq(ms.begin(), ms.end());
    CHECK(static_cast<int>(uniq.size()) == catalan[n]);
  }
}

TEST_CASE("associativity of composition") {
  auto ms = all_matchings(4);
  for (std::size_t i = 0; i < ms.size(); i += 3)
    for (std::size_t j = 0; j < ms.size(); j += 2)
      for (std::size_t k = 0; k < ms.size(); k += 5) {
        auto [ab, l1] = compose(ms[i], ms[j]);
        auto [abc, l2] = compose(ab, ms[k]);
        auto [bc, l3] = compose(ms[j], ms[k]);
        auto [abc2, l4] = compose(ms[i], bc);
        CHECK(abc == abc2);
        CHECK(l1 + l2 == l3 + l4);
      }
}

TEST_CASE("jones-wenzl small cases") {
  CHECK(jones_wenzl(1) == TLR::identity(1));
  TLR p2 = TLR::identity(2) - RatFunc(LaurentPoly(1), quantum_integer(2)) * gen(2, 1);
  CHECK(jones_wenzl(2) == p2);
  CHECK(render(jones_wenzl(2)) == "1 - (1/[2]) e1");
  CHECK(jones_wenzl(3) == p3_from_axioms());
  CHECK(jones_wenzl(2) * gen(2, 1) == TLR(2));
  CHECK(gen(2, 1) * gen(2, 1) == RatFunc(quantum_integer(2)) * gen(2, 1));
}

TEST_CASE("jones-wenzl axioms up to n = 6") {
  for (int n = 1; n <= 6; ++n) {
    const TLR& p = jones_wenzl(n);
    CHECK(p * p == p);
    CHECK(p.coeff(Matching::identity(n)) == RatFunc(1));
    for (int i = 1; i < n; ++i) {
      CHECK((gen(n, i) * p).is_zero());
      CHECK((p * gen(n, i)).is_zero());
    }
    CHECK(trace(p) == RatFunc(quantum_integer(n + 1)));
  }
}

TEST_CASE("trace of identity") {
  CHECK(trace(TLElement<LaurentPoly>::identity(2)) == quantum_integer(2) * quantum_integer(2));
  CHECK(Matching::generator(2, 1).closure_loops() == 1);
}

TEST_CASE("words render and flip") {
  CHECK(Matching::identity(3).word() == "1");
  CHECK(Matching::generator(3, 2).word() == "e2");
  CHECK(compose(Matching::generator(3, 1), Matching::generator(3, 2)).first.word() == "e1e2");
  for (const auto& m : all_matchings(4)) CHECK(m.flipped().flipped() == m);
  CHECK(Matching::generator(3, 2).flipped() == Matching::generator(3, 2));
}
