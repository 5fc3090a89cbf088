// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "cjw/homology.hpp"
#include "cjw/projector.hpp"
#include "cjw/simplify.hpp"
#include "cjw/spin.hpp"
#include "cjw/tangle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace cjw;

namespace {

using TL = TLElement<RatFunc>;

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

DiagObject obj(const Matching& m, int q = 0) { return DiagObject(m, q, 0); }

Matching word(int n, const std::vector<int>& gens) {
  Matching m = Matching::identity(n);
  for (int g : gens) m = compose(m, Matching::generator(n, g)).first;
  return m;
}

TL generator(int n, int i) { return TL(Matching::generator(n, i), RatFunc(1)); }

// 1. Jones-Wenzl axioms over Q(q).
void classical_layer(Outcome& o) {
  for (int n = 1; n <= 6; ++n) {
    const TL& p = jones_wenzl(n);
    o.require(p * p == p, "p_n^2 = p_n, n=" + std::to_string(n));
    for (int i = 1; i < n; ++i) {
      o.require((generator(n, i) * p).is_zero(), "e_i p_n = 0");
      o.require((p * generator(n, i)).is_zero(), "p_n e_i = 0");
    }
    o.require(p.coeff(Matching::identity(n)) == RatFunc(1), "identity coefficient 1");
    o.require(trace(p) == RatFunc(quantum_integer(n + 1)), "trace p_n = [n+1]");
  }
  o.note << "n = 1..6";
}

// 2. Explicit P2: d^2 = 0 over 30 degrees; Euler series 1 + (-q + q^3 - q^5 + ...) e1.
void p2_exactness(Outcome& o) {
  const ChainComplex c = p2(30).complex;
  o.require(c.max_degree() >= 30, "30 degrees stored");
  const ValidationReport v = validate(c);
  o.require(v.ok, "validate: " + v.message);
  const int order = 20;
  o.require(c.euler_order >= order, "certified through order 20");
  const TLElement<PowerSeries> e = euler(c, order);
  LaurentPoly alternating;
  for (int k = 1; k < order; k += 2) alternating += LaurentPoly::monomial(k % 4 == 1 ? -1 : 1, k);
  const Matching id = Matching::identity(2), e1 = Matching::generator(2, 1);
  o.require(e.coeff(id).truncated(order) == PowerSeries(LaurentPoly(1)).truncated(order), "identity coefficient 1");
  o.require(e.coeff(e1).truncated(order) == PowerSeries(alternating).truncated(order), "e1 coefficient -q + q^3 - ...");
  o.require(e.coeff(e1).truncated(order) == expand(-RatFunc(quantum_integer(2)).inverse(), order).truncated(order),
            "e1 coefficient equals -1/[2]");
  o.note << "degrees 0.." << c.max_degree() << ", Euler to q^" << order;
}

// 3. Turnbacks die: nothing left below degree l - 3 after reduction.
void turnback_death(Outcome& o) {
  const ChainComplex q2 = p2(12).complex;
  const ChainComplex e1 = single_object(obj(Matching::generator(2, 1)));
  o.require(contractible_in_window(stack(e1, q2), 12, 3), "e1 P2 at l=12");
  o.require(contractible_in_window(stack(q2, e1), 12, 3), "P2 e1 at l=12");
  const ChainComplex q3 = truncated_projector(3, 10).complex;
  for (int i = 1; i <= 2; ++i) {
    const ChainComplex e = single_object(obj(Matching::generator(3, i)));
    o.require(contractible_in_window(stack(e, q3), 10, 3), "e_i P3 at l=10");
    o.require(contractible_in_window(stack(q3, e), 10, 3), "P3 e_i at l=10");
  }
  o.note << "P2 (l=12) and P3 (l=10), both sides, window 3";
}

// 4. Homology of the trace of P2 against the closed-form table.
std::vector<HomologyEntry> table_row(int d, long long alpha) {
  auto entry = [d](int q, int free, std::vector<BigInt> tor) { return HomologyEntry{d, q, free, std::move(tor)}; };
  if (d == 0) return {entry(-2, 1, {}), entry(0, 1, {})};
  if (d == 1) return {};
  const int k = d / 2;
  if (d % 2 == 0) return alpha == 0 ? std::vector<HomologyEntry>{entry(4 * k - 2, 1, {})} : std::vector<HomologyEntry>{};
  if (alpha == 0) return {entry(4 * k, 0, {2}), entry(4 * k + 2, 1, {})};
  const long long two_alpha = 2 * alpha;
  if (two_alpha == 1) return {entry(4 * k, 0, {2})};
  return {entry(4 * k, 0, {2}), entry(4 * k + 2, 0, {BigInt(two_alpha)})};
}

void trace_homology(Outcome& o) {
  const ChainComplex t = trace(p2(12).complex);
  for (long long alpha : {0LL, 1LL, 2LL}) {
    const GradedHomology h = graded_homology(t, alpha, 7);
    for (int d = 0; d <= 7; ++d) {
      std::vector<HomologyEntry> got = h.in_degree(d), want = table_row(d, alpha);
      auto by_q = [](const HomologyEntry& a, const HomologyEntry& b) { return a.q < b.q; };
      std::sort(got.begin(), got.end(), by_q);
      std::sort(want.begin(), want.end(), by_q);
      o.require(got == want, "alpha=" + std::to_string(alpha) + " H" + std::to_string(d) + " = " + h.str(d));
    }
  }
  o.note << "alpha 0,1,2, degrees 0..7";
}

// 5. Fattened sequence: validity, the cube for (4,3), universal property.
std::map<int, std::vector<DiagObject>> stacked_objects(const std::vector<ChainComplex>& factors, int below) {
  std::map<int, std::vector<DiagObject>> acc;
  acc[0] = {obj(Matching::identity(factors[0].n))};
  for (const auto& f : factors) {
    std::map<int, std::vector<DiagObject>> next;
    for (const auto& [d, objs] : acc)
      for (int k = f.min_degree; k <= f.max_degree(); ++k) {
        if (d + k >= below) continue;
        for (const auto& a : objs)
          for (const auto& b : f.group(k)) {
            auto [m, loops] = compose(a.m, b.m);
            next[d + k].push_back(DiagObject(m, a.q + b.q, a.circles + b.circles + loops));
          }
      }
    acc = std::move(next);
  }
  for (auto& [d, v] : acc) std::sort(v.begin(), v.end());
  return acc;
}

void cfk_soundness(Outcome& o) {
  for (int l = 0; l <= 8; ++l) o.require(validate(cfk(3, l)).ok, "cfk(3," + std::to_string(l) + ")");
  for (int l = 0; l <= 6; ++l) o.require(validate(cfk(4, l)).ok, "cfk(4," + std::to_string(l) + ")");
  const ChainComplex c = cfk(4, 3);
  const auto groups = group_multiset(c);
  auto has = [&](int degree, const DiagObject& x) {
    auto it = groups.find(degree);
    return it != groups.end() && std::find(it->second.begin(), it->second.end(), x) != it->second.end();
  };
  // cube: subsets of (e3, e2, e1) in that order, q^|S|; the layer below adds q^3 e1 in degree +2
  const std::vector<int> gens = {3, 2, 1};
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<int> s;
    for (int b = 0; b < 3; ++b)
      if (mask >> b & 1) s.push_back(gens[static_cast<std::size_t>(b)]);
    const int size = static_cast<int>(s.size());
    o.require(has(size, obj(word(4, s), size)), "cube vertex in degree " + std::to_string(size));
    if (!(mask & 4) && size + 2 < c.trunc) {
      std::vector<int> below = s;
      below.push_back(1);
      o.require(has(size + 2, obj(word(4, below), size + 3)), "lower layer in degree " + std::to_string(size + 2));
    }
  }
  auto factor = [](int j, bool three) {
    const DiagObject one = obj(Matching::identity(4)), e = obj(Matching::generator(4, j), 1);
    ChainComplex t;
    t.n = 4;
    t.push_group({one}, {});
    t.push_group({e}, Matrix());
    if (three) t.push_group({e.shifted(2)}, Matrix());
    return t;
  };
  const ChainComplex base = disjoint_union(truncated_projector(3, 3).complex, 1);
  o.require(groups == stacked_objects({base, factor(3, false), factor(2, false), factor(1, true)}, c.trunc),
            "cfk(4,3) multiset");
  for (auto [n, l, w] : {std::array<int, 3>{2, 12, 3}, {3, 10, 3}, {4, 8, 4}}) {
    const UniversalReport r = verify_universal(n, l, w);
    o.require(r.ok, "verify_universal(" + std::to_string(n) + "," + std::to_string(l) + "," + std::to_string(w) + ")\n" + r.str());
  }
  o.note << "cfk(3,0..8), cfk(4,0..6), cube of cfk(4,3), universal (2,12,3) (3,10,3) (4,8,4)";
}

// 6. Euler series of P_{n,l} against the expanded projector below the fk(n, l+1) shift.
void decategorification(Outcome& o) {
  const int l = 8;
  for (int n : {3, 4}) {
    const ChainComplex c = truncated_projector(n, l).complex;
    const int order = fk(n, l + 1).object.q;
    o.require(c.euler_order >= order, "certified order reaches the fk shift for n=" + std::to_string(n));
    const TLElement<PowerSeries> got = euler(c, order);
    for (const Matching& m : all_matchings(n))
      o.require(got.coeff(m).truncated(order) == expand(jones_wenzl(n).coeff(m), order).truncated(order),
                "coefficient of " + m.word() + " for n=" + std::to_string(n));
    o.note << (n == 3 ? "" : ", ") << "n=" << n << " l=" << l << " below q^" << order;
  }
}

// 7. Stability in the length.
void stability(Outcome& o) {
  for (int n = 2; n <= 4; ++n)
    for (int l = 0; l <= 6; ++l) o.require(stability_check(n, l), "stability n=" + std::to_string(n) + " l=" + std::to_string(l));
  o.note << "n 2..4, l 0..6";
}

// 8. P (x) P against P.
void idempotence(Outcome& o) {
  const ChainComplex p = truncated_projector(3, 8).complex;
  const ChainComplex pp = reduce(stack(p, p)).complex;
  o.require(group_multiset(pp, 5) == group_multiset(p, 5), "graded multiset below degree 5");
  const int order = std::min(pp.euler_order, p.euler_order);
  o.require(euler(pp, order) == euler(p, order), "Euler series");
  o.note << "degrees < 5, Euler below q^" << order;
}

// 9. Bracket against a direct state sum.
LaurentPoly bracket_oracle(const BraidWord& w) {
  const int c = static_cast<int>(w.letters.size());
  const LaurentPoly loop = LaurentPoly::q(-1) + LaurentPoly::q(1);
  LaurentPoly total;
  for (long long s = 0; s < (1LL << c); ++s) {
    Matching m = Matching::identity(w.strands);
    LaurentPoly coeff = 1;
    int loops = 0;
    for (int k = 0; k < c; ++k) {
      const int g = w.letters[static_cast<std::size_t>(k)];
      const int sign = g > 0 ? 1 : -1;
      if ((s >> k) & 1) {
        auto [p, extra] = compose(m, Matching::generator(w.strands, std::abs(g)));
        m = p;
        loops += extra;
        coeff = coeff * -LaurentPoly::q(2 * sign);
      } else {
        coeff = coeff * LaurentPoly::q(sign);
      }
    }
    loops += m.closure_loops();
    for (int k = 0; k < loops; ++k) coeff = coeff * loop;
    total += coeff;
  }
  return total;
}

void bracket(Outcome& o) {
  const BraidWord trefoil(2, {1, 1, 1});
  o.require(jones(trefoil) == PowerSeries(bracket_oracle(trefoil)), "trefoil");
  std::mt19937 rng(2024);
  for (int k = 0; k < 10; ++k) {
    const int n = 2 + static_cast<int>(rng() % 2), len = 1 + static_cast<int>(rng() % 6);
    std::vector<int> w;
    for (int j = 0; j < len; ++j) {
      const int g = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
      w.push_back(rng() % 2 ? g : -g);
    }
    const BraidWord b(n, w);
    o.require(jones(b) == PowerSeries(bracket_oracle(b)), "braid " + b.str());
  }
  o.note << "sigma_1^3 and 10 random braids";
}

// 10. Colored unknot.
void colored_unknot(Outcome& o) {
  const BraidWord unknot(1, {});
  const PowerSeries c2 = colored_jones(unknot, 2, 12);
  const int o2 = c2.truncation_order();
  o.require(o2 > 2, "nontrivial certified order for m=2");
  o.require(c2 == PowerSeries(quantum_integer(3)).truncated(o2), "m=2 equals q^-2 + 1 + q^2");
  const PowerSeries c3 = colored_jones(unknot, 3, 10);
  const int o3 = c3.truncation_order();
  o.require(o3 > 3, "nontrivial certified order for m=3");
  o.require(c3 == expand(trace(jones_wenzl(3)), o3).truncated(o3), "m=3 equals [4]");
  o.note << "m=2 exact below q^" << o2 << ", m=3 exact below q^" << o3;
}

// 11. Reidemeister II and III at color 1.
void reidemeister(Outcome& o) {
  o.require(reidemeister_check(Move::R2), "R2");
  o.require(reidemeister_check(Move::R3), "R3");
  o.require(reidemeister_check(BraidWord(3, {-2, 2}), BraidWord(3, {})), "R2 on strands 2,3");
  o.require(reidemeister_check(BraidWord(3, {-1, -2, -1}), BraidWord(3, {-2, -1, -2})), "R3 negative");
  o.note << "R2, R3 and their variants";
}

// 12. 6j round trip and pairing against random test elements.
TL flip_tl(const TL& x) {
  TL r(x.n());
  for (const auto& [m, c] : x.terms()) r.add(m.flipped(), c);
  return r;
}

TL tensor(const TL& x, const TL& y) {
  TL right(x.n() + y.n());
  for (const auto& [m, c] : y.terms()) right.add(m.with_strands_left(x.n()), c);
  return x.with_strands(y.n()) * right;
}

void sixj_round_trip(Outcome& o) {
  std::mt19937 rng(12);
  for (int a : {1, 2}) {
    const BasisChange s = sixj(a, a, a, a), t = sixj_inverse(a, a, a, a);
    const RatMatrix st = multiply(s.coeffs, t.coeffs), ts = multiply(t.coeffs, s.coeffs);
    for (std::size_t i = 0; i < st.size(); ++i)
      for (std::size_t j = 0; j < st.size(); ++j) {
        o.require(st[i][j] == RatFunc(i == j ? 1 : 0), "S S' = 1");
        o.require(ts[i][j] == RatFunc(i == j ? 1 : 0), "S' S = 1");
      }
    const int n = 2 * a;
    const auto all = all_matchings(n);
    const TL pp = tensor(jones_wenzl(a), jones_wenzl(a));
    std::vector<TL> hs, vs;
    for (int i : s.from_labels) hs.push_back(evaluate_open(horizontal_network(a, a, a, a, i), 2));
    for (int j : s.to_labels) vs.push_back(evaluate_open(vertical_network(a, a, a, a, j), 2));
    for (int trial = 0; trial < 5; ++trial) {
      TL z(n);
      for (int k = 0; k < 3; ++k) z.add(all[rng() % all.size()], RatFunc(static_cast<long long>(rng() % 7) - 3));
      z = pp * z * pp;
      for (std::size_t i = 0; i < hs.size(); ++i) {
        RatFunc rhs(0);
        for (std::size_t j = 0; j < vs.size(); ++j) rhs += s.coeffs[i][j] * trace(vs[j] * flip_tl(z));
        o.require(trace(hs[i] * flip_tl(z)) == rhs, "pairing of H" + std::to_string(s.from_labels[i]));
      }
    }
    // the same through network gluing against every basis network
    for (std::size_t i = 0; i < hs.size(); ++i)
      for (int k : s.to_labels) {
        const SpinNetwork test = vertical_network(a, a, a, a, k);
        RatFunc rhs(0);
        for (std::size_t j = 0; j < vs.size(); ++j) rhs += s.coeffs[i][j] * pairing(vertical_network(a, a, a, a, s.to_labels[j]), test);
        o.require(pairing(horizontal_network(a, a, a, a, s.from_labels[i]), test) == rhs, "network pairing");
      }
  }
  o.note << "(1,1,1,1) and (2,2,2,2)";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"classical Jones-Wenzl axioms", classical_layer},
      {"P2 exactness", p2_exactness},
      {"turnback death", turnback_death},
      {"trace homology table", trace_homology},
      {"CFK soundness", cfk_soundness},
      {"decategorification", decategorification},
      {"stability", stability},
      {"idempotence evidence", idempotence},
      {"bracket oracle", bracket},
      {"colored unknot", colored_unknot},
      {"Reidemeister at color 1", reidemeister},
      {"6j round trip", sixj_round_trip},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first << " (" << o.note.str()
              << ", " << static_cast<int>(secs * 1000) << " ms)" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
