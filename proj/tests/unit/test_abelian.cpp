#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sbs/abelian.hpp"

using namespace sbs;
using TS = std::vector<TorsionSummand>;

namespace {
H2Data h2(int64_t rank, TS t, BardenIndex i = BardenIndex(0)) { return make_h2(rank, t, i); }
}  // namespace

TEST_CASE("normalize merges and sorts") {
  CHECK(normalize(TS{{3, 2}, {3, 2}}) == TS{{3, 4}});
  CHECK(normalize(TS{{6, 2}}) == TS{{6, 2}});
  CHECK(normalize(TS{{5, 4}, {3, 2}}) == TS{{3, 2}, {5, 4}});
  CHECK_THROWS_AS(normalize(TS{{1, 2}}), InputError);
  CHECK_THROWS_AS(normalize(TS{{4, 0}}), InputError);
  CHECK_THROWS_AS(make_h2(-1, TS{}, BardenIndex(0)), InputError);
}

TEST_CASE("equality is group isomorphism") {
  CHECK(h2(0, {{6, 2}}) == h2(0, {{2, 2}, {3, 2}}));
  CHECK_FALSE(h2(0, {{4, 2}}) == h2(0, {{2, 4}}));
  CHECK_FALSE(h2(1, {{3, 2}}) == h2(0, {{3, 2}}));
  CHECK_FALSE(h2(1, {{3, 2}}, BardenIndex(0)) == h2(1, {{3, 2}}, BardenIndex::infinity()));
}

TEST_CASE("primary decomposition") {
  auto pd = primary_decomposition(TS{{6, 2}});
  CHECK(pd.at(2).at(1) == 2);
  CHECK(pd.at(3).at(1) == 2);
  pd = primary_decomposition(TS{{16, 2}});
  CHECK(pd.at(2).at(4) == 2);
  pd = primary_decomposition(TS{{12, 2}, {3, 4}});
  CHECK(pd.at(2).at(2) == 2);
  CHECK(pd.at(3).at(1) == 6);
}

TEST_CASE("primary decomposition agrees with subgroup counting [property]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    TS t;
    int parts = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < parts; ++k) t.push_back({2 + static_cast<int64_t>(rng() % 40), 1 + static_cast<int64_t>(rng() % 4)});
    auto pd = primary_decomposition(normalize(t));
    for (int64_t p : oracle::primes_upto(41)) {
      auto expected = oracle::p_counts(t, p);
      std::map<int, oracle::i64> got;
      if (pd.count(p)) got = {pd.at(p).begin(), pd.at(p).end()};
      CHECK(got == expected);
    }
  }
}

TEST_CASE("torsion order and mod 2 Betti number") {
  CHECK(torsion_order(TS{{3, 2}, {5, 4}}) == 9 * 625);
  CHECK(mod2_betti2(h2(2, {{2, 2}, {4, 2}, {3, 2}})) == 6);
  CHECK_THROWS_AS(torsion_order(TS{{1000003, 4}}), OverflowError);
}

TEST_CASE("t invariants") {
  auto t = t_invariants(h2(0, {{3, 2}, {5, 4}}));
  CHECK(t.at(3) == 1);
  CHECK(t.at(5) == 1);
  CHECK(t.t_max == 1);
  t = t_invariants(h2(0, {{2, 2}, {4, 2}}));
  CHECK(t.at(2) == 2);
  CHECK(t.t_max == 2);
  CHECK(t_invariants(h2(3, {})).t_max == 0);
}

TEST_CASE("G-K condition") {
  auto r = gk_check(h2(0, {{2, 1}}, BardenIndex(1)));
  CHECK_FALSE(r.pass);
  CHECK(r.clause == 1);
  r = gk_check(h2(0, {{2, 2}, {4, 2}}));
  CHECK_FALSE(r.pass);
  CHECK(r.clause == 2);
  CHECK(gk_check(h2(1, {{3, 2}, {5, 4}}, BardenIndex::infinity())).pass);
  r = gk_check(h2(1, {{2, 2}, {4, 2}}, BardenIndex::infinity()));
  CHECK_FALSE(r.pass);
  CHECK(r.clause == 3);
  CHECK(gk_check(h2(1, {{2, 2}, {4, 2}})).pass);
}

TEST_CASE("Barden normal form") {
  auto c = barden_normal_form(h2(1, {{7, 2}}));
  REQUIRE(c.realizable());
  CHECK(c.candidates.front().index_string() == "M_{0;7;1}");
  c = barden_normal_form(h2(0, {{3, 4}}));
  REQUIRE(c.realizable());
  CHECK(c.candidates.front().chain == std::vector<int64_t>{3, 3});
  CHECK_FALSE(barden_normal_form(h2(0, {{3, 3}})).realizable());
  c = barden_normal_form(h2(0, {{2, 1}}, BardenIndex(1)));
  REQUIRE(c.realizable());
  CHECK(c.candidates.front().j == ExtendedIndex(-1));
  CHECK(c.candidates.front().connected_sum() == "X_{-1}");
  c = barden_normal_form(h2(0, {{4, 2}}, BardenIndex(2)));
  REQUIRE(c.realizable());
  CHECK(c.candidates.front().j == ExtendedIndex(2));
  CHECK_FALSE(barden_normal_form(h2(0, {}, BardenIndex::infinity())).realizable());
  c = barden_normal_form(h2(3, {}, BardenIndex::infinity()));
  REQUIRE(c.realizable());
  CHECK(c.candidates.front().connected_sum() == "X_inf # 2 M_inf");
}

TEST_CASE("Barden read-off round-trips [property]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    TS t;
    int parts = static_cast<int>(rng() % 4);
    for (int k = 0; k < parts; ++k) t.push_back({2 + static_cast<int64_t>(rng() % 30), 2 * (1 + static_cast<int64_t>(rng() % 3))});
    bool spin = rng() % 2;
    int64_t rank = static_cast<int64_t>(rng() % 3) + (spin ? 0 : 1);
    auto h = h2(rank, t, spin ? BardenIndex(0) : BardenIndex::infinity());
    auto c = barden_normal_form(h);
    REQUIRE(c.realizable());
    CHECK_FALSE(c.ambiguous());
    auto back = c.candidates.front().homology();
    CHECK(back == h);
    CHECK(oracle::isomorphic(back.torsion, t));
    for (std::size_t k = 1; k < c.candidates.front().chain.size(); ++k)
      CHECK(c.candidates.front().chain[k] % c.candidates.front().chain[k - 1] == 0);
  }
}

TEST_CASE("triangular numbers") {
  CHECK(is_triangular(1) == 3);
  CHECK(is_triangular(3) == 4);
  CHECK_FALSE(is_triangular(2).has_value());
  CHECK_FALSE(is_triangular(0).has_value());
  for (int64_t n = 1; n < 3000; ++n) CHECK(is_triangular(n) == oracle::degree_of(n));
}

TEST_CASE("Kollar obstruction") {
  CHECK(kollar_obstruction(h2(0, {{5, 6}})).pass);
  TS eleven;
  for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) eleven.push_back({p, 4});
  auto k = kollar_obstruction(h2(0, eleven));
  CHECK_FALSE(k.pass);
  CHECK(k.outside.size() == 11);
  eleven.pop_back();
  CHECK(kollar_obstruction(h2(0, eleven)).pass);
  CHECK(kollar_obstruction(h2(0, {{3, 2}, {5, 12}})).pass);
  CHECK_THROWS_AS(kollar_obstruction(h2(1, {{3, 2}})), InputError);
}

TEST_CASE("T*_p refinement") {
  CHECK(tstar_check(h2(0, {{5, 6}})).pass);
  auto r = tstar_check(h2(0, {{2, 6}}));
  CHECK_FALSE(r.pass);
  CHECK(r.failures.front().part.prime == 2);
  CHECK(r.failures.front().degree == 4);
  r = tstar_check(h2(0, {{3, 2}}));
  CHECK_FALSE(r.pass);
  CHECK(r.failures.front().degree == 3);
  CHECK_THROWS_AS(tstar_check(h2(2, {{3, 2}})), InputError);
}

TEST_CASE("torsion rendering") {
  CHECK(torsion_to_string(TS{}) == "0");
  CHECK(torsion_to_string(normalize(TS{{5, 4}, {3, 2}})) == "3^2,5^4");
}
