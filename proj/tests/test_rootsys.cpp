#include "coendo/error.hpp"
#include "coendo/rootsys.hpp"
#include "coendo/weyl.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace coendo;

namespace {

std::vector<SimpleType> all_types_up_to_rank(int max_rank) {
  std::vector<SimpleType> out;
  for (char f : std::string("ABCDEFG"))
    for (int r = 1; r <= max_rank; ++r)
      if (SimpleType::legal(static_cast<Family>(f), r)) out.push_back({static_cast<Family>(f), r});
  return out;
}

std::vector<Int> sorted(std::vector<Int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("root counts") {
  CHECK(build_root_system(parse_factors("A2")).num_roots() == 6);
  CHECK(build_root_system(parse_factors("A2")).dim_g() == 8);
  CHECK(build_root_system(parse_factors("G2")).num_roots() == 12);
  auto a1a1 = build_root_system(parse_factors("A1xA1"));
  CHECK(a1a1.num_roots() == 4);
  CHECK(a1a1.pairing(a1a1.simple_root(0), a1a1.simple_root(1)) == 0);
}

TEST_CASE("reflection closure agrees with the root-string construction") {
  for (const auto& t : all_types_up_to_rank(8)) {
    CAPTURE(t.name());
    auto rs = build_root_system({t});
    auto ref = oracle::positive_roots_by_strings(t.cartan());
    std::set<std::vector<Int>> mine;
    for (const auto& root : rs.roots())
      if (root.height > 0) mine.insert(std::vector<Int>(root.coeffs.data(), root.coeffs.data() + rs.rank()));
    CHECK(mine == ref);
    CHECK(rs.num_roots() == 2 * static_cast<int>(ref.size()));
  }
}

TEST_CASE("root system invariants") {
  for (const auto& t : all_types_up_to_rank(6)) {
    CAPTURE(t.name());
    auto rs = build_root_system({t});
    for (int i = 0; i < rs.num_roots(); ++i) {
      CHECK(rs.negative(i) >= 0);
      const auto& c = rs.root(i).coeffs;
      const bool nonneg = (c.array() >= 0).all(), nonpos = (c.array() <= 0).all();
      CHECK((nonneg || nonpos));
      for (int j = 0; j < rs.rank(); ++j) {
        IntVector img = c - rs.pairing(i, rs.simple_root(j)) * rs.root(rs.simple_root(j)).coeffs;
        CHECK(rs.find(img) >= 0);
      }
      CHECK(rs.pairing(i, i) == 2);
    }
    // Cartan matrix recovered from the base.
    IntMatrix back(rs.rank(), rs.rank());
    for (int i = 0; i < rs.rank(); ++i)
      for (int j = 0; j < rs.rank(); ++j) back(i, j) = rs.pairing(rs.simple_root(i), rs.simple_root(j));
    CHECK(back == t.cartan());
    CHECK(identify_cartan(t.cartan()) == t);
    CHECK(subsystem_type(rs, rs.all()) == t.name());
  }
}

TEST_CASE("illegal types") {
  CHECK_THROWS_AS(SimpleType::parse("C2"), IllegalType);
  CHECK_THROWS_AS(SimpleType::parse("D3"), IllegalType);
  CHECK_THROWS_AS(SimpleType::parse("E9"), IllegalType);
  CHECK_THROWS_AS(SimpleType::parse("Q4"), IllegalType);
  CHECK_THROWS_AS(parse_factors("A2x"), IllegalType);
  CHECK_THROWS_AS(parse_factors("G"), IllegalType);
  CHECK(parse_factors("A2xA1").size() == 2);
  CHECK(parse_factors("B_2, G2")[1] == SimpleType{Family::G, 2});
}

TEST_CASE("highest root coefficients") {
  auto a4 = build_root_system(parse_factors("A4"));
  CHECK(highest_root_coefficients(a4, 0) == std::vector<Int>{1, 1, 1, 1});
  auto g2 = build_root_system(parse_factors("G2"));
  CHECK(sorted(highest_root_coefficients(g2, 0)) == std::vector<Int>{2, 3});
  auto e8 = build_root_system(parse_factors("E8"));
  CHECK(sorted(highest_root_coefficients(e8, 0)) == std::vector<Int>{2, 2, 3, 3, 4, 4, 5, 6});
  auto prod = build_root_system(parse_factors("A1xB3"));
  CHECK(highest_root_coefficients(prod, 1) == std::vector<Int>{1, 2, 2});
}

TEST_CASE("exponents") {
  CHECK(exponents(build_root_system(parse_factors("A2")), 0) == std::vector<int>{1, 2});
  CHECK(exponents(build_root_system(parse_factors("G2")), 0) == std::vector<int>{1, 5});
  CHECK(exponents(build_root_system(parse_factors("E8")), 0) == std::vector<int>{1, 7, 11, 13, 17, 19, 23, 29});
  CHECK(exponents(build_root_system(parse_factors("F4")), 0) == std::vector<int>{1, 5, 7, 11});
  for (const auto& t : all_types_up_to_rank(8)) {
    CAPTURE(t.name());
    auto rs = build_root_system({t});
    auto m = exponents(rs, 0);
    CHECK(static_cast<int>(m.size()) == t.rank);
    int sum = 0;
    for (int x : m) sum += x;
    CHECK(2 * sum == rs.num_roots());
  }
}

TEST_CASE("Weyl group orders") {
  CHECK(WeylGroup::generate(build_root_system(parse_factors("A2"))).size() == 6);
  CHECK(WeylGroup::generate(build_root_system(parse_factors("B3"))).size() == 48);
  CHECK(WeylGroup::generate(build_root_system(parse_factors("F4"))).size() == 1152);
  CHECK(weyl_order_from_degrees(build_root_system(parse_factors("E7"))) == 2903040u);
  try {
    WeylGroup::generate(build_root_system(parse_factors("E7")));
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(e.exact_size() == 2903040u);
  }
  CHECK_THROWS_AS(WeylGroup::generate(build_root_system(parse_factors("B3")), 10), CapExceeded);
}

TEST_CASE("Weyl elements act compatibly on roots and coweights") {
  auto rs = build_root_system(parse_factors("B3"));
  auto w = WeylGroup::generate(rs);
  CHECK(w[0].length == 0);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(w.size()) - 1), coord(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    int e = pick(rng);
    IntVector t(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) t(i) = coord(rng);
    IntVector wt = w[e].matrix * t;
    for (int a = 0; a < rs.num_roots(); ++a) CHECK(rs.root(w[e].perm[a]).coeffs.dot(wt) == rs.root(a).coeffs.dot(t));
    int f = pick(rng);
    CHECK(w[w.multiply(e, f)].matrix == w[e].matrix * w[f].matrix);
    CHECK(w.multiply(e, w.inverse(e)) == 0);
    CHECK(static_cast<int>(w.word(e).size()) == w[e].length);
  }
  // Lengths equal the number of positive roots made negative.
  for (int e = 0; e < static_cast<int>(w.size()); ++e) {
    int inv = 0;
    for (int a = 0; a < rs.num_roots(); ++a)
      if (rs.positive(a) && !rs.positive(w[e].perm[a])) ++inv;
    CHECK(inv == w[e].length);
  }
}

TEST_CASE("lattice quotients") {
  for (int r = 1; r <= 8; ++r) {
    auto rs = build_root_system({{Family::A, r}});
    auto q = lattice_quotient(coweight_lattice(rs), coroot_lattice(rs));
    CHECK(q.invariants() == std::vector<Int>{r + 1});
  }
  auto d5 = build_root_system(parse_factors("D5"));
  CHECK(lattice_quotient(coweight_lattice(d5), coroot_lattice(d5)).invariants() == std::vector<Int>{4});
  auto d4 = build_root_system(parse_factors("D4"));
  CHECK(lattice_quotient(coweight_lattice(d4), coroot_lattice(d4)).invariants() == std::vector<Int>{2, 2});
  CHECK(lattice_quotient(coroot_lattice(d4), coroot_lattice(d4)).trivial());
  CHECK_THROWS_AS(lattice_quotient(coroot_lattice(d4), coweight_lattice(d4)), NotASublattice);
}

TEST_CASE("quotient invariants are basis independent") {
  std::mt19937_64 rng(11);
  for (const char* name : {"A3", "B3", "C3", "D4", "D5", "E6", "G2", "A1xA1xA1"}) {
    CAPTURE(std::string(name));
    auto rs = build_root_system(parse_factors(name));
    auto ref = lattice_quotient(coweight_lattice(rs), coroot_lattice(rs)).invariants();
    for (int trial = 0; trial < 20; ++trial) {
      Lattice big{coweight_lattice(rs).basis * oracle::random_unimodular(rs.rank(), rng), "big"};
      Lattice small{coroot_lattice(rs).basis * oracle::random_unimodular(rs.rank(), rng), "small"};
      auto q = lattice_quotient(big, small);
      CHECK(q.invariants() == ref);
      for (const auto& g : q.generators()) CHECK(big.contains(g));
      CHECK(std::abs(determinant(small.basis)) == q.order() * std::abs(determinant(big.basis)));
    }
  }
}

TEST_CASE("fundamental groups and centers") {
  auto a1 = build_root_system(parse_factors("A1"));
  CHECK(pi1_order(GroupDatum::simply_connected(a1, 5)) == 1);
  CHECK(pi1_order(GroupDatum::adjoint(a1, 5)) == 2);
  CHECK(pi1_order(GroupDatum::simply_connected(build_root_system(parse_factors("A2")), 5)) == 1);
  for (int n = 2; n <= 6; ++n) {
    auto rs = build_root_system({{Family::A, n - 1}});
    CHECK(geometric_center_order(GroupDatum::simply_connected(rs, 7), rs.all()) == n);
    CHECK(geometric_center_order(GroupDatum::adjoint(rs, 7), rs.all()) == 1);
  }
  for (const char* name : {"B3", "C3", "D4", "D5", "E6", "E7", "F4", "G2"}) {
    CAPTURE(std::string(name));
    auto rs = build_root_system(parse_factors(name));
    auto ad = GroupDatum::adjoint(rs, 7);
    CHECK(pi1_order(ad) == lattice_quotient(coweight_lattice(rs), coroot_lattice(rs)).order());
    CHECK(pi1_order(GroupDatum::simply_connected(rs, 7)) == 1);
  }
  // Long-root A1xA1 inside simply connected B2 = Sp4.
  auto b2 = build_root_system(parse_factors("B2"));
  RootSet longs(b2.num_roots());
  for (int i = 0; i < b2.num_roots(); ++i)
    if (b2.root(i).length == 2) longs.set(i);
  CHECK(subsystem_type(b2, longs) == "A1xA1");
  auto sp4 = GroupDatum::simply_connected(b2, 5);
  CHECK(geometric_center_order(sp4, longs) == 4);
  CHECK(pi1_order(sp4, longs) == 1);
  CHECK(pi1_order(GroupDatum::adjoint(b2, 5), longs) == 2);
  CHECK_THROWS_AS(geometric_center_order(sp4, b2.empty_set()), NotFullRank);
}

TEST_CASE("group datum validation") {
  auto a1 = build_root_system(parse_factors("A1"));
  IntMatrix too_small(1, 1);
  too_small << 4;
  CHECK_THROWS_AS(GroupDatum(a1, Lattice{too_small, "bad"}, 5), NotASublattice);
  CHECK_THROWS_AS(GroupDatum::adjoint(a1, 4), BadCharacteristic);
}

TEST_CASE("very good primes") {
  auto v = very_good_check(parse_factors("A2"), 3);
  CHECK_FALSE(v.ok);
  REQUIRE(v.reasons.size() == 1);
  CHECK(v.reasons[0].find("p | n") != std::string::npos);
  CHECK(very_good_check(parse_factors("G2"), 7).ok);
  CHECK_FALSE(very_good_check(parse_factors("B2"), 2).ok);
  CHECK_FALSE(very_good_check(parse_factors("E8"), 5).ok);
  CHECK(very_good_check(parse_factors("E7"), 5).ok);
  CHECK_FALSE(very_good_check(parse_factors("A1xG2"), 3).ok);
}

TEST_CASE("subsystem typing") {
  auto f4 = build_root_system(parse_factors("F4"));
  CHECK(subsystem_type(f4, f4.empty_set()) == "empty");
  RootSet longs(f4.num_roots());
  for (int i = 0; i < f4.num_roots(); ++i)
    if (f4.root(i).length == 2) longs.set(i);
  CHECK(subsystem_type(f4, longs) == "D4");
  CHECK(is_closed(f4, longs));
  CHECK(closure(f4, longs) == longs);
  RootSet one(f4.num_roots());
  one.set(f4.simple_root(0));
  CHECK(subsystem_type(f4, closure(f4, one)) == "A1");
}
