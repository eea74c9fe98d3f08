#include "coendo/coendoscopy.hpp"
#include "coendo/error.hpp"
#include "coendo/torus.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace coendo;

namespace {

GroupDatum datum(const char* type, bool sc, Int p) {
  auto rs = build_root_system(parse_factors(type));
  return sc ? GroupDatum::simply_connected(rs, p) : GroupDatum::adjoint(rs, p);
}

IntVector vec(std::initializer_list<Int> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Int x : xs) v(i++) = x;
  return v;
}

std::set<std::vector<Int>> residue_set(const FiniteAbelianGroup& g) {
  std::set<std::vector<Int>> out;
  g.for_each_element([&](const IntVector& x) {
    std::vector<Int> k;
    for (Eigen::Index i = 0; i < x.size(); ++i) k.push_back(mod(x(i), g.modulus()));
    out.insert(k);
  });
  return out;
}

}  // namespace

TEST_CASE("point counts") {
  CHECK(enumerate_points(datum("A1", true, 3), 3).size() == 2);
  CHECK(enumerate_points(datum("A1", true, 5), 5).size() == 4);
  CHECK(enumerate_points(datum("B2", true, 5), 5).size() == 16);
  CHECK_THROWS_AS(enumerate_points(datum("B3", true, 5), 25, 1000), CapExceeded);
  auto pts = enumerate_points(datum("A2", true, 7), 7);
  std::set<std::vector<Int>> distinct;
  for (auto& p : pts) distinct.insert(std::vector<Int>(p.residues.data(), p.residues.data() + 2));
  CHECK(distinct.size() == 36);
}

TEST_CASE("centralizer subsystems") {
  auto sl2 = datum("A1", true, 5);
  CHECK(centralizer_subsystem(sl2, TorusPoint::make(5, vec({0}))) == sl2.roots().all());
  auto s = TorusPoint::make(5, vec({1}));
  CHECK(centralizer_subsystem(sl2, s).empty());
  CHECK_FALSE(is_elliptic(sl2, s));

  // Sp4: half of the fundamental coweight of the short simple root.
  auto sp4 = datum("B2", true, 5);
  auto t = point_from_coweight(sp4, 5, vec({0, 2}));
  auto phi = centralizer_subsystem(sp4, t);
  CHECK(subsystem_type(sp4.roots(), phi) == "A1xA1");
  for (int a : phi.members()) CHECK(sp4.roots().root(a).length == 2);
  CHECK(is_elliptic(sp4, t));
  CHECK_THROWS_AS(point_from_coweight(sp4, 5, vec({1, 0})), InvalidDatum);
}

TEST_CASE("type A has no non-central elliptic points") {
  for (const char* type : {"A1", "A2", "A3"}) {
    for (bool sc : {true, false}) {
      auto g = datum(type, sc, 7);
      for (auto& s : enumerate_points(g, 7)) {
        const bool central = centralizer_subsystem(g, s) == g.roots().all();
        CHECK(is_elliptic(g, s) == central);
      }
    }
  }
}

TEST_CASE("Weyl stabilizers and component groups") {
  auto sl2 = datum("A1", true, 5);
  auto w1 = WeylGroup::generate(sl2.roots());
  auto zero = TorusPoint::make(5, vec({0}));
  CHECK(weyl_stabilizer(sl2, w1, zero).size() == 2);
  CHECK(reflection_subgroup(w1, centralizer_subsystem(sl2, zero)).size() == 2);
  CHECK(pi0_order(sl2, w1, zero) == 1);
  auto one = TorusPoint::make(5, vec({1}));
  CHECK(weyl_stabilizer(sl2, w1, one).size() == 1);
  CHECK(pi0_order(sl2, w1, one) == 1);

  auto pgl2 = datum("A1", false, 5);
  auto two = TorusPoint::make(5, vec({2}));
  CHECK(centralizer_subsystem(pgl2, two).empty());
  CHECK(weyl_stabilizer(pgl2, w1, two).size() == 2);
  CHECK(pi0_order(pgl2, w1, two) == 2);

  auto sp4 = datum("B2", true, 5);
  auto w2 = WeylGroup::generate(sp4.roots());
  auto t = point_from_coweight(sp4, 5, vec({0, 2}));
  auto ws = weyl_stabilizer(sp4, w2, t);
  auto ws0 = reflection_subgroup(w2, centralizer_subsystem(sp4, t));
  CHECK(ws0.size() == 4);
  CHECK(std::includes(ws.begin(), ws.end(), ws0.begin(), ws0.end()));
}

TEST_CASE("subgroup points") {
  auto sl2 = datum("A1", true, 5);
  auto full = subgroup_points(sl2, 5, sl2.roots().empty_set());
  CHECK(full.invariants() == std::vector<Int>{4});
  CHECK(subgroup_points(sl2, 5, sl2.roots().all()).invariants() == std::vector<Int>{2});
  auto sl2_char2 = datum("A1", true, 2);
  CHECK(subgroup_points(sl2_char2, 4, sl2_char2.roots().all()).trivial());
  auto b3 = datum("B3", false, 7);
  CHECK(subgroup_points(b3, 7, b3.roots().empty_set()).order() == 216);
}

TEST_CASE("pointwise properties over small tori") {
  struct Case {
    const char* type;
    bool sc;
    Int q;
  };
  std::mt19937_64 rng(3);
  for (const Case& c : {Case{"A1", true, 5}, Case{"A2", false, 7}, Case{"B2", true, 5}, Case{"B2", false, 9},
                        Case{"G2", true, 7}, Case{"A1xA1", true, 5}, Case{"B3", true, 5}, Case{"C3", false, 5}}) {
    CAPTURE(std::string(c.type));
    CAPTURE(c.q);
    auto p = prime_power(c.q)->first;
    auto g = datum(c.type, c.sc, p);
    const auto& rs = g.roots();
    auto w = WeylGroup::generate(rs);
    auto points = enumerate_points(g, c.q);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(w.size()) - 1);
    std::set<RootSet> seen;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& s = points[i];
      auto phi = centralizer_subsystem(g, s);
      CHECK(is_closed(rs, phi));
      CHECK(is_symmetric(rs, phi));
      seen.insert(phi);

      // Three-way ellipticity agreement.
      bool finite_center = true;
      try {
        geometric_center_order(g, phi);
      } catch (const NotFullRank&) {
        finite_center = false;
      }
      CHECK(is_elliptic(g, s) == (subsystem_rank(rs, phi) == rs.rank()));
      CHECK(is_elliptic(g, s) == finite_center);

      int e = pick(rng);
      CHECK(centralizer_subsystem(g, act(g, w, e, s)) == w.apply(e, phi));

      if (i % 7 == 0) {
        auto ws = weyl_stabilizer(g, w, s);
        auto ws0 = reflection_subgroup(w, phi);
        CHECK(std::includes(ws.begin(), ws.end(), ws0.begin(), ws0.end()));
        CHECK(w.size() % static_cast<std::size_t>(pi0_order(g, w, s)) == 0);
      }
    }
    // Solving the congruences agrees with filtering the enumeration.
    seen.insert(rs.empty_set());
    for (const auto& sub : seen) {
      std::set<std::vector<Int>> filtered;
      for (const auto& s : points)
        if (sub.subset_of(centralizer_subsystem(g, s)))
          filtered.insert(std::vector<Int>(s.residues.data(), s.residues.data() + rs.rank()));
      CHECK(residue_set(subgroup_points(g, c.q, sub)) == filtered);
    }
  }
}
