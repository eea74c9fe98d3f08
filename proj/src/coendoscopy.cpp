#include "coendo/coendoscopy.hpp"

#include "coendo/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace coendo {

// ---------------------------------------------------------------------------
// Classes

bool CoendoscopicClass::whole_group() const {
  return std::all_of(deleted.begin(), deleted.end(), [](int d) { return d < 0; });
}

bool CoendoscopicClass::prime_labels() const {
  for (std::size_t f = 0; f < deleted.size(); ++f)
    if (deleted[f] >= 0 && !is_prime(labels[f])) return false;
  return true;
}

std::string CoendoscopicClass::label() const {
  std::string s;
  for (std::size_t f = 0; f < deleted.size(); ++f) {
    if (deleted[f] < 0) continue;
    if (!s.empty()) s += "+";
    s += "a" + std::to_string(deleted[f] + 1) + "/" + std::to_string(labels[f]);
  }
  return s.empty() ? "whole" : s;
}

bool CoendoscopicClass::rational_over(const GroupDatum& g, Int q) const {
  IntVector x(rep_numerator.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Int num = checked_mul(q - 1, rep_numerator(i));
    if (num % rep_denominator != 0) return false;
    x(i) = num / rep_denominator;
  }
  return g.cochar().contains(x);
}

std::optional<TorusPoint> CoendoscopicClass::representative_point(const GroupDatum& g, Int q) const {
  if (!rational_over(g, q)) return std::nullopt;
  IntMatrix x(rep_numerator.size(), 1);
  for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, 0) = (q - 1) * rep_numerator(i) / rep_denominator;
  auto v = solve_integral(g.cochar().basis, x);
  if (!v) return std::nullopt;
  return TorusPoint::make(q, v->col(0));
}

namespace {

std::vector<CoendoscopicClass> node_combinations(const RootSystem& rs, bool primes_only) {
  const int nf = static_cast<int>(rs.factors().size());
  std::vector<std::vector<std::pair<int, Int>>> options(nf);
  for (int f = 0; f < nf; ++f) {
    options[f].push_back({-1, 1});
    auto h = highest_root_coefficients(rs, f);
    // Nodes exchanged by a symmetry of the extended diagram give W-conjugate
    // subsystems of the same type; keep the first node of each type.
    std::set<std::string> types;
    for (int i = 0; i < static_cast<int>(h.size()); ++i) {
      if (h[i] < 2) continue;
      if (primes_only && !is_prime(h[i])) continue;
      const int node = rs.factor_offset(f) + i;
      RootSet local = rs.empty_set();
      for (int a = 0; a < rs.num_roots(); ++a)
        if (rs.root(a).factor == f && rs.root(a).coeffs(node) % h[i] == 0) local.set(a);
      if (types.insert(subsystem_type(rs, local)).second) options[f].push_back({node, h[i]});
    }
  }
  std::vector<CoendoscopicClass> out;
  std::vector<std::size_t> pick(nf, 0);
  for (;;) {
    CoendoscopicClass c;
    Int den = 1;
    for (int f = 0; f < nf; ++f) {
      c.deleted.push_back(options[f][pick[f]].first);
      c.labels.push_back(options[f][pick[f]].second);
      den = lcm(den, c.labels.back());
    }
    c.rep_denominator = den;
    c.rep_numerator = IntVector::Zero(rs.rank());
    for (int f = 0; f < nf; ++f)
      if (c.deleted[f] >= 0) c.rep_numerator(c.deleted[f]) = den / c.labels[f];
    c.subsystem = rs.empty_set();
    for (int a = 0; a < rs.num_roots(); ++a)
      if (rs.root(a).coeffs.dot(c.rep_numerator) % den == 0) c.subsystem.set(a);
    c.type = subsystem_type(rs, c.subsystem);
    out.push_back(std::move(c));

    int f = nf - 1;
    while (f >= 0 && ++pick[f] == options[f].size()) pick[f--] = 0;
    if (f < 0) break;
  }
  return out;
}

}  // namespace

std::vector<CoendoscopicClass> borel_de_siebenthal(const RootSystem& rs) {
  auto all = node_combinations(rs, true);
  all.erase(all.begin());  // the whole group comes first
  return all;
}

std::vector<CoendoscopicClass> elliptic_classes(const RootSystem& rs) { return node_combinations(rs, false); }

std::vector<ClassifiedClass> classify(const GroupDatum& g, Int q) {
  check_field(g, q);
  auto vg = very_good_check(g);
  if (!vg.ok) {
    std::string msg = "characteristic " + std::to_string(g.p()) + " is not very good:";
    for (auto& r : vg.reasons) msg += " " + r + ";";
    throw BadCharacteristic(msg);
  }
  std::vector<ClassifiedClass> out;
  for (auto& c : elliptic_classes(g.roots())) {
    ClassifiedClass cc;
    cc.rational = c.rational_over(g, q);
    int changed = 0;
    for (int d : c.deleted) changed += d >= 0;
    cc.maximal = changed == 1 && c.prime_labels();
    cc.cls = std::move(c);
    out.push_back(std::move(cc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poset machinery

const char* route_name(Route r) { return r == Route::Enumerate ? "enumerate" : "classify"; }

std::vector<std::vector<Int>> mobius(const std::vector<RootSet>& sets) {
  const std::size_t n = sets.size();
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) le[a][b] = sets[b].subset_of(sets[a]);
  // a < c forces |sets[a]| > |sets[c]|, so visit a by increasing size.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sets[x].count() < sets[y].count(); });
  std::vector<std::vector<Int>> mu(n, std::vector<Int>(n, 0));
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a : order) {
      if (!le[a][b]) continue;
      if (a == b) {
        mu[a][b] = 1;
        continue;
      }
      Int sum = 0;
      for (std::size_t c = 0; c < n; ++c)
        if (c != a && le[a][c] && le[c][b]) sum += mu[c][b];
      mu[a][b] = -sum;
    }
  }
  return mu;
}

void StrataPoset::finalize() {
  const std::size_t n = strata.size();
  leq_.assign(n, std::vector<char>(n, 0));
  std::vector<RootSet> sets;
  for (auto& s : strata) sets.push_back(s.phi);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) leq_[a][b] = sets[b].subset_of(sets[a]);
  mobius_ = mobius(sets);
  minimal_ = -1;
  for (std::size_t a = 0; a < n; ++a) {
    bool below_all = true;
    for (std::size_t b = 0; b < n && below_all; ++b) below_all = leq_[a][b] != 0;
    if (below_all) minimal_ = static_cast<int>(a);
  }
}

int StrataPoset::find(const RootSet& phi) const {
  for (std::size_t i = 0; i < strata.size(); ++i)
    if (strata[i].phi == phi) return static_cast<int>(i);
  return -1;
}

std::vector<RootSet> weyl_orbit(const WeylGroup& w, const RootSet& set) {
  std::set<RootSet> seen;
  for (int e = 0; e < static_cast<int>(w.size()); ++e) seen.insert(w.apply(e, set));
  return {seen.begin(), seen.end()};
}

std::vector<int> set_stabilizer(const WeylGroup& w, const RootSet& set) {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(w.size()); ++e)
    if (w.apply(e, set) == set) out.push_back(e);
  return out;
}

namespace {

// Groups strata into W-orbits, orders them canonically and finalizes.
void organise(StrataPoset& poset, const WeylGroup& w) {
  std::map<RootSet, int> index;
  for (std::size_t i = 0; i < poset.strata.size(); ++i) index[poset.strata[i].phi] = static_cast<int>(i);

  struct Raw {
    RootSet rep;
    std::vector<std::pair<RootSet, int>> members;  // phi, transporter
  };
  std::vector<Raw> raws;
  std::vector<char> done(poset.strata.size(), 0);
  for (auto& [phi, idx] : index) {  // ascending bitset order: first unseen is the least of its orbit
    if (done[idx]) continue;
    Raw raw;
    raw.rep = phi;
    std::map<RootSet, int> members;
    for (int e = 0; e < static_cast<int>(w.size()); ++e) {
      RootSet img = w.apply(e, phi);
      if (members.count(img)) continue;
      auto it = index.find(img);
      if (it == index.end()) throw Error("internal: stratum set is not W-stable");
      members.emplace(img, e);
      done[it->second] = 1;
    }
    for (auto& m : members) raw.members.push_back(m);
    raws.push_back(std::move(raw));
  }
  std::stable_sort(raws.begin(), raws.end(), [&](const Raw& a, const Raw& b) {
    if (a.rep.count() != b.rep.count()) return a.rep.count() > b.rep.count();
    return a.rep < b.rep;
  });

  std::vector<Stratum> ordered;
  std::vector<StrataOrbit> orbits;
  for (auto& raw : raws) {
    StrataOrbit orbit;
    for (auto& [phi, transporter] : raw.members) {
      Stratum s = std::move(poset.strata[index[phi]]);
      s.orbit = static_cast<int>(orbits.size());
      s.transporter = transporter;
      if (phi == raw.rep) orbit.representative = static_cast<int>(ordered.size());
      orbit.members.push_back(static_cast<int>(ordered.size()));
      ordered.push_back(std::move(s));
    }
    orbit.type = ordered[orbit.representative].type;
    orbit.c_w = set_stabilizer(w, raw.rep);
    orbits.push_back(std::move(orbit));
  }
  poset.strata = std::move(ordered);
  poset.orbits = std::move(orbits);
  poset.finalize();
}

Stratum make_stratum(const GroupDatum& g, Int q, const RootSet& phi) {
  Stratum s;
  s.phi = phi;
  s.type = subsystem_type(g.roots(), phi);
  s.w_iota_order = subsystem_weyl_order(g.roots(), phi);
  s.z_points = subgroup_points(g, q, phi);
  return s;
}

}  // namespace

StrataPoset strata_poset(const GroupDatum& g, const WeylGroup& w, Int q, Route route, const Caps& caps) {
  check_field(g, q);
  const auto& rs = g.roots();
  StrataPoset poset;
  poset.q = q;
  poset.route = route;

  if (route == Route::Enumerate) {
    auto points = enumerate_points(g, q, caps.points);
    std::vector<RootSet> phis(points.size());
    parallel_for(points.size(), caps.threads, [&](std::size_t i) { phis[i] = centralizer_subsystem(g, points[i]); });
    std::map<RootSet, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < points.size(); ++i) groups[phis[i]].push_back(i);
    for (auto& [phi, members] : groups) {
      if (subsystem_rank(rs, phi) != rs.rank()) continue;
      Stratum s = make_stratum(g, q, phi);
      s.s_count = static_cast<Int>(members.size());
      for (auto i : members) s.s_points.push_back(points[i]);
      poset.strata.push_back(std::move(s));
    }
  } else {
    if (!table_car_holds(rs, q))
      poset.warnings.push_back("q-1 = " + std::to_string(q - 1) +
                               " misses the rationality divisibility table; strata recovered by inversion over all "
                               "candidate classes");
    std::set<RootSet> candidates;
    for (auto& c : elliptic_classes(rs))
      for (auto& phi : weyl_orbit(w, c.subsystem)) candidates.insert(phi);
    std::vector<RootSet> sets(candidates.begin(), candidates.end());
    std::vector<Stratum> cand(sets.size());
    parallel_for(sets.size(), caps.threads, [&](std::size_t i) { cand[i] = make_stratum(g, q, sets[i]); });
    auto mu = mobius(sets);
    for (std::size_t b = 0; b < sets.size(); ++b) {
      Int s = 0;
      for (std::size_t a = 0; a < sets.size(); ++a)
        if (mu[a][b] != 0) s += mu[a][b] * cand[a].z_points.order();
      if (s < 0) throw Error("internal: negative stratum size for " + cand[b].type);
      cand[b].s_count = s;
    }
    for (auto& c : cand)
      if (c.s_count > 0) poset.strata.push_back(std::move(c));
  }
  organise(poset, w);
  return poset;
}

Verdict reeder_partition_check(const GroupDatum& g, const StrataPoset& poset) {
  Verdict v;
  if (poset.route != Route::Enumerate) {
    v.fail("partition check needs explicit stratum points (enumerate route)");
    return v;
  }
  for (std::size_t b = 0; b < poset.size(); ++b) {
    const auto& target = poset.strata[b];
    Int total = 0;
    for (std::size_t a = 0; a < poset.size(); ++a) {
      if (!poset.leq(static_cast<int>(a), static_cast<int>(b))) continue;
      total += poset.strata[a].s_count;
      for (const auto& s : poset.strata[a].s_points)
        if (!target.phi.subset_of(centralizer_subsystem(g, s)))
          v.fail("point of stratum " + poset.strata[a].type + " outside Z of " + target.type);
    }
    if (total != target.z_points.order())
      v.fail("stratum " + target.type + " [" + target.phi.hex() + "]: |Z| = " +
             std::to_string(target.z_points.order()) + " but strata below sum to " + std::to_string(total));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Divisibility tables

Int table_car(const SimpleType& t) {
  switch (t.family) {
    case Family::A: return 1;
    case Family::B: return 4;
    case Family::C: return t.rank % 2 == 0 ? 4 : 8;
    case Family::D: return 4;
    case Family::E: return t.rank == 6 ? 18 : t.rank == 7 ? 12 : 30;
    case Family::F: return 6;
    case Family::G: return 6;
  }
  return 1;
}

Int table_car2(const SimpleType& t) {
  switch (t.family) {
    case Family::A: return t.rank + 1;
    case Family::B: return 4;
    case Family::C: return 8;
    case Family::D: return 8;
    case Family::E: return t.rank == 6 ? 18 : t.rank == 7 ? 24 : 90;
    case Family::F: return 6;
    case Family::G: return 6;
  }
  return 1;
}

bool table_car_holds(const RootSystem& rs, Int q) {
  for (auto& t : rs.factors())
    if ((q - 1) % table_car(t) != 0) return false;
  return true;
}

bool table_car2_holds(const RootSystem& rs, Int q) {
  for (auto& t : rs.factors())
    if ((q - 1) % table_car2(t) != 0) return false;
  return true;
}

std::pair<TableVerdict, TableVerdict> rationality_tables_check(const SimpleType& t, Int q) {
  auto pp = prime_power(q);
  if (!pp) throw BadCharacteristic("q = " + std::to_string(q) + " is not a prime power");
  auto rs = build_root_system({t});
  auto sc = GroupDatum::simply_connected(rs, pp->first);
  auto ad = GroupDatum::adjoint(rs, pp->first);
  auto classes = borel_de_siebenthal(rs);

  TableVerdict first, second;
  first.applicable = (q - 1) % table_car(t) == 0;
  if (first.applicable) {
    for (auto& c : classes) {
      const bool ok = c.rational_over(sc, q);
      first.details.push_back(c.label() + " " + c.type + (ok ? " rational" : " NOT rational"));
      if (!ok) first.ok = false;
    }
  }
  second.applicable = (q - 1) % table_car2(t) == 0;
  if (second.applicable) {
    std::vector<std::pair<std::string, RootSet>> groups{{"G", rs.all()}};
    for (auto& c : classes) groups.push_back({c.label() + " " + c.type, c.subsystem});
    for (const auto* g : {&sc, &ad}) {
      for (auto& [name, sub] : groups) {
        const Int geo = geometric_center_order(*g, sub);
        const Int fq = subgroup_points(*g, q, sub).order();
        second.details.push_back(std::string(g == &sc ? "sc " : "ad ") + name + ": " + std::to_string(fq) + "/" +
                                 std::to_string(geo));
        if (geo != fq) second.ok = false;
      }
    }
  }
  return {first, second};
}

}  // namespace coendo
