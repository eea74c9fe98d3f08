#include "coendo/oracle.hpp"

#include "coendo/error.hpp"
#include "coendo/torus.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace coendo {

namespace {

struct BruteStrata {
  std::map<RootSet, Int> counts;
  std::map<RootSet, IntVector> witness;
};

// Walks all residue vectors and records Phi_s by direct pairing.
BruteStrata brute_centralizers(const GroupDatum& g, Int q, std::size_t cap) {
  const auto& rs = g.roots();
  const int r = g.rank();
  const Int n = q - 1;
  std::uint64_t total = 1;
  for (int i = 0; i < r; ++i) {
    total *= static_cast<std::uint64_t>(n);
    if (total > cap) throw CapExceeded("(q-1)^r exceeds the point cap " + std::to_string(cap), 0);
  }
  std::vector<int> pos;
  for (int a = 0; a < rs.num_roots(); ++a)
    if (rs.positive(a)) pos.push_back(a);

  BruteStrata out;
  IntVector v = IntVector::Zero(r);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    RootSet phi = rs.empty_set();
    for (int a : pos) {
      if (mod(g.root_character(a).dot(v), n) == 0) {
        phi.set(a);
        phi.set(rs.negative(a));
      }
    }
    auto [it, fresh] = out.counts.emplace(phi, 0);
    ++it->second;
    if (fresh) out.witness.emplace(phi, v);
    for (int i = r - 1; i >= 0; --i) {
      if (++v(i) < n) break;
      v(i) = 0;
    }
  }
  return out;
}

int root_rank(const RootSystem& rs, const RootSet& set) {
  auto members = set.members();
  if (members.empty()) return 0;
  IntMatrix m(rs.rank(), static_cast<Eigen::Index>(members.size()));
  for (std::size_t k = 0; k < members.size(); ++k) m.col(k) = rs.root(members[k]).coeffs;
  return rank(m);
}

bool strict_subset(const RootSet& a, const RootSet& b) { return a.subset_of(b) && !(a == b); }

std::string instance_name(const GroupDatum& g, Int q) {
  return factors_name(g.roots().factors()) + "/" + g.cochar().name + " q=" + std::to_string(q);
}

std::string join(const std::set<std::string>& items) {
  std::string s = "{";
  for (auto& x : items) s += (s.size() > 1 ? ", " : "") + x;
  return s + "}";
}

Int checked_pow(Int q, int n) {
  Int out = 1;
  for (int i = 0; i < n; ++i) out = checked_mul(out, q);
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------

OracleVerdict brute_strata_check(const GroupDatum& g, const WeylGroup& w, Int q, const Caps& caps) {
  OracleVerdict v;
  v.check = "brute_strata";
  v.instance = instance_name(g, q);
  check_field(g, q);
  if (auto vg = very_good_check(g); !vg.ok) {
    v.applicable = false;
    v.notes = vg.reasons;
    return v;
  }
  const auto& rs = g.roots();
  const Int n = q - 1;
  auto brute = brute_centralizers(g, q, caps.points);

  std::set<RootSet> elliptic;
  for (auto& [phi, count] : brute.counts)
    if (root_rank(rs, phi) == rs.rank()) elliptic.insert(phi);

  auto classes = elliptic_classes(rs);
  std::map<RootSet, int> translate;
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int e = 0; e < static_cast<int>(w.size()); ++e) translate.emplace(w.apply(e, classes[c].subsystem), c);

  // (a)
  for (auto& phi : elliptic)
    if (!translate.count(phi))
      v.fail("elliptic centralizer " + subsystem_type(rs, phi) + " [" + phi.hex() + "] at residues " +
             to_string(brute.witness[phi]) + " is not a node-deletion subsystem");
  for (auto& c : classes) {
    if (!c.rational_over(g, q)) continue;
    RootSet phi = rs.empty_set();
    for (int a = 0; a < rs.num_roots(); ++a)
      if (mod(rs.root(a).coeffs.dot(c.rep_numerator) * (n / c.rep_denominator), n) == 0) phi.set(a);
    if (!(phi == c.subsystem)) v.fail("class " + c.label() + " has a representative with centralizer " + phi.hex());
    if (!brute.counts.count(phi)) v.fail("rational class " + c.label() + " " + c.type + " missing from T(F_q)");
  }

  // (b)
  StrataPoset routes[2] = {strata_poset(g, w, q, Route::Enumerate, caps), strata_poset(g, w, q, Route::Classify, caps)};
  for (const auto& poset : routes) {
    const std::string route = route_name(poset.route);
    std::set<RootSet> seen;
    for (const auto& s : poset.strata) {
      seen.insert(s.phi);
      auto it = brute.counts.find(s.phi);
      const Int count = it == brute.counts.end() ? 0 : it->second;
      if (count != s.s_count)
        v.fail(route + ": |S| of " + s.type + " [" + s.phi.hex() + "] is " + std::to_string(s.s_count) +
               ", enumeration gives " + std::to_string(count));
      Int z = 0;
      for (auto& [phi, c] : brute.counts)
        if (s.phi.subset_of(phi)) z += c;
      if (z != s.z_points.order())
        v.fail(route + ": |Z(F_q)| of " + s.type + " [" + s.phi.hex() + "] is " +
               std::to_string(s.z_points.order()) + ", enumeration gives " + std::to_string(z));
    }
    if (seen != elliptic) v.fail(route + ": strata differ from the enumerated elliptic centralizers");
  }
  auto reeder = reeder_partition_check(g, routes[0]);
  if (!reeder.ok) v.fail("partition: " + reeder.failures.front());

  // (c)
  std::vector<RootSet> proper;
  for (auto& [phi, c] : translate)
    if (!classes[c].whole_group()) proper.push_back(phi);
  for (auto& phi : elliptic) {
    if (phi == rs.all()) continue;
    auto it = translate.find(phi);
    if (it == translate.end()) continue;
    const auto& cls = classes[it->second];
    bool maximal = true;
    for (auto& psi : proper)
      if (strict_subset(phi, psi)) maximal = false;
    int changed = 0;
    for (int d : cls.deleted) changed += d >= 0;
    const bool expected = changed == 1 && cls.prime_labels();
    if (maximal != expected)
      v.fail("centralizer " + cls.type + " (" + cls.label() + ") is " + (maximal ? "" : "not ") +
             "maximal, label rule says " + (expected ? "maximal" : "not maximal"));
  }

  std::map<std::string, Int> by_type;
  for (auto& phi : elliptic) by_type[subsystem_type(rs, phi)] += 1;
  std::string note = "elliptic centralizers:";
  for (auto& [t, k] : by_type) note += " " + t + " x" + std::to_string(k);
  v.notes.push_back(note);
  return v;
}

Int bds_field(const SimpleType& t) {
  auto rs = build_root_system({t});
  Int l = table_car(t);
  for (Int h : highest_root_coefficients(rs, 0)) l = lcm(l, h);
  for (Int q = 2;; ++q) {
    if ((q - 1) % l != 0) continue;
    auto pp = prime_power(q);
    if (pp && very_good_check({t}, pp->first).ok) return q;
  }
}

OracleVerdict bds_cross_check(const SimpleType& t, const Caps& caps) {
  const Int q = bds_field(t);
  auto rs = build_root_system({t});
  auto g = GroupDatum::adjoint(rs, prime_power(q)->first);
  OracleVerdict v;
  v.check = "bds_cross";
  v.instance = instance_name(g, q);
  auto brute = brute_centralizers(g, q, caps.points);

  std::vector<RootSet> proper;
  for (auto& [phi, c] : brute.counts)
    if (!(phi == rs.all()) && root_rank(rs, phi) == rs.rank()) proper.push_back(phi);
  std::set<std::string> maximal_types, all_types;
  for (auto& phi : proper) {
    all_types.insert(subsystem_type(rs, phi));
    bool maximal = true;
    for (auto& psi : proper)
      if (strict_subset(phi, psi)) maximal = false;
    if (maximal) maximal_types.insert(subsystem_type(rs, phi));
  }
  std::set<std::string> prime_nodes, all_nodes;
  for (auto& c : borel_de_siebenthal(rs)) prime_nodes.insert(c.type);
  for (auto& c : elliptic_classes(rs))
    if (!c.whole_group()) all_nodes.insert(c.type);

  if (prime_nodes != maximal_types)
    v.fail("prime-label nodes give " + join(prime_nodes) + ", maximal enumerated centralizers " + join(maximal_types));
  if (all_nodes != all_types)
    v.fail("node deletions give " + join(all_nodes) + ", enumerated elliptic centralizers " + join(all_types));
  v.notes.push_back("maximal " + join(maximal_types) + "; all " + join(all_types));
  return v;
}

// ---------------------------------------------------------------------------

std::vector<Int> cyclotomic_polynomial(Int n) {
  if (n < 1) throw Error("cyclotomic polynomial of non-positive index");
  // Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e, for every divisor d of n in turn.
  std::map<Int, std::vector<Int>> phi;
  for (Int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    std::vector<Int> p(d + 1, 0);
    p[0] = -1;
    p[d] = 1;
    for (auto& [e, div] : phi) {
      if (d % e != 0) continue;
      const std::size_t dd = div.size() - 1;
      std::vector<Int> quot(p.size() - dd, 0);
      for (std::size_t i = p.size() - 1; i >= dd; --i) {
        const Int c = p[i];
        quot[i - dd] = c;
        if (c != 0)
          for (std::size_t j = 0; j <= dd; ++j) p[i - dd + j] -= c * div[j];
        if (i == dd) break;
      }
      p = quot;
    }
    phi[d] = p;
  }
  return phi[n];
}

std::optional<Int> cyclotomic_constant(const std::vector<Int>& counts, Int n) {
  const auto phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1;
  std::vector<Int> rem(counts);
  for (std::size_t i = rem.size(); i-- > deg;) {
    const Int c = rem[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) rem[i - deg + j] -= c * phi[j];
  }
  for (std::size_t i = 1; i < std::min(deg, rem.size()); ++i)
    if (rem[i] != 0) return std::nullopt;
  return rem.empty() ? 0 : rem[0];
}

std::optional<Int> direct_character_sum(const IntVector& lambda, const std::vector<TorusPoint>& points) {
  if (points.empty()) return 0;
  const Int n = points.front().modulus();
  std::vector<Int> counts(n, 0);
  for (auto& p : points) ++counts[mod(lambda.dot(p.residues), n)];
  return cyclotomic_constant(counts, n);
}

OracleVerdict cyclotomic_sum_check(const IntVector& lambda, const Stratum& stratum, Int expected) {
  OracleVerdict v;
  v.check = "cyclotomic_sum";
  v.instance = stratum.type + " [" + stratum.phi.hex() + "] lambda=" + to_string(lambda);
  if (static_cast<Int>(stratum.s_points.size()) != stratum.s_count) {
    v.applicable = false;
    v.notes.push_back("stratum points not enumerated");
    return v;
  }
  auto direct = direct_character_sum(lambda, stratum.s_points);
  if (!direct)
    v.fail("direct sum does not reduce to an integer");
  else if (*direct != expected)
    v.fail("direct sum " + std::to_string(*direct) + " != " + std::to_string(expected));
  return v;
}

std::optional<Int> direct_n_coefficient(const GroupDatum& g, const WeylGroup& w, const Stratum& stratum,
                                        const GammaTuple& gamma, const CharacterSpec& spec, Convention convention) {
  if (static_cast<Int>(stratum.s_points.size()) != stratum.s_count)
    throw Error("direct coefficient needs the points of the stratum");
  if (stratum.s_points.empty()) return 0;
  const Int n = stratum.s_points.front().modulus();
  std::map<int, IntMatrix> mats;
  auto residues = [&](int e, const IntVector& v) {
    auto it = mats.find(e);
    if (it == mats.end()) it = mats.emplace(e, g.cochar_action(w[e].matrix)).first;
    IntVector out = it->second * v;
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = mod(out(i), n);
    return out;
  };
  auto fin = spec.finite();
  const IntVector& lam_inf = spec.infinity().lambda;
  // exponent of theta_gamma(s) theta_inf(o^-1 s o) under the chosen signs
  auto exponent = [&](const IntVector& v, int o, bool inf_at_s) {
    Int e = 0;
    for (std::size_t i = 0; i < fin.size(); ++i) e -= fin[i]->lambda.dot(residues(w.inverse(gamma[i]), v));
    const Int ei = lam_inf.dot(residues(w.inverse(o), v));
    return mod(inf_at_s ? e + ei : e - ei, n);
  };

  std::vector<int> c_w;
  for (int e = 0; e < static_cast<int>(w.size()); ++e)
    if (w.apply(e, stratum.phi) == stratum.phi) c_w.push_back(e);

  std::vector<Int> counts(n, 0);
  if (convention == Convention::Resultat) {
    for (int c : c_w)
      for (auto& s : stratum.s_points) ++counts[exponent(residues(w.inverse(c), s.residues), 0, false)];
    auto total = cyclotomic_constant(counts, n);
    if (!total || *total % static_cast<Int>(c_w.size()) != 0) return std::nullopt;
    return *total / static_cast<Int>(c_w.size());
  }
  std::vector<char> covered(w.size(), 0);
  for (int o = 0; o < static_cast<int>(w.size()); ++o) {
    if (covered[o]) continue;
    for (int c : c_w) covered[w.multiply(c, o)] = 1;
    for (auto& s : stratum.s_points) ++counts[exponent(s.residues, o, convention == Convention::Literal537)];
  }
  return cyclotomic_constant(counts, n);
}

OracleVerdict coefficient_check(const GroupDatum& g, const WeylGroup& w, const StrataPoset& enumerated,
                                const NTable& table, const CharacterSpec& spec) {
  OracleVerdict v;
  v.check = "coefficients";
  v.instance = instance_name(g, table.q) + " " + convention_name(table.convention);
  for (const auto& row : table.rows) {
    const Stratum* st = nullptr;
    for (auto& s : enumerated.strata)
      if (s.phi.hex() == row.stratum_key) st = &s;
    if (!st) {
      v.fail("row " + row.key() + ": stratum missing from the enumerated poset");
      continue;
    }
    auto direct = direct_n_coefficient(g, w, *st, row.gamma, spec, table.convention);
    if (!direct)
      v.fail("row " + row.key() + ": direct sum is not an integer");
    else if (*direct != row.n)
      v.fail("row " + row.key() + ": n = " + std::to_string(row.n) + ", direct sum " + std::to_string(*direct));
  }
  v.notes.push_back(std::to_string(table.rows.size()) + " rows");
  return v;
}

// ---------------------------------------------------------------------------

std::vector<std::string> field_extension_obstructions(const GroupDatum& g, Int q) {
  std::vector<std::string> out;
  const auto& rs = g.roots();
  for (auto& t : rs.factors())
    if ((q - 1) % table_car2(t) != 0)
      out.push_back(t.name() + ": q-1 = " + std::to_string(q - 1) + " is not divisible by " +
                    std::to_string(table_car2(t)));
  for (auto& c : elliptic_classes(rs)) {
    if (!c.rational_over(g, q)) out.push_back("class " + c.label() + " " + c.type + " is not rational");
    const Int fq = subgroup_points(g, q, c.subsystem).order();
    const Int geo = geometric_center_order(g, c.subsystem);
    if (fq != geo)
      out.push_back("class " + c.label() + " " + c.type + ": |Z(F_q)| = " + std::to_string(fq) + " < " +
                    std::to_string(geo));
  }
  return out;
}

OracleVerdict field_extension_check(const GroupDatum& g, const WeylGroup& w, const CharacterSpec& spec, Int q, int n,
                                    Convention convention, const Caps& caps) {
  OracleVerdict v;
  v.check = "field_extension";
  const Int big = checked_pow(q, n);
  v.instance = instance_name(g, q) + " -> q=" + std::to_string(big);
  auto obstructions = field_extension_obstructions(g, q);
  if (!obstructions.empty()) {
    v.applicable = false;
    v.notes = obstructions;
    return v;
  }
  auto small_poset = strata_poset(g, w, q, Route::Classify, caps);
  auto big_poset = strata_poset(g, w, big, Route::Classify, caps);
  auto a = n_table(g, w, small_poset, spec, convention, caps);
  auto b = n_table(g, w, big_poset, spec, convention, caps);
  if (a.rows.size() != b.rows.size())
    v.fail("row counts " + std::to_string(a.rows.size()) + " vs " + std::to_string(b.rows.size()));
  for (std::size_t i = 0; i < std::min(a.rows.size(), b.rows.size()); ++i) {
    if (a.rows[i].key() != b.rows[i].key()) {
      v.fail("row " + std::to_string(i) + " key " + a.rows[i].key() + " vs " + b.rows[i].key());
      break;
    }
    if (a.rows[i].n != b.rows[i].n) {
      v.fail("row " + a.rows[i].key() + ": n = " + std::to_string(a.rows[i].n) + " vs " + std::to_string(b.rows[i].n));
      break;
    }
  }
  // |S_iota| stability by enumeration when the larger torus is small enough
  std::uint64_t points = 1;
  for (int i = 0; i < g.rank() && points <= caps.points; ++i) points *= static_cast<std::uint64_t>(big - 1);
  if (points <= caps.points) {
    auto brute = brute_centralizers(g, big, caps.points);
    for (auto& s : small_poset.strata) {
      auto it = brute.counts.find(s.phi);
      const Int count = it == brute.counts.end() ? 0 : it->second;
      if (count != s.s_count)
        v.fail("|S| of " + s.type + " [" + s.phi.hex() + "] is " + std::to_string(s.s_count) + " at q, " +
               std::to_string(count) + " by enumeration at q^n");
    }
    v.notes.push_back("strata sizes enumerated at q^n");
  }
  v.notes.push_back(std::to_string(a.rows.size()) + " rows");
  return v;
}

// ---------------------------------------------------------------------------

std::string ManifestEntry::describe() const {
  std::string s = check + " " + group;
  if (check != "bds") s += "/" + lattice + " q=" + std::to_string(q);
  if (check == "field-extension") s += " n=" + std::to_string(n);
  if (check == "coefficients") s += " samples=" + std::to_string(samples);
  return s;
}

std::vector<ManifestEntry> default_manifest() {
  std::vector<ManifestEntry> out;
  const std::vector<std::string> types = {"A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"};
  for (auto& t : types) {
    const auto st = SimpleType::parse(t);
    for (Int q : {5, 7, 9, 13, 25}) {
      const Int p = prime_power(q)->first;
      if (!very_good_check({st}, p).ok) continue;
      for (std::string lat : {"sc", "ad"}) {
        if (lat == "ad" && (st.family == Family::G || st.family == Family::F)) continue;
        out.push_back({"strata", t, lat, q, 0, 0});
      }
    }
  }
  for (auto& t : types) out.push_back({"bds", t, "ad", 0, 0, 0});
  for (auto& [t, lat] : std::vector<std::pair<std::string, std::string>>{{"A1", "sc"}, {"A2", "sc"}, {"B2", "sc"}, {"G2", "ad"}})
    for (Int q : {5, 7, 13}) out.push_back({"coefficients", t, lat, q, 0, 25});
  const std::vector<ManifestEntry> ext = {
      {"field-extension", "A1", "sc", 5, 2, 0},  {"field-extension", "A1", "sc", 5, 3, 0},
      {"field-extension", "A2", "sc", 7, 2, 0},  {"field-extension", "B2", "sc", 5, 2, 0},
      {"field-extension", "B2", "ad", 9, 2, 0},  {"field-extension", "B3", "ad", 9, 2, 0},
      {"field-extension", "C3", "sc", 9, 2, 0},  {"field-extension", "G2", "ad", 7, 2, 0},
      {"field-extension", "G2", "ad", 13, 3, 0}, {"field-extension", "F4", "sc", 13, 2, 0},
  };
  out.insert(out.end(), ext.begin(), ext.end());
  return out;
}

CharacterSpec random_spec(const GroupDatum& g, Int q, int finite, int bound, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Int> dist(-bound, bound);
  CharacterSpec spec;
  spec.q = q;
  for (int i = 0; i <= finite; ++i) {
    PlaceData p;
    p.tag = i == 0 ? "inf" : "v" + std::to_string(i);
    p.lambda = IntVector(g.rank());
    for (Eigen::Index k = 0; k < p.lambda.size(); ++k) p.lambda(k) = dist(rng);
    spec.places.push_back(std::move(p));
  }
  return spec;
}

namespace {

OracleVerdict run_entry(const ManifestEntry& e, const Caps& caps) {
  if (e.check == "bds") return bds_cross_check(SimpleType::parse(e.group), caps);
  auto pp = prime_power(e.q);
  if (!pp) throw ConfigError("q = " + std::to_string(e.q) + " is not a prime power");
  auto g = make_group(e.group, e.lattice, pp->first);
  auto w = WeylGroup::generate(g.roots(), caps.weyl);
  if (e.check == "strata") return brute_strata_check(g, w, e.q, caps);
  if (e.check == "field-extension") {
    auto spec = random_spec(g, e.q, 2, 3, fnv1a(e.describe()));
    return field_extension_check(g, w, spec, e.q, e.n, Convention::UniformInverse, caps);
  }
  if (e.check == "coefficients") {
    OracleVerdict v;
    v.check = "coefficients";
    v.instance = instance_name(g, e.q);
    auto poset = strata_poset(g, w, e.q, Route::Enumerate, caps);
    const Convention conventions[] = {Convention::UniformInverse, Convention::Literal537, Convention::Resultat};
    std::mt19937_64 rng(fnv1a(e.describe()));
    for (int i = 0; i < e.samples && v.pass; ++i) {
      auto spec = random_spec(g, e.q, (i / 3) % 3, 4, rng());
      auto table = n_table(g, w, poset, spec, conventions[i % 3], caps);
      auto sub = coefficient_check(g, w, poset, table, spec);
      if (!sub.pass) v.fail("sample " + std::to_string(i) + ": " + sub.witness);
      for (std::size_t s = 0; s < poset.size() && v.pass; ++s) {
        const IntVector lambda = random_spec(g, e.q, 0, 6, rng()).places[0].lambda;
        auto c = cyclotomic_sum_check(lambda, poset.strata[s], stratum_sum(lambda, static_cast<int>(s), poset));
        if (!c.pass) v.fail("sample " + std::to_string(i) + ": " + c.instance + ": " + c.witness);
      }
    }
    v.notes.push_back(std::to_string(e.samples) + " random specs");
    return v;
  }
  throw ConfigError("unknown check '" + e.check + "'");
}

}  // namespace

std::vector<OracleVerdict> run_manifest(const std::vector<ManifestEntry>& entries, const Caps& caps) {
  std::vector<OracleVerdict> out(entries.size());
  Caps inner = caps;
  inner.threads = 1;
  parallel_for(entries.size(), caps.threads, [&](std::size_t i) {
    try {
      out[i] = run_entry(entries[i], inner);
    } catch (const CapExceeded& ex) {
      out[i].applicable = false;
      out[i].notes.push_back(std::string("cap exceeded: ") + ex.what());
    } catch (const std::exception& ex) {
      out[i].fail(std::string("error: ") + ex.what());
    }
    if (out[i].check.empty()) out[i].check = entries[i].check;
    out[i].instance = entries[i].describe() + (out[i].instance.empty() ? "" : " (" + out[i].instance + ")");
  });
  return out;
}

}  // namespace coendo
