#include "coendo/coefficients.hpp"

#include "coendo/error.hpp"
#include "coendo/torus.hpp"

#include <algorithm>
#include <set>

namespace coendo {

const char* convention_name(Convention c) {
  switch (c) {
    case Convention::UniformInverse: return "uniform-inverse";
    case Convention::Literal537: return "literal-537";
    case Convention::Resultat: return "resultat";
  }
  return "?";
}

Convention parse_convention(const std::string& text) {
  if (text == "uniform-inverse") return Convention::UniformInverse;
  if (text == "literal-537") return Convention::Literal537;
  if (text == "resultat") return Convention::Resultat;
  throw ConfigError("unknown convention '" + text + "' (expected uniform-inverse, literal-537 or resultat)");
}

void CharacterSpec::validate(const GroupDatum& g) const {
  if (places.empty()) throw ConfigError("character spec: no places");
  std::set<std::string> tags;
  int inf = 0;
  for (auto& p : places) {
    if (p.tag.empty()) throw ConfigError("character spec: empty place tag");
    if (!tags.insert(p.tag).second) throw ConfigError("character spec: duplicate place tag '" + p.tag + "'");
    if (p.infinity()) ++inf;
    if (p.lambda.size() != g.rank())
      throw ConfigError("character spec: place '" + p.tag + "' has lambda of length " +
                        std::to_string(p.lambda.size()) + ", expected rank " + std::to_string(g.rank()));
  }
  if (inf != 1) throw ConfigError("character spec: exactly one place must be tagged 'inf'");
}

const PlaceData& CharacterSpec::infinity() const {
  for (auto& p : places)
    if (p.infinity()) return p;
  throw ConfigError("character spec: no 'inf' place");
}

std::vector<const PlaceData*> CharacterSpec::finite() const {
  std::vector<const PlaceData*> out;
  for (auto& p : places)
    if (!p.infinity()) out.push_back(&p);
  return out;
}

bool central_product_test(const CharacterSpec& spec, const GroupDatum& g, Int q) {
  IntVector total = IntVector::Zero(g.rank());
  for (auto& p : spec.places) total += p.lambda;
  return group_character_sum(total, subgroup_points(g, q, g.roots().all())) != 0;
}

IntVector weyl_on_character(const GroupDatum& g, const WeylGroup& w, int element, const IntVector& lambda) {
  return g.cochar_action(w[w.inverse(element)].matrix).transpose() * lambda;
}

IntVector total_character(const GroupDatum& g, const WeylGroup& w, const CharacterSpec& spec,
                          const GammaTuple& gamma, int outer, Convention convention) {
  auto fin = spec.finite();
  if (gamma.size() != fin.size())
    throw Error("gamma tuple has " + std::to_string(gamma.size()) + " entries for " + std::to_string(fin.size()) +
                " finite places");
  IntVector out = IntVector::Zero(g.rank());
  for (std::size_t v = 0; v < fin.size(); ++v) out -= weyl_on_character(g, w, gamma[v], fin[v]->lambda);
  const IntVector inf = weyl_on_character(g, w, outer, spec.infinity().lambda);
  if (convention == Convention::Literal537)
    out += inf;
  else
    out -= inf;
  return out;
}

Int group_character_sum(const IntVector& lambda, const FiniteAbelianGroup& a) {
  const Int n = a.modulus();
  for (auto& gen : a.generators()) {
    Int pairing = 0;
    for (Eigen::Index i = 0; i < gen.size(); ++i) pairing = checked_add(pairing, checked_mul(lambda(i), gen(i)));
    if (n == 0 ? pairing != 0 : mod(pairing, n) != 0) return 0;
  }
  return a.order();
}

Int stratum_sum(const IntVector& lambda, int stratum, const StrataPoset& poset) {
  Int total = 0;
  for (int a = 0; a < static_cast<int>(poset.size()); ++a) {
    const Int m = poset.mu(a, stratum);
    if (m == 0) continue;
    total = checked_add(total, checked_mul(m, group_character_sum(lambda, poset.strata[a].z_points)));
  }
  return total;
}

CosetSpace right_cosets(const WeylGroup& w, const std::vector<int>& subgroup) {
  CosetSpace cs;
  cs.coset_of.assign(w.size(), -1);
  for (int e = 0; e < static_cast<int>(w.size()); ++e) {
    if (cs.coset_of[e] >= 0) continue;
    const int id = static_cast<int>(cs.reps.size());
    cs.reps.push_back(e);
    for (int h : subgroup) cs.coset_of[w.multiply(h, e)] = id;
  }
  return cs;
}

StratumCosets stratum_cosets(const WeylGroup& w, const StrataPoset& poset, int stratum) {
  StratumCosets out;
  out.stratum = stratum;
  const auto& s = poset.strata[stratum];
  out.w_iota = w.reflection_subgroup(s.phi);
  const auto& orbit = poset.orbits[s.orbit];
  out.c_w = orbit.representative == stratum ? orbit.c_w : set_stabilizer(w, s.phi);
  out.gamma = right_cosets(w, out.w_iota);
  out.outer = right_cosets(w, out.c_w);
  std::set<int> seen;
  for (int c : out.c_w)
    if (seen.insert(out.gamma.coset_of[c]).second) out.inner.push_back(c);
  return out;
}

Int n_coefficient(const GroupDatum& g, const WeylGroup& w, const StrataPoset& poset, const StratumCosets& cosets,
                  const GammaTuple& gamma, const CharacterSpec& spec, Convention convention) {
  Int total = 0;
  if (convention == Convention::Resultat) {
    const IntVector base = total_character(g, w, spec, gamma, 0, Convention::UniformInverse);
    for (int c : cosets.inner)
      total = checked_add(total, stratum_sum(weyl_on_character(g, w, c, base), cosets.stratum, poset));
    const Int k = static_cast<Int>(cosets.inner.size());
    if (total % k != 0) throw Error("internal: orbit-averaged coefficient is not an integer");
    return total / k;
  }
  for (int o : cosets.outer.reps)
    total = checked_add(total, stratum_sum(total_character(g, w, spec, gamma, o, convention), cosets.stratum, poset));
  return total;
}

std::vector<GammaOrbit> orbit_decomposition(const WeylGroup& w, const StratumCosets& cosets, int num_finite,
                                            std::size_t cap) {
  const std::uint64_t m = cosets.gamma.size();
  std::uint64_t total = 1;
  for (int i = 0; i < num_finite; ++i) {
    if (total > cap / m + 1) throw CapExceeded("too many gamma tuples", 0);
    total *= m;
  }
  if (total > cap)
    throw CapExceeded("|W_iota\\W|^" + std::to_string(num_finite) + " = " + std::to_string(total) +
                          " exceeds the tuple cap " + std::to_string(cap),
                      total);

  // act[c][j]: coset of c^-1 rep_j c
  std::vector<std::vector<int>> act;
  for (int c : cosets.c_w) {
    std::vector<int> row(m);
    const int ci = w.inverse(c);
    for (std::uint64_t j = 0; j < m; ++j) row[j] = cosets.gamma.coset_of[w.multiply(w.multiply(ci, cosets.gamma.reps[j]), c)];
    act.push_back(std::move(row));
  }

  std::vector<GammaOrbit> out;
  std::vector<char> seen(total, 0);
  std::vector<std::uint64_t> digits(num_finite);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (seen[idx]) continue;
    std::uint64_t rest = idx;
    for (int i = num_finite - 1; i >= 0; --i) {
      digits[i] = rest % m;
      rest /= m;
    }
    GammaOrbit orbit;
    for (auto& row : act) {
      std::uint64_t img = 0;
      for (int i = 0; i < num_finite; ++i) img = img * m + row[digits[i]];
      if (!seen[img]) {
        seen[img] = 1;
        ++orbit.size;
      }
    }
    for (int i = 0; i < num_finite; ++i) orbit.representative.push_back(cosets.gamma.reps[digits[i]]);
    out.push_back(std::move(orbit));
  }
  return out;
}

std::string NRow::key() const {
  std::string k = stratum_key + "|";
  for (std::size_t i = 0; i < gamma_words.size(); ++i) k += (i ? "," : "") + gamma_words[i];
  return k;
}

BigInt NTable::abs_sum() const {
  BigInt s = 0;
  for (auto& r : rows) s += r.n < 0 ? -r.n : r.n;
  return s;
}

NTable n_table(const GroupDatum& g, const WeylGroup& w, const StrataPoset& poset, const CharacterSpec& spec,
               Convention convention, const Caps& caps) {
  spec.validate(g);
  NTable table;
  table.q = poset.q;
  table.convention = convention;
  const int k = spec.num_finite();
  for (const auto& orbit : poset.orbits) {
    const int st = orbit.representative;
    const auto& stratum = poset.strata[st];
    auto cosets = stratum_cosets(w, poset, st);
    auto gamma_orbits = orbit_decomposition(w, cosets, k, caps.tuples);

    NStratumInfo info;
    info.stratum = st;
    info.type = stratum.type;
    info.w_iota_order = cosets.w_iota.size();
    info.c_w_order = cosets.c_w.size();
    info.num_cosets = cosets.gamma.size();
    info.num_orbits = gamma_orbits.size();
    info.s_count = stratum.s_count;
    table.strata.push_back(info);

    std::vector<NRow> rows(gamma_orbits.size());
    parallel_for(rows.size(), caps.threads, [&](std::size_t i) {
      NRow& row = rows[i];
      row.stratum = st;
      row.stratum_type = stratum.type;
      row.stratum_key = stratum.phi.hex();
      row.gamma = gamma_orbits[i].representative;
      for (int e : row.gamma) row.gamma_words.push_back(w.word_string(e));
      row.orbit_size = gamma_orbits[i].size;
      row.n = n_coefficient(g, w, poset, cosets, row.gamma, spec, convention);
    });
    for (auto& r : rows) table.rows.push_back(std::move(r));
  }
  return table;
}

BigInt bound_constant(const GroupDatum& g, int num_places) {
  const auto& rs = g.roots();
  const BigInt w_order = weyl_order_from_degrees(rs);
  BigInt total = 0;
  for (auto& c : elliptic_classes(rs)) {
    const BigInt wi = subsystem_weyl_order(rs, c.subsystem);
    total += pow(w_order, num_places) * pow(wi, num_places) * geometric_center_order(g, c.subsystem);
  }
  return total;
}

}  // namespace coendo
