#pragma once

// The integer coefficients n_{H,o}: per-place characters, Weyl coset tuples,
// and Moebius-inverted stratum sums.

#include "coendo/caps.hpp"
#include "coendo/coendoscopy.hpp"
#include "coendo/rootsys.hpp"
#include "coendo/weyl.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace coendo {

using BigInt = boost::multiprecision::cpp_int;

/// How the place characters combine into one character of T(F_q).
///  UniformInverse: Lambda = -sum_fin gamma_v.lambda_v - w.lambda_inf, summed over C_W(iota)\W.
///  Literal537:     Lambda = -sum_fin gamma_v.lambda_v + w.lambda_inf, summed over C_W(iota)\W.
///  Resultat:       the orbit-averaged form, |W_iota|/|C_W(iota)| times the sum over
///                  c in W_iota\C_W(iota) of the character at c^-1 s c, with gamma_inf = 1.
enum class Convention { UniformInverse, Literal537, Resultat };
const char* convention_name(Convention c);
/// "uniform-inverse", "literal-537" or "resultat". Throws ConfigError.
Convention parse_convention(const std::string& text);

struct PlaceData {
  std::string tag;  ///< "inf" or a finite label such as "v1"
  IntVector lambda;  ///< coordinates in the X^* basis dual to the X_* basis
  bool infinity() const { return tag == "inf"; }
};

struct CharacterSpec {
  Int q = 0;
  std::vector<PlaceData> places;

  /// Exactly one "inf" place, unique tags, lambda of the datum's rank.
  /// Throws ConfigError.
  void validate(const GroupDatum& g) const;
  const PlaceData& infinity() const;
  /// Finite places in input order.
  std::vector<const PlaceData*> finite() const;
  int num_finite() const { return static_cast<int>(places.size()) - 1; }
};

/// True iff the sum of all lambda_v is trivial on Z_G(F_q).
bool central_product_test(const CharacterSpec& spec, const GroupDatum& g, Int q);

/// w.lambda, where (w.lambda)(s) = lambda(w^-1 s w).
IntVector weyl_on_character(const GroupDatum& g, const WeylGroup& w, int element, const IntVector& lambda);

/// One minimal-length W_iota\W coset representative per finite place.
using GammaTuple = std::vector<int>;

IntVector total_character(const GroupDatum& g, const WeylGroup& w, const CharacterSpec& spec,
                          const GammaTuple& gamma, int outer, Convention convention);

/// Sum of the character over a finite group of torus points: |A| or 0.
Int group_character_sum(const IntVector& lambda, const FiniteAbelianGroup& a);

/// Sum of the character over S_iota for poset.strata[stratum], by Moebius
/// inversion over the strata below it.
Int stratum_sum(const IntVector& lambda, int stratum, const StrataPoset& poset);

/// The cosets H w of a subgroup H of W.
struct CosetSpace {
  std::vector<int> reps;      ///< first element of each coset in enumeration order (minimal length)
  std::vector<int> coset_of;  ///< element index -> coset index
  std::size_t size() const { return reps.size(); }
};
CosetSpace right_cosets(const WeylGroup& w, const std::vector<int>& subgroup);

/// Coset data of one stratum.
struct StratumCosets {
  int stratum = -1;
  std::vector<int> w_iota;  ///< W(Phi_iota), sorted
  std::vector<int> c_w;     ///< C_W(iota), sorted
  CosetSpace gamma;         ///< W_iota\W
  CosetSpace outer;         ///< C_W(iota)\W
  std::vector<int> inner;   ///< representatives of W_iota\C_W(iota)
};
StratumCosets stratum_cosets(const WeylGroup& w, const StrataPoset& poset, int stratum);

Int n_coefficient(const GroupDatum& g, const WeylGroup& w, const StrataPoset& poset, const StratumCosets& cosets,
                  const GammaTuple& gamma, const CharacterSpec& spec, Convention convention);

struct GammaOrbit {
  GammaTuple representative;  ///< least tuple of coset indices, as element indices
  std::uint64_t size = 0;
};

/// Orbits of C_W(iota) on (W_iota\W)^k acting by gamma -> c^-1 gamma c in
/// every coordinate, ordered by representative. Throws CapExceeded when
/// |W_iota\W|^k exceeds `cap`.
std::vector<GammaOrbit> orbit_decomposition(const WeylGroup& w, const StratumCosets& cosets, int num_finite,
                                            std::size_t cap);

struct NRow {
  int stratum = -1;
  std::string stratum_type;
  std::string stratum_key;  ///< hex bitset of Phi_iota
  GammaTuple gamma;
  std::vector<std::string> gamma_words;
  std::uint64_t orbit_size = 0;
  Int n = 0;
  /// Canonical key "phi-hex|word,word,...", independent of q.
  std::string key() const;
};

struct NStratumInfo {
  int stratum = -1;
  std::string type;
  std::uint64_t w_iota_order = 0;
  std::uint64_t c_w_order = 0;
  std::uint64_t num_cosets = 0;  ///< |W_iota\W|
  std::uint64_t num_orbits = 0;
  Int s_count = 0;
};

struct NTable {
  Int q = 0;
  Convention convention = Convention::UniformInverse;
  std::vector<NRow> rows;
  std::vector<NStratumInfo> strata;
  BigInt abs_sum() const;
};

/// One row per (stratum orbit representative, C_W-orbit of gamma tuples).
NTable n_table(const GroupDatum& g, const WeylGroup& w, const StrataPoset& poset, const CharacterSpec& spec,
               Convention convention, const Caps& caps = {});

/// sum over elliptic classes of |W|^k |W_iota|^k |Z_{G_iota}(Fbar_q)|, k = num_places.
BigInt bound_constant(const GroupDatum& g, int num_places);

}  // namespace coendo
