#pragma once

// Brute-force verifiers. Each one recomputes its answer from root data and
// explicit torus points, without the Moebius or lattice-quotient routes.

#include "coendo/caps.hpp"
#include "coendo/coefficients.hpp"
#include "coendo/coendoscopy.hpp"
#include "coendo/rootsys.hpp"
#include "coendo/weyl.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coendo {

struct OracleVerdict {
  std::string check;
  std::string instance;
  bool applicable = true;  ///< false when the instance misses the check's hypotheses
  bool pass = true;
  std::string witness;  ///< first counterexample
  std::vector<std::string> notes;

  void fail(const std::string& w) {
    if (pass) witness = w;
    pass = false;
  }
  /// "PASS", "FAIL" or "SKIP".
  std::string status() const { return !applicable ? "SKIP" : pass ? "PASS" : "FAIL"; }
};

/// Enumerates T(F_q) and checks the stratification against the classes:
/// (a) elliptic centralizers are exactly W-translates of node-deletion
///     subsystems, and every rational class occurs with its own centralizer;
/// (b) the strata sizes and |Z_iota(F_q)| agree with both library routes;
/// (c) a non-central elliptic centralizer is maximal among proper ones
///     exactly when its deleted node has a prime label.
OracleVerdict brute_strata_check(const GroupDatum& g, const WeylGroup& w, Int q, const Caps& caps = {});

/// Smallest admissible q for the adjoint group of type t: p very good and
/// q-1 divisible by every highest-root label and the rationality table.
Int bds_field(const SimpleType& t);

/// Node-deletion types against enumerated elliptic centralizer types at
/// bds_field(t), for the maximal ones and for all of them.
OracleVerdict bds_cross_check(const SimpleType& t, const Caps& caps = {});

/// Phi_n, coefficients from the constant term up.
std::vector<Int> cyclotomic_polynomial(Int n);

/// Reduces sum_e counts[e] x^e modulo Phi_n; returns the constant when the
/// remainder is constant.
std::optional<Int> cyclotomic_constant(const std::vector<Int>& counts, Int n);

/// Sum of zeta_{q-1}^{<lambda, v_s>} over the explicit points, exactly.
std::optional<Int> direct_character_sum(const IntVector& lambda, const std::vector<TorusPoint>& points);

/// Compares the direct sum over stratum.s_points with `expected`.
OracleVerdict cyclotomic_sum_check(const IntVector& lambda, const Stratum& stratum, Int expected);

/// n_{H,o} summed point by point over S_iota, acting on points rather than
/// on characters.
std::optional<Int> direct_n_coefficient(const GroupDatum& g, const WeylGroup& w, const Stratum& stratum,
                                        const GammaTuple& gamma, const CharacterSpec& spec, Convention convention);

/// Every row of the table against direct_n_coefficient on an enumerated poset.
OracleVerdict coefficient_check(const GroupDatum& g, const WeylGroup& w, const StrataPoset& enumerated,
                                const NTable& table, const CharacterSpec& spec);

/// Hypotheses for field-extension stability at q: the divisibility table,
/// plus every elliptic class rational with Z(F_q) = Z(Fbar_q). Returns the
/// reasons it fails.
std::vector<std::string> field_extension_obstructions(const GroupDatum& g, Int q);

/// NTable(q) against NTable(q^n), row for row.
OracleVerdict field_extension_check(const GroupDatum& g, const WeylGroup& w, const CharacterSpec& spec, Int q, int n,
                                    Convention convention, const Caps& caps = {});

struct ManifestEntry {
  std::string check;  ///< "strata", "bds", "coefficients" or "field-extension"
  std::string group;  ///< factor string
  std::string lattice = "sc";
  Int q = 0;
  int n = 0;        ///< field-extension degree
  int samples = 0;  ///< random character specs for "coefficients"
  std::string describe() const;
};

/// The shipped grid.
std::vector<ManifestEntry> default_manifest();

/// Runs the entries in order; instances run in parallel over caps.threads.
std::vector<OracleVerdict> run_manifest(const std::vector<ManifestEntry>& entries, const Caps& caps = {});

/// Reproducible character spec: inf plus `finite` places, entries in [-bound, bound].
CharacterSpec random_spec(const GroupDatum& g, Int q, int finite, int bound, std::uint64_t seed);

}  // namespace coendo
