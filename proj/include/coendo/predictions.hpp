#pragma once

// Dimension counts for Hitchin spaces and the assembled multiplicity
// prediction. Point counts of Hitchin fibres are external inputs.

#include "coendo/coefficients.hpp"
#include "coendo/rootsys.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coendo {

using BigRational = boost::multiprecision::cpp_rational;

struct CurveData {
  int genus = 0;
  std::vector<int> place_degrees;
  bool rational_place = true;  ///< the place at infinity has degree 1

  int deg_s() const;
  /// |S| > 2 - g, with |S| = deg S for split S.
  bool hypothesis_holds() const { return deg_s() > 2 - genus; }
  /// Throws ConfigError on negative genus, empty S or non-positive degrees.
  void validate() const;
};

/// a + b sqrt(q), exact. b is 0 whenever q is a perfect square.
struct SurdValue {
  BigRational a = 0, b = 0;
  Int q = 1;

  SurdValue& operator+=(const SurdValue& o);
  SurdValue operator*(const BigRational& c) const;
  bool is_rational() const { return b == 0; }
  std::string str() const;
  friend bool operator==(const SurdValue& x, const SurdValue& y) { return x.a == y.a && x.b == y.b; }
};

/// q^e for a half-integral exponent e. Throws Error otherwise.
SurdValue q_power(Int q, const BigRational& e);

struct HitchinDims {
  Int dim_m = 0;
  Int dim_r = 0;
  BigRational dim_a = 0;
};

/// dim M = dim g (2g-2+deg S), dim R = deg S r, dim A = (deg S r + dim M)/2.
HitchinDims hitchin_dims(int rank, int dim_g, const CurveData& curve);
HitchinDims hitchin_dims(const GroupDatum& g, const CurveData& curve);
/// Dimensions for the subgroup with roots `sub` (same torus).
HitchinDims hitchin_dims(const GroupDatum& g, const RootSet& sub, const CurveData& curve);

/// N = (dim M - dim R) / 2.
BigRational exponent_n(int rank, int dim_g, const CurveData& curve);
BigRational exponent_n(const GroupDatum& g, const CurveData& curve);

struct LeadingTerm {
  Int center_order = 0;  ///< |Z_G(F_q)|
  Int pi1 = 0;
  BigRational exponent = 0;
  SurdValue value;
  /// N is a non-negative integer, so the value is an integer.
  bool integral = false;
};

/// |Z_G(F_q)| |pi_1(G)| q^N
LeadingTerm leading_term(const GroupDatum& g, Int q, const CurveData& curve);

/// Number of connected components of the Hitchin space of the subgroup with
/// roots `sub`: |pi_1| = [X_* : Z Phi_sub^vee].
Int component_count(const GroupDatum& g, const RootSet& sub);

/// Point counts keyed by (stratum, orbit representative). The stratum may be
/// named by its hex key or, when unambiguous, by its type; the orbit
/// representative is the comma-joined list of Weyl words; an empty one
/// applies to every orbit of the stratum without its own entry.
struct CountKey {
  std::string stratum;
  std::string orbit_rep;
  friend auto operator<=>(const CountKey&, const CountKey&) = default;
};
using CountMap = std::map<CountKey, BigRational>;

struct PredictionRow {
  std::string key;
  std::string stratum_type;
  std::string orbit_rep;
  Int n = 0;
  BigRational exponent = 0;  ///< N_H
  Int pi1 = 0;               ///< |pi_1(H)|
  BigRational count = 0;     ///< supplied, or |pi_1(H)| q^{N_H} in approximation mode
  SurdValue count_value;     ///< the count as used
  SurdValue contribution;    ///< n q^{-N_H} count
};

struct PredictionReport {
  Int q = 0;
  CurveData curve;
  HitchinDims dims;
  BigRational exponent = 0;
  LeadingTerm leading;
  std::vector<PredictionRow> rows;
  SurdValue total;
  bool approximate = false;
  std::string error_order;  ///< set in approximation mode
  bool hypothesis_ok = true;
  std::vector<std::string> caveats;
};

/// Sum over rows of n q^{-N_H} count. With `counts` absent the report runs in
/// approximation mode. Throws MissingCount when a row has no count.
PredictionReport assemble_prediction(const GroupDatum& g, const StrataPoset& poset, const NTable& table,
                                     const CurveData& curve, const std::optional<CountMap>& counts);

}  // namespace coendo
