#include "coendo/predictions.hpp"

#include "coendo/error.hpp"
#include "coendo/torus.hpp"

#include <cmath>

namespace coendo {

namespace {

Int integer_sqrt(Int q) {
  Int s = static_cast<Int>(std::sqrt(static_cast<double>(q)));
  while (s * s > q) --s;
  while ((s + 1) * (s + 1) <= q) ++s;
  return s;
}

BigRational rational_power(Int q, Int k) {
  BigRational base = k >= 0 ? BigRational(q) : BigRational(1) / BigRational(q);
  BigRational out = 1;
  for (Int i = 0; i < (k >= 0 ? k : -k); ++i) out *= base;
  return out;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string s;
  for (std::size_t i = 0; i < words.size(); ++i) s += (i ? "," : "") + words[i];
  return s;
}

}  // namespace

int CurveData::deg_s() const {
  int d = 0;
  for (int x : place_degrees) d += x;
  return d;
}

void CurveData::validate() const {
  if (genus < 0) throw ConfigError("curve: genus must be non-negative");
  if (place_degrees.empty()) throw ConfigError("curve: S must contain at least one place");
  for (int d : place_degrees)
    if (d < 1) throw ConfigError("curve: place degrees must be positive");
}

SurdValue& SurdValue::operator+=(const SurdValue& o) {
  if (b != 0 && o.b != 0 && q != o.q) throw Error("adding surds over different q");
  if (o.b != 0) q = o.q;
  a += o.a;
  b += o.b;
  return *this;
}

SurdValue SurdValue::operator*(const BigRational& c) const {
  SurdValue out = *this;
  out.a *= c;
  out.b *= c;
  return out;
}

std::string SurdValue::str() const {
  if (b == 0) return a.str();
  std::string root = "sqrt(" + std::to_string(q) + ")";
  std::string bs = b == 1 ? root : b == -1 ? "-" + root : b.str() + "*" + root;
  if (a == 0) return bs;
  if (b < 0) return a.str() + " - " + (b == -1 ? root : BigRational(-b).str() + "*" + root);
  return a.str() + " + " + bs;
}

SurdValue q_power(Int q, const BigRational& e) {
  const BigRational twice = e * 2;
  if (denominator(twice) != 1) throw Error("q-exponent " + e.str() + " is not half-integral");
  const Int k = static_cast<Int>(numerator(twice));
  SurdValue out;
  out.q = q;
  if (k % 2 == 0) {
    out.a = rational_power(q, k / 2);
    return out;
  }
  const BigRational half = rational_power(q, (k - 1) / 2);
  const Int s = integer_sqrt(q);
  if (s * s == q)
    out.a = half * s;
  else
    out.b = half;
  return out;
}

HitchinDims hitchin_dims(int rank, int dim_g, const CurveData& curve) {
  HitchinDims d;
  const Int deg = curve.deg_s();
  d.dim_m = static_cast<Int>(dim_g) * (2 * curve.genus - 2 + deg);
  d.dim_r = deg * rank;
  d.dim_a = BigRational(d.dim_r + d.dim_m) / 2;
  return d;
}

HitchinDims hitchin_dims(const GroupDatum& g, const CurveData& curve) {
  return hitchin_dims(g.rank(), g.roots().dim_g(), curve);
}

HitchinDims hitchin_dims(const GroupDatum& g, const RootSet& sub, const CurveData& curve) {
  return hitchin_dims(g.rank(), static_cast<int>(sub.count()) + g.rank(), curve);
}

BigRational exponent_n(int rank, int dim_g, const CurveData& curve) {
  auto d = hitchin_dims(rank, dim_g, curve);
  return BigRational(d.dim_m - d.dim_r) / 2;
}

BigRational exponent_n(const GroupDatum& g, const CurveData& curve) {
  return exponent_n(g.rank(), g.roots().dim_g(), curve);
}

LeadingTerm leading_term(const GroupDatum& g, Int q, const CurveData& curve) {
  LeadingTerm t;
  t.center_order = subgroup_points(g, q, g.roots().all()).order();
  t.pi1 = pi1_order(g);
  t.exponent = exponent_n(g, curve);
  t.integral = denominator(t.exponent) == 1 && t.exponent >= 0;
  t.value = q_power(q, t.exponent) * BigRational(t.center_order * t.pi1);
  return t;
}

Int component_count(const GroupDatum& g, const RootSet& sub) { return pi1_order(g, sub); }

PredictionReport assemble_prediction(const GroupDatum& g, const StrataPoset& poset, const NTable& table,
                                     const CurveData& curve, const std::optional<CountMap>& counts) {
  curve.validate();
  const Int q = table.q;
  PredictionReport rep;
  rep.q = q;
  rep.curve = curve;
  rep.dims = hitchin_dims(g, curve);
  rep.exponent = exponent_n(g, curve);
  rep.leading = leading_term(g, q, curve);
  rep.hypothesis_ok = curve.hypothesis_holds();
  rep.total.q = q;
  rep.approximate = !counts.has_value();
  if (rep.approximate) rep.error_order = "O(q^-1/2) relative to the leading term";
  if (!rep.hypothesis_ok)
    rep.caveats.push_back("|S| > 2 - g fails: the dimension formulas are outside their range of validity");
  rep.caveats.push_back("some fibres may have no F_q-points; this is not detected");

  std::map<std::string, int> type_uses;
  for (auto& s : table.strata) ++type_uses[s.type];

  for (const auto& row : table.rows) {
    PredictionRow pr;
    pr.key = row.key();
    pr.stratum_type = row.stratum_type;
    pr.orbit_rep = join_words(row.gamma_words);
    pr.n = row.n;
    const auto& phi = poset.strata[row.stratum].phi;
    const auto d = hitchin_dims(g, phi, curve);
    pr.exponent = BigRational(d.dim_m - d.dim_r) / 2;
    pr.pi1 = component_count(g, phi);
    if (rep.approximate) {
      pr.count_value = q_power(q, pr.exponent) * BigRational(pr.pi1);
      pr.count = pr.count_value.is_rational() ? pr.count_value.a : BigRational(0);
      pr.contribution.q = q;
      pr.contribution.a = BigRational(pr.n * pr.pi1);
    } else {
      // Exact orbit first, then a stratum-wide entry (empty orbit); hex key before type.
      auto it = counts->end();
      for (const auto& orbit : {pr.orbit_rep, std::string()}) {
        if (it == counts->end()) it = counts->find({row.stratum_key, orbit});
        if (it == counts->end() && type_uses[row.stratum_type] == 1) it = counts->find({row.stratum_type, orbit});
      }
      if (it == counts->end())
        throw MissingCount("no count for stratum " + row.stratum_type + " [" + row.stratum_key + "], orbit '" +
                           pr.orbit_rep + "'");
      pr.count = it->second;
      pr.count_value.q = q;
      pr.count_value.a = pr.count;
      pr.contribution = q_power(q, -pr.exponent) * (pr.count * pr.n);
    }
    rep.total += pr.contribution;
    rep.rows.push_back(std::move(pr));
  }
  return rep;
}

}  // namespace coendo
