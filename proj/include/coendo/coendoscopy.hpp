#pragma once

// Split elliptic coendoscopic groups and the stratification of T(F_q) by
// centralizer subsystems.

#include "coendo/caps.hpp"
#include "coendo/lattice.hpp"
#include "coendo/rootsys.hpp"
#include "coendo/torus.hpp"
#include "coendo/weyl.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coendo {

/// A choice, per simple factor, of one node of the extended Dynkin diagram
/// to delete (or none). The remaining nodes span a closed subsystem of full
/// rank, the centralizer of t = sum (1/h_i) varpi_i^vee over deleted nodes i.
struct CoendoscopicClass {
  std::vector<int> deleted;  ///< per factor: global simple-root index, or -1
  std::vector<Int> labels;   ///< highest-root label of the deleted node, 1 if none
  RootSet subsystem;
  std::string type;
  IntVector rep_numerator;  ///< t = rep_numerator / rep_denominator (coweight coordinates)
  Int rep_denominator = 1;

  bool whole_group() const;
  /// Every deleted node has a prime label (the Borel-de Siebenthal case).
  bool prime_labels() const;
  /// "whole", or e.g. "a3/4" (node 3 deleted, label 4), joined by '+'.
  std::string label() const;

  /// (q-1) t lies in X_*, i.e. t defines a point of T(F_q).
  bool rational_over(const GroupDatum& g, Int q) const;
  /// The point defined by t, when rational.
  std::optional<TorusPoint> representative_point(const GroupDatum& g, Int q) const;
};

/// Classes with prime labels in each changed factor, excluding the whole group.
std::vector<CoendoscopicClass> borel_de_siebenthal(const RootSystem& rs);
/// Every full-rank centralizer shape: any node with label >= 2 per factor,
/// including the whole group as the first entry.
std::vector<CoendoscopicClass> elliptic_classes(const RootSystem& rs);

struct ClassifiedClass {
  CoendoscopicClass cls;
  bool rational = false;
  bool maximal = false;  ///< exactly one factor changed, prime label
};

/// Whole group first, then every elliptic class with its rationality over F_q.
/// Throws BadCharacteristic when q is not a power of p or p is not very good.
std::vector<ClassifiedClass> classify(const GroupDatum& g, Int q);

// ---------------------------------------------------------------------------
// Strata

enum class Route { Enumerate, Classify };
const char* route_name(Route r);

struct Stratum {
  RootSet phi;
  std::string type;
  std::uint64_t w_iota_order = 1;
  FiniteAbelianGroup z_points;
  Int s_count = 0;
  std::vector<TorusPoint> s_points;  ///< filled by the enumerate route only
  int orbit = -1;
  int transporter = 0;  ///< w with phi = w . (orbit representative)
};

struct StrataOrbit {
  int representative = -1;  ///< stratum index with the least phi bitset
  std::vector<int> members;
  std::vector<int> c_w;  ///< C_W(iota) of the representative, sorted indices
  std::string type;
};

class StrataPoset {
 public:
  Int q = 0;
  Route route = Route::Enumerate;
  std::vector<Stratum> strata;
  std::vector<StrataOrbit> orbits;
  std::vector<std::string> warnings;

  /// a <= b iff phi_b is contained in phi_a.
  bool leq(int a, int b) const { return leq_[a][b] != 0; }
  /// mu(a, b), zero unless a <= b.
  Int mu(int a, int b) const { return mobius_[a][b]; }
  int minimal() const { return minimal_; }
  int find(const RootSet& phi) const;
  std::size_t size() const { return strata.size(); }

  /// Recomputes the order relation and Moebius function from the strata.
  void finalize();

 private:
  std::vector<std::vector<char>> leq_;
  std::vector<std::vector<Int>> mobius_;
  int minimal_ = -1;
};

/// Moebius function of a family of sets ordered by reverse inclusion
/// (a <= b iff sets[b] is a subset of sets[a]); entry [a][b].
std::vector<std::vector<Int>> mobius(const std::vector<RootSet>& sets);

std::vector<RootSet> weyl_orbit(const WeylGroup& w, const RootSet& set);
/// {w : w(set) = set}, sorted.
std::vector<int> set_stabilizer(const WeylGroup& w, const RootSet& set);

StrataPoset strata_poset(const GroupDatum& g, const WeylGroup& w, Int q, Route route, const Caps& caps = {});

struct Verdict {
  bool ok = true;
  std::vector<std::string> failures;
  void fail(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
};

/// Z_iota(F_q) is the disjoint union of the S_iota' for iota' <= iota.
/// Needs explicit point lists (enumerate route).
Verdict reeder_partition_check(const GroupDatum& g, const StrataPoset& poset);

/// Divisibility required of q-1 by the two rationality tables.
Int table_car(const SimpleType& t);
Int table_car2(const SimpleType& t);
bool table_car_holds(const RootSystem& rs, Int q);
bool table_car2_holds(const RootSystem& rs, Int q);

struct TableVerdict {
  bool applicable = false;
  bool ok = true;
  std::vector<std::string> details;
};

/// First: under table-car divisibility every Borel-de Siebenthal class of the
/// simply connected datum is rational. Second: under table-car2 divisibility,
/// |Z_H(F_q)| = |Z_H(Fbar_q)| for G and every such class, for both the simply
/// connected and the adjoint datum.
std::pair<TableVerdict, TableVerdict> rationality_tables_check(const SimpleType& t, Int q);

}  // namespace coendo
