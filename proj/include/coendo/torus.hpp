#pragma once

// Points of the split maximal torus. A point s in T(F_q) is modelled as
// t = v / (q-1) modulo X_*, with v a residue vector in the X_* basis;
// alpha(s) = 1 exactly when <alpha, v> = 0 mod (q-1).

#include "coendo/caps.hpp"
#include "coendo/lattice.hpp"
#include "coendo/rootsys.hpp"
#include "coendo/weyl.hpp"

#include <cstdint>
#include <vector>

namespace coendo {

struct TorusPoint {
  Int q = 2;
  IntVector residues;

  static TorusPoint make(Int q, const IntVector& v);
  Int modulus() const { return q - 1; }
  friend bool operator==(const TorusPoint& a, const TorusPoint& b) { return a.q == b.q && a.residues == b.residues; }
};

/// The point t = x / (q-1) for x in X_* given in coweight coordinates.
/// Throws InvalidDatum when x is not in X_*.
TorusPoint point_from_coweight(const GroupDatum& g, Int q, const IntVector& x);

/// Throws BadCharacteristic unless q is a power of the datum's characteristic.
void check_field(const GroupDatum& g, Int q);

/// (q-1)^r, or CapExceeded beyond `cap`.
std::uint64_t torus_size(const GroupDatum& g, Int q, std::size_t cap);

/// All (q-1)^r points in lexicographic order of residues.
std::vector<TorusPoint> enumerate_points(const GroupDatum& g, Int q, std::size_t cap = 1'000'000);

RootSet centralizer_subsystem(const GroupDatum& g, const TorusPoint& s);
bool is_elliptic(const GroupDatum& g, const TorusPoint& s);

TorusPoint act(const GroupDatum& g, const WeylGroup& w, int element, const TorusPoint& s);

/// W_s = {w : w s = s}, as sorted element indices.
std::vector<int> weyl_stabilizer(const GroupDatum& g, const WeylGroup& w, const TorusPoint& s);
/// W_s^0, generated by reflections in the roots of Phi_s.
std::vector<int> reflection_subgroup(const WeylGroup& w, const RootSet& phi);
/// |pi_0(G_s)| = |W_s| / |W_s^0|
Int pi0_order(const GroupDatum& g, const WeylGroup& w, const TorusPoint& s);

/// Z(F_q) for the subgroup with roots `sub`: solutions of <alpha, v> = 0
/// mod (q-1) for alpha in sub, in residue coordinates.
FiniteAbelianGroup subgroup_points(const GroupDatum& g, Int q, const RootSet& sub);

}  // namespace coendo
