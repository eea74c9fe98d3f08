#include "coendo/torus.hpp"

#include "coendo/error.hpp"

#include <algorithm>

namespace coendo {

TorusPoint TorusPoint::make(Int q, const IntVector& v) {
  if (q < 2) throw Error("q must be at least 2");
  TorusPoint s{q, v};
  for (Eigen::Index i = 0; i < v.size(); ++i) s.residues(i) = mod(v(i), q - 1);
  return s;
}

TorusPoint point_from_coweight(const GroupDatum& g, Int q, const IntVector& x) {
  IntMatrix rhs = x;
  auto v = solve_integral(g.cochar().basis, rhs);
  if (!v) throw InvalidDatum("coweight vector " + to_string(x) + " is not in X_*");
  return TorusPoint::make(q, v->col(0));
}

void check_field(const GroupDatum& g, Int q) {
  auto pp = prime_power(q);
  if (!pp) throw BadCharacteristic("q = " + std::to_string(q) + " is not a prime power");
  if (pp->first != g.p())
    throw BadCharacteristic("q = " + std::to_string(q) + " is not a power of p = " + std::to_string(g.p()));
}

std::uint64_t torus_size(const GroupDatum& g, Int q, std::size_t cap) {
  std::uint64_t n = 1;
  for (int i = 0; i < g.rank(); ++i) {
    n *= static_cast<std::uint64_t>(q - 1);
    if (n > cap) throw CapExceeded("|T(F_q)| exceeds the point cap " + std::to_string(cap), 0);
  }
  return n;
}

std::vector<TorusPoint> enumerate_points(const GroupDatum& g, Int q, std::size_t cap) {
  const std::uint64_t n = torus_size(g, q, cap);
  const int r = g.rank();
  std::vector<TorusPoint> out;
  out.reserve(n);
  IntVector v = IntVector::Zero(r);
  for (std::uint64_t k = 0; k < n; ++k) {
    out.push_back(TorusPoint{q, v});
    for (int i = r - 1; i >= 0; --i) {
      if (++v(i) < q - 1) break;
      v(i) = 0;
    }
  }
  return out;
}

RootSet centralizer_subsystem(const GroupDatum& g, const TorusPoint& s) {
  const auto& rs = g.roots();
  RootSet out(rs.num_roots());
  const Int n = s.modulus();
  for (int i = 0; i < rs.num_roots(); ++i)
    if (mod(g.root_character(i).dot(s.residues), n) == 0) out.set(i);
  return out;
}

bool is_elliptic(const GroupDatum& g, const TorusPoint& s) {
  return subsystem_rank(g.roots(), centralizer_subsystem(g, s)) == g.rank();
}

TorusPoint act(const GroupDatum& g, const WeylGroup& w, int element, const TorusPoint& s) {
  return TorusPoint::make(s.q, g.cochar_action(w[element].matrix) * s.residues);
}

std::vector<int> weyl_stabilizer(const GroupDatum& g, const WeylGroup& w, const TorusPoint& s) {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(w.size()); ++e)
    if (act(g, w, e, s) == s) out.push_back(e);
  return out;
}

std::vector<int> reflection_subgroup(const WeylGroup& w, const RootSet& phi) { return w.reflection_subgroup(phi); }

Int pi0_order(const GroupDatum& g, const WeylGroup& w, const TorusPoint& s) {
  const auto ws = weyl_stabilizer(g, w, s);
  const auto ws0 = reflection_subgroup(w, centralizer_subsystem(g, s));
  if (ws.size() % ws0.size() != 0) throw Error("internal: W_s^0 does not divide W_s");
  return static_cast<Int>(ws.size() / ws0.size());
}

FiniteAbelianGroup subgroup_points(const GroupDatum& g, Int q, const RootSet& sub) {
  if (q < 2) throw Error("q must be at least 2");
  const auto& rs = g.roots();
  std::vector<int> rows;
  for (int i : sub.members())
    if (rs.positive(i)) rows.push_back(i);
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), g.rank());
  for (std::size_t k = 0; k < rows.size(); ++k) m.row(k) = g.root_character(rows[k]).transpose();
  return congruence_kernel(m, q - 1, g.rank());
}

}  // namespace coendo
