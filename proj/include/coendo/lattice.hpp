#pragma once

#include "coendo/matrix.hpp"

#include <functional>
#include <string>
#include <vector>

namespace coendo {

/// Full-rank lattice in the coweight Q-space. Columns of `basis` are the
/// basis vectors in fundamental-coweight coordinates.
struct Lattice {
  IntMatrix basis;
  std::string name;

  int rank() const { return static_cast<int>(basis.cols()); }
  bool contains(const IntVector& x) const;
  bool contains(const Lattice& other) const;
};

/// Finite abelian group presented by its invariant factors d_1 | d_2 | ...,
/// each > 1, together with one generator per factor. Generators live in an
/// ambient coordinate space; `modulus` is 0 for Z^r ambients and n for
/// (Z/n)^r ambients (generators are then reduced mod n).
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  FiniteAbelianGroup(std::vector<Int> invariants, std::vector<IntVector> generators, Int modulus, int dim);

  /// Normalises a group given as a direct sum of cyclic groups of the listed
  /// orders (orders of 1 are dropped) into invariant-factor form.
  static FiniteAbelianGroup from_cyclic(const std::vector<Int>& orders, const std::vector<IntVector>& generators,
                                        Int modulus, int dim);

  const std::vector<Int>& invariants() const { return invariants_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  Int modulus() const { return modulus_; }
  int dim() const { return dim_; }  ///< ambient coordinate dimension
  Int order() const;
  bool trivial() const { return invariants_.empty(); }

  /// Calls fn on every element, as sum c_i g_i with 0 <= c_i < d_i.
  void for_each_element(const std::function<void(const IntVector&)>& fn) const;

  std::string describe() const;

 private:
  std::vector<Int> invariants_;
  std::vector<IntVector> generators_;
  Int modulus_ = 0;
  int dim_ = 0;
};

/// big / small via Smith normal form of the inclusion matrix; generators are
/// lifted to `big` (coweight coordinates).
FiniteAbelianGroup lattice_quotient(const Lattice& big, const Lattice& small);

/// Z^r / (row span of `rows`); throws NotFullRank if the rows do not span a
/// full-rank sublattice.
FiniteAbelianGroup quotient_by_rows(const IntMatrix& rows);

/// Solutions v in (Z/n)^r of rows * v = 0 mod n.
FiniteAbelianGroup congruence_kernel(const IntMatrix& rows, Int n, int r);

}  // namespace coendo
