#include "coendo/lattice.hpp"

#include "coendo/error.hpp"

#include <sstream>

namespace coendo {

bool Lattice::contains(const IntVector& x) const {
  IntMatrix col = x;
  return solve_integral(basis, col).has_value();
}

bool Lattice::contains(const Lattice& other) const { return solve_integral(basis, other.basis).has_value(); }

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> invariants, std::vector<IntVector> generators, Int modulus,
                                       int dim)
    : invariants_(std::move(invariants)), generators_(std::move(generators)), modulus_(modulus), dim_(dim) {
  if (invariants_.size() != generators_.size()) throw Error("FiniteAbelianGroup: generator count mismatch");
  for (std::size_t i = 0; i < invariants_.size(); ++i) {
    if (invariants_[i] <= 1) throw Error("FiniteAbelianGroup: invariant factor must exceed 1");
    if (i > 0 && invariants_[i] % invariants_[i - 1] != 0) throw Error("FiniteAbelianGroup: divisibility chain broken");
    if (generators_[i].size() != dim_) throw Error("FiniteAbelianGroup: generator dimension mismatch");
  }
  if (modulus_ > 0)
    for (auto& g : generators_)
      for (Eigen::Index k = 0; k < g.size(); ++k) g(k) = mod(g(k), modulus_);
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic(const std::vector<Int>& orders,
                                                   const std::vector<IntVector>& generators, Int modulus, int dim) {
  const auto k = static_cast<Eigen::Index>(orders.size());
  if (k == 0) return FiniteAbelianGroup({}, {}, modulus, dim);
  IntMatrix rel = IntMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) rel(i, i) = orders[i];
  SmithForm snf = smith_normal_form(rel);
  // Coordinates transform as y = U x, so the new generators are the columns
  // of U^{-1} expressed through the old ones.
  std::vector<Int> inv;
  std::vector<IntVector> gens;
  for (Eigen::Index j = 0; j < k; ++j) {
    Int d = snf.d(j, j);
    if (d <= 1) continue;
    IntVector g = IntVector::Zero(dim);
    for (Eigen::Index i = 0; i < k; ++i) g += snf.u_inv(i, j) * generators[i];
    if (modulus > 0)
      for (Eigen::Index t = 0; t < g.size(); ++t) g(t) = mod(g(t), modulus);
    inv.push_back(d);
    gens.push_back(g);
  }
  return FiniteAbelianGroup(std::move(inv), std::move(gens), modulus, dim);
}

Int FiniteAbelianGroup::order() const {
  Int o = 1;
  for (Int d : invariants_) o = checked_mul(o, d);
  return o;
}

void FiniteAbelianGroup::for_each_element(const std::function<void(const IntVector&)>& fn) const {
  const Eigen::Index dim = dim_;
  std::vector<Int> c(invariants_.size(), 0);
  for (;;) {
    IntVector x = IntVector::Zero(dim);
    for (std::size_t i = 0; i < c.size(); ++i) x += c[i] * generators_[i];
    if (modulus_ > 0)
      for (Eigen::Index t = 0; t < x.size(); ++t) x(t) = mod(x(t), modulus_);
    fn(x);
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == invariants_[i]) c[i++] = 0;
    if (i == c.size()) return;
  }
}

std::string FiniteAbelianGroup::describe() const {
  if (invariants_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < invariants_.size(); ++i) os << (i ? " x " : "") << "Z/" << invariants_[i];
  return os.str();
}

FiniteAbelianGroup lattice_quotient(const Lattice& big, const Lattice& small) {
  if (big.basis.rows() != small.basis.rows() || big.basis.cols() != small.basis.cols())
    throw NotASublattice("lattice_quotient: rank mismatch");
  if (determinant(big.basis) == 0 || determinant(small.basis) == 0)
    throw NotFullRank("lattice_quotient: lattices must be full rank");
  auto k = solve_integral(big.basis, small.basis);
  if (!k) throw NotASublattice(small.name + " is not contained in " + big.name);
  SmithForm snf = smith_normal_form(*k);
  // big/small = Z^r / K Z^r; with y = U x the quotient is diagonal.
  std::vector<Int> inv;
  std::vector<IntVector> gens;
  for (Eigen::Index j = 0; j < snf.d.rows(); ++j) {
    Int d = snf.d(j, j);
    if (d <= 1) continue;
    inv.push_back(d);
    gens.push_back(big.basis * snf.u_inv.col(j));
  }
  return FiniteAbelianGroup(std::move(inv), std::move(gens), 0, static_cast<int>(big.basis.rows()));
}

FiniteAbelianGroup quotient_by_rows(const IntMatrix& rows) {
  const Eigen::Index r = rows.cols();
  if (rows.rows() == 0 || rank(rows) < r) throw NotFullRank("sublattice spanned by the given rows is not of full rank");
  // Row span of R times V is the row span of D, so x -> x V diagonalises;
  // the generators are the rows of V^{-1}.
  SmithForm snf = smith_normal_form(rows);
  std::vector<Int> inv;
  std::vector<IntVector> gens;
  for (Eigen::Index j = 0; j < r; ++j) {
    Int d = snf.d(j, j);
    if (d <= 1) continue;
    inv.push_back(d);
    gens.push_back(snf.v_inv.row(j).transpose());
  }
  return FiniteAbelianGroup(std::move(inv), std::move(gens), 0, static_cast<int>(r));
}

FiniteAbelianGroup congruence_kernel(const IntMatrix& rows, Int n, int r) {
  if (n <= 0) throw Error("congruence_kernel: modulus must be positive");
  if (n == 1) return FiniteAbelianGroup({}, {}, 1, r);
  std::vector<Int> orders;
  std::vector<IntVector> gens;
  if (rows.rows() == 0) {
    for (int j = 0; j < r; ++j) {
      orders.push_back(n);
      gens.push_back(IntVector::Unit(r, j));
    }
    return FiniteAbelianGroup::from_cyclic(orders, gens, n, r);
  }
  // U R V = D; v = V y turns the system into d_j y_j = 0 mod n.
  SmithForm snf = smith_normal_form(rows);
  for (Eigen::Index j = 0; j < r; ++j) {
    Int d = j < snf.d.rows() ? snf.d(j, j) : 0;
    Int g = d == 0 ? n : gcd(d, n);
    if (g == 1) continue;
    orders.push_back(g);
    gens.push_back(snf.v.col(j) * (n / g));
  }
  return FiniteAbelianGroup::from_cyclic(orders, gens, n, r);
}

}  // namespace coendo
