#pragma once

// Root systems of split semisimple groups built from Cartan data.
//
// Coordinates: roots are stored by their coefficients on the simple roots,
// which are also their pairings with the fundamental coweights. Coweight
// space vectors (cocharacters, lattices X_*) use fundamental-coweight
// coordinates, so <alpha, t> is a plain integer dot product.

#include "coendo/lattice.hpp"
#include "coendo/matrix.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coendo {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct SimpleType {
  Family family = Family::A;
  int rank = 1;

  /// Parses "A2", "G2", "E8", ... Throws IllegalType.
  static SimpleType parse(std::string_view text);
  static bool legal(Family family, int rank);

  std::string name() const;
  IntMatrix cartan() const;  ///< Bourbaki numbering, entry (i,j) = <alpha_i, alpha_j^vee>
  std::vector<int> highest_root_table() const;  ///< reference labels, Bourbaki order

  friend bool operator==(const SimpleType&, const SimpleType&) = default;
  friend auto operator<=>(const SimpleType&, const SimpleType&) = default;
};

/// "A2xA1", "A2,A1" or "A2 A1".
std::vector<SimpleType> parse_factors(std::string_view text);
std::string factors_name(const std::vector<SimpleType>& factors);

/// Identifies an irreducible Cartan matrix (any numbering). Throws IllegalType
/// if the matrix is not of finite type.
SimpleType identify_cartan(const IntMatrix& cartan);

/// Set of roots of a fixed RootSystem, as a bitset over root indices.
class RootSet {
 public:
  RootSet() = default;
  explicit RootSet(std::size_t universe) : size_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool subset_of(const RootSet& other) const;
  std::vector<int> members() const;
  std::string hex() const;  ///< bit i is root i, little-endian nibbles

  friend bool operator==(const RootSet&, const RootSet&) = default;
  /// Bit-string order, root 0 first, absent < present.
  friend bool operator<(const RootSet& a, const RootSet& b);

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct Root {
  IntVector coeffs;  ///< on the simple roots (= pairing with fundamental coweights)
  IntVector coroot;  ///< on the simple coroots
  int height = 0;
  int factor = 0;
  int length = 1;  ///< squared length relative to the shortest root of its factor
};

class RootSystem {
 public:
  RootSystem() = default;
  explicit RootSystem(std::vector<SimpleType> factors);

  const std::vector<SimpleType>& factors() const { return factors_; }
  int rank() const { return rank_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  int dim_g() const { return num_roots() + rank_; }
  int factor_offset(int f) const { return offsets_[f]; }
  int factor_rank(int f) const { return factors_[f].rank; }

  const IntMatrix& cartan() const { return cartan_; }
  const std::vector<Root>& roots() const { return roots_; }
  const Root& root(int i) const { return roots_[i]; }
  bool positive(int i) const { return roots_[i].height > 0; }
  int negative(int i) const { return negation_[i]; }
  int simple_root(int j) const { return simple_[j]; }
  /// Index of the root with these coefficients, or -1.
  int find(const IntVector& coeffs) const;

  /// alpha_i^vee in fundamental-coweight coordinates (column i of the Cartan matrix).
  IntVector coroot_coweight(int root) const;
  /// <beta, alpha^vee>
  Int pairing(int beta, int alpha) const;
  /// Permutation of root indices induced by the reflection s_alpha.
  std::vector<std::uint16_t> reflection_permutation(int alpha) const;

  RootSet all() const;
  RootSet empty_set() const { return RootSet(roots_.size()); }
  RootSet factor_roots(int f) const;

  /// Index of the highest root of factor f.
  int highest_root(int f) const;

 private:
  std::vector<SimpleType> factors_;
  std::vector<int> offsets_;
  int rank_ = 0;
  IntMatrix cartan_;
  std::vector<Root> roots_;
  std::vector<int> negation_;
  std::vector<int> simple_;
  std::map<std::vector<Int>, int> index_;
};

RootSystem build_root_system(const std::vector<SimpleType>& factors);

/// Labels h_i of the highest root of factor f, in Bourbaki order.
std::vector<Int> highest_root_coefficients(const RootSystem& rs, int factor);

/// Exponents of the Weyl group of factor f from the height distribution of
/// positive roots, sorted ascending.
std::vector<int> exponents(const RootSystem& rs, int factor);

/// |W| computed as prod (m_i + 1) over all factors.
std::uint64_t weyl_order_from_degrees(const RootSystem& rs);

/// Closed subsystems: structural queries.
bool is_closed(const RootSystem& rs, const RootSet& set);
bool is_symmetric(const RootSystem& rs, const RootSet& set);
/// Simple system of a closed symmetric subsystem, positive w.r.t. the ambient order.
std::vector<int> subsystem_base(const RootSystem& rs, const RootSet& set);
int subsystem_rank(const RootSystem& rs, const RootSet& set);
/// Irreducible components of the subsystem, identified as Dynkin types, sorted.
std::vector<SimpleType> subsystem_components(const RootSystem& rs, const RootSet& set);
/// Canonical type string such as "A1xC3"; "empty" for the empty subsystem.
std::string subsystem_type(const RootSystem& rs, const RootSet& set);
/// |W(Phi_sub)| from the component types.
std::uint64_t subsystem_weyl_order(const RootSystem& rs, const RootSet& set);
/// Smallest closed symmetric subsystem containing `set`.
RootSet closure(const RootSystem& rs, const RootSet& set);

/// Order of the Weyl group of one simple type, from its exponents.
std::uint64_t weyl_order(const SimpleType& t);

// ---------------------------------------------------------------------------
// Group data

Lattice coroot_lattice(const RootSystem& rs);
Lattice coweight_lattice(const RootSystem& rs);

struct VeryGoodVerdict {
  bool ok = true;
  std::vector<std::string> reasons;
};

bool is_prime(Int n);
/// (p, k) with q = p^k, or nullopt when q is not a prime power.
std::optional<std::pair<Int, int>> prime_power(Int q);

/// Split semisimple group: root system plus cocharacter lattice
/// Q^vee <= X_* <= P^vee, and a characteristic p.
class GroupDatum {
 public:
  GroupDatum(RootSystem rs, Lattice cochar, Int p);

  static GroupDatum simply_connected(const RootSystem& rs, Int p);
  static GroupDatum adjoint(const RootSystem& rs, Int p);

  const RootSystem& roots() const { return rs_; }
  const Lattice& cochar() const { return cochar_; }
  Int p() const { return p_; }
  int rank() const { return rs_.rank(); }

  /// Coordinates of alpha in the basis of X^* dual to the X_* basis.
  const IntVector& root_character(int root) const { return root_chars_[root]; }
  /// Matrix of root characters (one row per root).
  const IntMatrix& root_character_matrix() const { return root_char_matrix_; }

  /// w acting on X_* coordinates, given w's matrix in coweight coordinates.
  IntMatrix cochar_action(const IntMatrix& coweight_matrix) const;

  std::string describe() const;

 private:
  RootSystem rs_;
  Lattice cochar_;
  Int p_;
  IntMatrix basis_adj_;
  Int basis_det_ = 1;
  std::vector<IntVector> root_chars_;
  IntMatrix root_char_matrix_;
};

/// Datum from a factor string such as "B2" and lattice "sc" or "ad".
/// Throws IllegalType or ConfigError.
GroupDatum make_group(std::string_view factors, std::string_view lattice, Int p);

VeryGoodVerdict very_good_check(const std::vector<SimpleType>& factors, Int p);
VeryGoodVerdict very_good_check(const GroupDatum& g);

/// |pi_1(G)| = [X_* : Q^vee]
Int pi1_order(const GroupDatum& g);
/// [X_* : Z Phi_sub^vee], the fundamental group of the subgroup with roots `sub`.
Int pi1_order(const GroupDatum& g, const RootSet& sub);
/// |Z_H(Fbar_q)| = |X^* / Z Phi_sub| for a full-rank subsystem. Throws NotFullRank.
Int geometric_center_order(const GroupDatum& g, const RootSet& sub);

}  // namespace coendo
