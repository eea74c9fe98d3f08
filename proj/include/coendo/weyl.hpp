#pragma once

#include "coendo/rootsys.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace coendo {

inline constexpr std::size_t kDefaultWeylCap = 1'000'000;

struct WeylElement {
  std::vector<std::uint16_t> perm;  ///< action on root indices
  IntMatrix matrix;                 ///< action on fundamental-coweight coordinates
  int length = 0;
  int parent = -1;     ///< this = s_generator * parent
  int generator = -1;
};

/// Full enumeration of W by breadth-first search over left multiplication
/// by simple reflections; element 0 is the identity and elements appear in
/// non-decreasing length.
class WeylGroup {
 public:
  static WeylGroup generate(const RootSystem& rs, std::size_t cap = kDefaultWeylCap);

  std::size_t size() const { return elements_.size(); }
  const WeylElement& operator[](int i) const { return elements_[i]; }
  const std::vector<WeylElement>& elements() const { return elements_; }

  int multiply(int a, int b) const;  ///< index of a * b (apply b first)
  int inverse(int a) const { return inverse_[a]; }
  int find(const std::vector<std::uint16_t>& perm) const;
  /// Reduced word as simple-reflection indices (1-based), leftmost first.
  std::vector<int> word(int a) const;
  std::string word_string(int a) const;

  RootSet apply(int w, const RootSet& set) const;
  /// Index of the reflection s_alpha.
  int reflection(int alpha) const;
  /// Subgroup generated by the given elements, sorted by index.
  std::vector<int> generated_subgroup(const std::vector<int>& generators) const;
  /// Subgroup generated by the reflections in the roots of `set`.
  std::vector<int> reflection_subgroup(const RootSet& set) const;

 private:
  std::string key(const std::vector<std::uint16_t>& perm) const;

  RootSystem rs_;
  std::vector<int> simple_;
  std::vector<WeylElement> elements_;
  std::vector<int> inverse_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace coendo
