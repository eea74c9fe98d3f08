#include "coendo/weyl.hpp"

#include "coendo/error.hpp"

#include <algorithm>
#include <deque>

namespace coendo {

std::string WeylGroup::key(const std::vector<std::uint16_t>& perm) const {
  // An element is determined by the images of the simple roots.
  std::string k;
  k.reserve(simple_.size() * 2);
  for (int s : simple_) {
    k.push_back(static_cast<char>(perm[s] & 0xff));
    k.push_back(static_cast<char>(perm[s] >> 8));
  }
  return k;
}

WeylGroup WeylGroup::generate(const RootSystem& rs, std::size_t cap) {
  const std::uint64_t order = weyl_order_from_degrees(rs);
  if (order > cap)
    throw CapExceeded("|W| = " + std::to_string(order) + " exceeds the enumeration cap " + std::to_string(cap), order);
  WeylGroup w;
  w.rs_ = rs;
  const int r = rs.rank();
  for (int j = 0; j < r; ++j) w.simple_.push_back(rs.simple_root(j));

  std::vector<std::vector<std::uint16_t>> gen_perm;
  std::vector<IntMatrix> gen_matrix;
  for (int i = 0; i < r; ++i) {
    gen_perm.push_back(rs.reflection_permutation(rs.simple_root(i)));
    // s_i(c) = c - c_i * alpha_i^vee
    IntMatrix m = IntMatrix::Identity(r, r);
    m.col(i) -= rs.cartan().col(i);
    gen_matrix.push_back(m);
  }

  WeylElement id;
  id.perm.resize(rs.num_roots());
  for (int k = 0; k < rs.num_roots(); ++k) id.perm[k] = static_cast<std::uint16_t>(k);
  id.matrix = IntMatrix::Identity(r, r);
  w.elements_.reserve(order);
  w.index_.reserve(order * 2);
  w.index_[w.key(id.perm)] = 0;
  w.elements_.push_back(std::move(id));
  for (std::size_t cur = 0; cur < w.elements_.size(); ++cur) {
    for (int i = 0; i < r; ++i) {
      std::vector<std::uint16_t> perm(rs.num_roots());
      const auto& src = w.elements_[cur].perm;
      for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = gen_perm[i][src[k]];
      auto k = w.key(perm);
      if (w.index_.count(k)) continue;
      WeylElement e;
      e.perm = std::move(perm);
      e.matrix = gen_matrix[i] * w.elements_[cur].matrix;
      e.length = w.elements_[cur].length + 1;
      e.parent = static_cast<int>(cur);
      e.generator = i;
      w.index_.emplace(std::move(k), static_cast<int>(w.elements_.size()));
      w.elements_.push_back(std::move(e));
    }
  }
  if (w.elements_.size() != order) throw Error("internal: Weyl enumeration disagrees with the degree formula");

  w.inverse_.resize(w.elements_.size());
  std::vector<std::uint16_t> inv(rs.num_roots());
  for (std::size_t a = 0; a < w.elements_.size(); ++a) {
    const auto& p = w.elements_[a].perm;
    for (std::size_t k = 0; k < p.size(); ++k) inv[p[k]] = static_cast<std::uint16_t>(k);
    w.inverse_[a] = w.find(inv);
  }
  return w;
}

int WeylGroup::find(const std::vector<std::uint16_t>& perm) const {
  auto it = index_.find(key(perm));
  return it == index_.end() ? -1 : it->second;
}

int WeylGroup::multiply(int a, int b) const {
  const auto& pa = elements_[a].perm;
  const auto& pb = elements_[b].perm;
  std::vector<std::uint16_t> perm(pa.size());
  for (int s : simple_) perm[s] = pa[pb[s]];
  return find(perm);
}

std::vector<int> WeylGroup::word(int a) const {
  std::vector<int> out;
  for (int cur = a; cur > 0; cur = elements_[cur].parent) out.push_back(elements_[cur].generator + 1);
  return out;
}

std::string WeylGroup::word_string(int a) const {
  std::string s;
  for (int g : word(a)) s += (s.empty() ? "s" : ".s") + std::to_string(g);
  return s.empty() ? "e" : s;
}

RootSet WeylGroup::apply(int w, const RootSet& set) const {
  RootSet out(set.universe());
  const auto& p = elements_[w].perm;
  for (int i : set.members()) out.set(p[i]);
  return out;
}

int WeylGroup::reflection(int alpha) const { return find(rs_.reflection_permutation(alpha)); }

std::vector<int> WeylGroup::generated_subgroup(const std::vector<int>& generators) const {
  std::vector<char> in(elements_.size(), 0);
  std::vector<int> members{0};
  in[0] = 1;
  for (std::size_t cur = 0; cur < members.size(); ++cur)
    for (int g : generators) {
      int x = multiply(g, members[cur]);
      if (!in[x]) {
        in[x] = 1;
        members.push_back(x);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<int> WeylGroup::reflection_subgroup(const RootSet& set) const {
  std::vector<int> gens;
  for (int a : set.members())
    if (rs_.positive(a)) gens.push_back(reflection(a));
  return generated_subgroup(gens);
}

}  // namespace coendo
