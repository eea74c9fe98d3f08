#include "coendo/rootsys.hpp"

#include "coendo/error.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace coendo {

// ---------------------------------------------------------------------------
// SimpleType

bool SimpleType::legal(Family family, int rank) {
  switch (family) {
    case Family::A: return rank >= 1;
    case Family::B: return rank >= 2;
    case Family::C: return rank >= 3;
    case Family::D: return rank >= 4;
    case Family::E: return rank >= 6 && rank <= 8;
    case Family::F: return rank == 4;
    case Family::G: return rank == 2;
  }
  return false;
}

SimpleType SimpleType::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != '_' && !std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.size() < 2) throw IllegalType("malformed simple type '" + std::string(text) + "'");
  const char f = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  if (std::string_view("ABCDEFG").find(f) == std::string_view::npos)
    throw IllegalType("unknown family in '" + std::string(text) + "'");
  int rank = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw IllegalType("malformed rank in '" + std::string(text) + "'");
    rank = rank * 10 + (s[i] - '0');
    if (rank > 64) throw IllegalType("rank too large in '" + std::string(text) + "'");
  }
  auto family = static_cast<Family>(f);
  if (!legal(family, rank)) throw IllegalType("illegal Dynkin type " + std::string(1, f) + std::to_string(rank));
  return {family, rank};
}

std::string SimpleType::name() const { return std::string(1, static_cast<char>(family)) + std::to_string(rank); }

IntMatrix SimpleType::cartan() const {
  const int r = rank;
  IntMatrix a = 2 * IntMatrix::Identity(r, r);
  auto bond = [&](int i, int j) { a(i, j) = a(j, i) = -1; };
  switch (family) {
    case Family::A:
      for (int i = 0; i + 1 < r; ++i) bond(i, i + 1);
      break;
    case Family::B:
      for (int i = 0; i + 1 < r; ++i) bond(i, i + 1);
      a(r - 2, r - 1) = -2;  // alpha_{r-1} long, alpha_r short
      break;
    case Family::C:
      for (int i = 0; i + 1 < r; ++i) bond(i, i + 1);
      a(r - 1, r - 2) = -2;  // alpha_r long
      break;
    case Family::D:
      for (int i = 0; i + 2 < r; ++i) bond(i, i + 1);
      bond(r - 3, r - 1);
      break;
    case Family::E:
      bond(0, 2);
      bond(1, 3);
      for (int i = 2; i + 1 < r; ++i) bond(i, i + 1);
      break;
    case Family::F:
      bond(0, 1);
      bond(1, 2);
      bond(2, 3);
      a(1, 2) = -2;  // alpha_2 long, alpha_3 short
      break;
    case Family::G:
      a(0, 1) = -1;  // alpha_1 short
      a(1, 0) = -3;
      break;
  }
  return a;
}

std::vector<int> SimpleType::highest_root_table() const {
  const int r = rank;
  switch (family) {
    case Family::A: return std::vector<int>(r, 1);
    case Family::B: {
      std::vector<int> h(r, 2);
      h[0] = 1;
      return h;
    }
    case Family::C: {
      std::vector<int> h(r, 2);
      h[r - 1] = 1;
      return h;
    }
    case Family::D: {
      std::vector<int> h(r, 2);
      h[0] = h[r - 2] = h[r - 1] = 1;
      return h;
    }
    case Family::E:
      if (r == 6) return {1, 2, 2, 3, 2, 1};
      if (r == 7) return {2, 2, 3, 4, 3, 2, 1};
      return {2, 3, 4, 6, 5, 4, 3, 2};
    case Family::F: return {2, 3, 4, 2};
    case Family::G: return {3, 2};
  }
  return {};
}

std::vector<SimpleType> parse_factors(std::string_view text) {
  std::vector<SimpleType> out;
  std::string cur;
  bool pending_separator = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == 'x' || c == 'X' || c == ',' || c == '*') {
      if (cur.empty()) throw IllegalType("empty factor in '" + std::string(text) + "'");
      out.push_back(SimpleType::parse(cur));
      cur.clear();
      pending_separator = true;
    } else {
      cur.push_back(c);
      pending_separator = false;
    }
  }
  if (pending_separator) throw IllegalType("trailing separator in '" + std::string(text) + "'");
  if (!cur.empty()) out.push_back(SimpleType::parse(cur));
  if (out.empty()) throw IllegalType("empty type string");
  return out;
}

std::string factors_name(const std::vector<SimpleType>& factors) {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "x" : "") + factors[i].name();
  return s.empty() ? "empty" : s;
}

namespace {

std::vector<std::vector<int>> adjacency(const IntMatrix& c) {
  const int k = static_cast<int>(c.rows());
  std::vector<std::vector<int>> adj(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && c(i, j) != 0) adj[i].push_back(j);
  return adj;
}

int arm_length(const std::vector<std::vector<int>>& adj, int from, int start) {
  int len = 1, prev = from, cur = start;
  for (;;) {
    int next = -1;
    for (int n : adj[cur])
      if (n != prev) next = n;
    if (next < 0) return len;
    prev = cur;
    cur = next;
    ++len;
  }
}

}  // namespace

SimpleType identify_cartan(const IntMatrix& c) {
  const int k = static_cast<int>(c.rows());
  if (k == 1) return {Family::A, 1};
  auto adj = adjacency(c);
  int edges = 0, triple = -1, double_i = -1, double_j = -1;
  for (int i = 0; i < k; ++i) {
    if (adj[i].size() > 3) throw IllegalType("Cartan matrix of infinite type");
    for (int j : adj[i]) {
      if (j < i) continue;
      ++edges;
      Int prod = c(i, j) * c(j, i);
      if (prod == 3) return {Family::G, 2};
      if (prod == 2) {
        if (double_i >= 0) throw IllegalType("Cartan matrix of infinite type");
        double_i = i;
        double_j = j;
      } else if (prod != 1) {
        throw IllegalType("Cartan matrix of infinite type");
      }
    }
    if (adj[i].size() == 3) {
      if (triple >= 0) throw IllegalType("Cartan matrix of infinite type");
      triple = i;
    }
  }
  if (edges != k - 1) throw IllegalType("Dynkin diagram is not a tree");
  if (double_i >= 0) {
    if (triple >= 0) throw IllegalType("Cartan matrix of infinite type");
    if (k == 2) return {Family::B, 2};
    const bool i_end = adj[double_i].size() == 1, j_end = adj[double_j].size() == 1;
    if (!i_end && !j_end) {
      if (k == 4) return {Family::F, 4};
      throw IllegalType("Cartan matrix of infinite type");
    }
    const int end = i_end ? double_i : double_j;
    const int inner = i_end ? double_j : double_i;
    // |<end, inner^vee>| = 2 means the end node is long.
    return std::abs(c(end, inner)) == 2 ? SimpleType{Family::C, k} : SimpleType{Family::B, k};
  }
  if (triple < 0) return {Family::A, k};
  std::vector<int> arms;
  for (int n : adj[triple]) arms.push_back(arm_length(adj, triple, n));
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return {Family::D, k};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return {Family::E, k};
  throw IllegalType("Cartan matrix of infinite type");
}

// ---------------------------------------------------------------------------
// RootSet

std::size_t RootSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

bool RootSet::subset_of(const RootSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::vector<int> RootSet::members() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i)) out.push_back(static_cast<int>(i));
  return out;
}

std::string RootSet::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (std::size_t i = 0; i < size_; i += 4) {
    int nib = 0;
    for (std::size_t b = 0; b < 4 && i + b < size_; ++b)
      if (test(i + b)) nib |= 1 << b;
    s.push_back(digits[nib]);
  }
  return s;
}

bool operator<(const RootSet& a, const RootSet& b) {
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (diff == 0) continue;
    const int bit = __builtin_ctzll(diff);
    return ((b.words_[w] >> bit) & 1u) != 0;
  }
  return false;
}

// ---------------------------------------------------------------------------
// RootSystem

namespace {

// Squared lengths of simple roots, normalised so the shortest is 1.
std::vector<Int> simple_lengths(const IntMatrix& a) {
  const int r = static_cast<int>(a.rows());
  std::vector<Rational> len(r, Rational(0));
  len[0] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int j = 0; j < r; ++j) {
      if (j == i || a(i, j) == 0 || len[j].numerator() != 0) continue;
      len[j] = len[i] * Rational(a(j, i), a(i, j));
      queue.push_back(j);
    }
  }
  Rational mn = *std::min_element(len.begin(), len.end());
  std::vector<Int> out;
  for (auto& l : len) {
    Rational v = l / mn;
    if (v.denominator() != 1) throw IllegalType("Cartan matrix is not symmetrisable over Z");
    out.push_back(v.numerator());
  }
  return out;
}

}  // namespace

RootSystem::RootSystem(std::vector<SimpleType> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw IllegalType("root system needs at least one simple factor");
  for (auto& f : factors_)
    if (!SimpleType::legal(f.family, f.rank)) throw IllegalType("illegal Dynkin type " + f.name());
  for (auto& f : factors_) {
    offsets_.push_back(rank_);
    rank_ += f.rank;
  }
  cartan_ = IntMatrix::Zero(rank_, rank_);
  for (std::size_t f = 0; f < factors_.size(); ++f)
    cartan_.block(offsets_[f], offsets_[f], factors_[f].rank, factors_[f].rank) = factors_[f].cartan();

  struct Raw {
    IntVector coeffs;
    int factor;
  };
  std::vector<Raw> raw;
  std::vector<Int> lengths(rank_);
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    const int off = offsets_[f], r = factors_[f].rank;
    IntMatrix a = factors_[f].cartan();
    auto len = simple_lengths(a);
    for (int i = 0; i < r; ++i) lengths[off + i] = len[i];
    // Reflection closure of the simple roots.
    std::set<std::vector<Int>> seen;
    std::deque<IntVector> queue;
    for (int i = 0; i < r; ++i) {
      IntVector e = IntVector::Unit(r, i);
      seen.insert(std::vector<Int>(e.data(), e.data() + r));
      queue.push_back(e);
    }
    while (!queue.empty()) {
      IntVector b = queue.front();
      queue.pop_front();
      for (int i = 0; i < r; ++i) {
        Int p = 0;
        for (int j = 0; j < r; ++j) p += b(j) * a(j, i);
        IntVector img = b;
        img(i) -= p;
        std::vector<Int> key(img.data(), img.data() + r);
        if (seen.insert(key).second) queue.push_back(img);
      }
    }
    for (auto& key : seen) {
      IntVector full = IntVector::Zero(rank_);
      for (int i = 0; i < r; ++i) full(off + i) = key[i];
      raw.push_back({full, static_cast<int>(f)});
    }
  }

  for (auto& rw : raw) {
    Root root;
    root.coeffs = rw.coeffs;
    root.factor = rw.factor;
    root.height = static_cast<int>(rw.coeffs.sum());
    // 2 (beta, beta) = sum b_i b_j A_ij L_j
    Int twice = 0;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) twice += rw.coeffs(i) * rw.coeffs(j) * cartan_(i, j) * lengths[j];
    const Int len = twice / 2;
    root.length = static_cast<int>(len);
    root.coroot = IntVector::Zero(rank_);
    for (int j = 0; j < rank_; ++j) {
      Int num = rw.coeffs(j) * lengths[j];
      if (num % len != 0) throw Error("internal: non-integral coroot");
      root.coroot(j) = num / len;
    }
    roots_.push_back(std::move(root));
  }
  std::sort(roots_.begin(), roots_.end(), [](const Root& x, const Root& y) {
    if (x.height != y.height) return x.height < y.height;
    return lex_less(x.coeffs, y.coeffs);
  });
  for (int i = 0; i < num_roots(); ++i) {
    const auto& c = roots_[i].coeffs;
    index_[std::vector<Int>(c.data(), c.data() + rank_)] = i;
  }
  negation_.resize(roots_.size());
  for (int i = 0; i < num_roots(); ++i) negation_[i] = find(-roots_[i].coeffs);
  simple_.resize(rank_);
  for (int j = 0; j < rank_; ++j) simple_[j] = find(IntVector::Unit(rank_, j));
}

RootSystem build_root_system(const std::vector<SimpleType>& factors) { return RootSystem(factors); }

int RootSystem::find(const IntVector& coeffs) const {
  auto it = index_.find(std::vector<Int>(coeffs.data(), coeffs.data() + coeffs.size()));
  return it == index_.end() ? -1 : it->second;
}

IntVector RootSystem::coroot_coweight(int root) const { return cartan_ * roots_[root].coroot; }

Int RootSystem::pairing(int beta, int alpha) const {
  return roots_[beta].coeffs.dot(coroot_coweight(alpha));
}

std::vector<std::uint16_t> RootSystem::reflection_permutation(int alpha) const {
  const IntVector cv = coroot_coweight(alpha);
  const IntVector& a = roots_[alpha].coeffs;
  std::vector<std::uint16_t> perm(roots_.size());
  for (int b = 0; b < num_roots(); ++b) {
    IntVector img = roots_[b].coeffs - roots_[b].coeffs.dot(cv) * a;
    perm[b] = static_cast<std::uint16_t>(find(img));
  }
  return perm;
}

RootSet RootSystem::all() const {
  RootSet s(roots_.size());
  for (std::size_t i = 0; i < roots_.size(); ++i) s.set(i);
  return s;
}

RootSet RootSystem::factor_roots(int f) const {
  RootSet s(roots_.size());
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i].factor == f) s.set(i);
  return s;
}

int RootSystem::highest_root(int f) const {
  int best = -1;
  for (int i = 0; i < num_roots(); ++i)
    if (roots_[i].factor == f && (best < 0 || roots_[i].height > roots_[best].height)) best = i;
  return best;
}

std::vector<Int> highest_root_coefficients(const RootSystem& rs, int factor) {
  const int h = rs.highest_root(factor);
  const int off = rs.factor_offset(factor);
  std::vector<Int> out;
  for (int i = 0; i < rs.factor_rank(factor); ++i) out.push_back(rs.root(h).coeffs(off + i));
  return out;
}

std::vector<int> exponents(const RootSystem& rs, int factor) {
  std::vector<int> per_height;
  for (const auto& root : rs.roots()) {
    if (root.factor != factor || root.height <= 0) continue;
    if (static_cast<int>(per_height.size()) <= root.height) per_height.resize(root.height + 1, 0);
    ++per_height[root.height];
  }
  per_height.push_back(0);
  // The multiplicity of exponent k is n_k - n_{k+1} (dual partition).
  std::vector<int> out;
  for (std::size_t k = 1; k + 1 < per_height.size(); ++k)
    for (int m = 0; m < per_height[k] - per_height[k + 1]; ++m) out.push_back(static_cast<int>(k));
  return out;
}

std::uint64_t weyl_order_from_degrees(const RootSystem& rs) {
  std::uint64_t order = 1;
  for (std::size_t f = 0; f < rs.factors().size(); ++f)
    for (int m : exponents(rs, static_cast<int>(f))) order *= static_cast<std::uint64_t>(m + 1);
  return order;
}

std::uint64_t weyl_order(const SimpleType& t) { return weyl_order_from_degrees(RootSystem({t})); }

// ---------------------------------------------------------------------------
// Subsystems

bool is_symmetric(const RootSystem& rs, const RootSet& set) {
  for (int i : set.members())
    if (!set.test(rs.negative(i))) return false;
  return true;
}

bool is_closed(const RootSystem& rs, const RootSet& set) {
  auto m = set.members();
  for (int a : m)
    for (int b : m) {
      int s = rs.find(rs.root(a).coeffs + rs.root(b).coeffs);
      if (s >= 0 && !set.test(s)) return false;
    }
  return true;
}

RootSet closure(const RootSystem& rs, const RootSet& set) {
  RootSet cur = set;
  for (int i : set.members()) cur.set(rs.negative(i));
  for (bool grew = true; grew;) {
    grew = false;
    auto m = cur.members();
    for (int a : m)
      for (int b : m) {
        int s = rs.find(rs.root(a).coeffs + rs.root(b).coeffs);
        if (s >= 0 && !cur.test(s)) {
          cur.set(s);
          cur.set(rs.negative(s));
          grew = true;
        }
      }
  }
  return cur;
}

std::vector<int> subsystem_base(const RootSystem& rs, const RootSet& set) {
  std::vector<int> pos;
  for (int i : set.members())
    if (rs.positive(i)) pos.push_back(i);
  RootSet decomposable(rs.num_roots());
  for (std::size_t x = 0; x < pos.size(); ++x)
    for (std::size_t y = x; y < pos.size(); ++y) {
      int s = rs.find(rs.root(pos[x]).coeffs + rs.root(pos[y]).coeffs);
      if (s >= 0 && set.test(s)) decomposable.set(s);
    }
  std::vector<int> base;
  for (int i : pos)
    if (!decomposable.test(i)) base.push_back(i);
  return base;
}

int subsystem_rank(const RootSystem& rs, const RootSet& set) {
  auto m = set.members();
  if (m.empty()) return 0;
  IntMatrix rows(static_cast<Eigen::Index>(m.size()), rs.rank());
  for (std::size_t i = 0; i < m.size(); ++i) rows.row(i) = rs.root(m[i]).coeffs.transpose();
  return rank(rows);
}

std::vector<SimpleType> subsystem_components(const RootSystem& rs, const RootSet& set) {
  auto base = subsystem_base(rs, set);
  const int k = static_cast<int>(base.size());
  IntMatrix c(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) c(i, j) = rs.pairing(base[i], base[j]);
  std::vector<int> comp(k, -1);
  int ncomp = 0;
  for (int s = 0; s < k; ++s) {
    if (comp[s] >= 0) continue;
    std::deque<int> queue{s};
    comp[s] = ncomp;
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      for (int j = 0; j < k; ++j)
        if (comp[j] < 0 && c(i, j) != 0) {
          comp[j] = ncomp;
          queue.push_back(j);
        }
    }
    ++ncomp;
  }
  std::vector<SimpleType> out;
  for (int cc = 0; cc < ncomp; ++cc) {
    std::vector<int> idx;
    for (int i = 0; i < k; ++i)
      if (comp[i] == cc) idx.push_back(i);
    IntMatrix sub(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) sub(a, b) = c(idx[a], idx[b]);
    out.push_back(identify_cartan(sub));
  }
  std::sort(out.begin(), out.end(), [](const SimpleType& a, const SimpleType& b) {
    if (a.family != b.family) return a.family < b.family;
    return a.rank < b.rank;
  });
  return out;
}

std::string subsystem_type(const RootSystem& rs, const RootSet& set) {
  auto comps = subsystem_components(rs, set);
  return comps.empty() ? "empty" : factors_name(comps);
}

std::uint64_t subsystem_weyl_order(const RootSystem& rs, const RootSet& set) {
  std::uint64_t o = 1;
  for (auto& t : subsystem_components(rs, set)) o *= weyl_order(t);
  return o;
}

// ---------------------------------------------------------------------------
// Group data

Lattice coroot_lattice(const RootSystem& rs) { return {rs.cartan(), "coroot"}; }

Lattice coweight_lattice(const RootSystem& rs) { return {IntMatrix::Identity(rs.rank(), rs.rank()), "coweight"}; }

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<Int, int>> prime_power(Int q) {
  if (q < 2) return std::nullopt;
  Int p = 2;
  while (q % p != 0) ++p;
  int k = 0;
  Int rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) return std::nullopt;
  return std::make_pair(p, k);
}

GroupDatum::GroupDatum(RootSystem rs, Lattice cochar, Int p) : rs_(std::move(rs)), cochar_(std::move(cochar)), p_(p) {
  const int r = rs_.rank();
  if (cochar_.basis.rows() != r || cochar_.basis.cols() != r)
    throw InvalidDatum("cocharacter lattice basis must be " + std::to_string(r) + "x" + std::to_string(r));
  basis_det_ = determinant(cochar_.basis);
  if (basis_det_ == 0) throw InvalidDatum("cocharacter lattice is not of full rank");
  if (!cochar_.contains(coroot_lattice(rs_)))
    throw NotASublattice("cocharacter lattice does not contain the coroot lattice");
  if (!is_prime(p_)) throw BadCharacteristic("characteristic " + std::to_string(p_) + " is not prime");
  basis_adj_ = adjugate(cochar_.basis);
  root_char_matrix_ = IntMatrix(rs_.num_roots(), r);
  for (int i = 0; i < rs_.num_roots(); ++i) {
    IntVector chi = cochar_.basis.transpose() * rs_.root(i).coeffs;
    root_chars_.push_back(chi);
    root_char_matrix_.row(i) = chi.transpose();
  }
}

GroupDatum GroupDatum::simply_connected(const RootSystem& rs, Int p) {
  Lattice l = coroot_lattice(rs);
  l.name = "sc";
  return GroupDatum(rs, l, p);
}

GroupDatum GroupDatum::adjoint(const RootSystem& rs, Int p) {
  Lattice l = coweight_lattice(rs);
  l.name = "ad";
  return GroupDatum(rs, l, p);
}

IntMatrix GroupDatum::cochar_action(const IntMatrix& m) const {
  IntMatrix num = basis_adj_ * m * cochar_.basis;
  for (Eigen::Index i = 0; i < num.size(); ++i) {
    if (num.data()[i] % basis_det_ != 0) throw Error("internal: Weyl element does not preserve X_*");
    num.data()[i] /= basis_det_;
  }
  return num;
}

std::string GroupDatum::describe() const {
  return factors_name(rs_.factors()) + "/" + cochar_.name + "/p=" + std::to_string(p_);
}

GroupDatum make_group(std::string_view factors, std::string_view lattice, Int p) {
  auto rs = build_root_system(parse_factors(factors));
  if (lattice == "sc") return GroupDatum::simply_connected(rs, p);
  if (lattice == "ad") return GroupDatum::adjoint(rs, p);
  throw ConfigError("unknown lattice '" + std::string(lattice) + "' (expected sc or ad)");
}

VeryGoodVerdict very_good_check(const std::vector<SimpleType>& factors, Int p) {
  VeryGoodVerdict v;
  auto fail = [&](const SimpleType& t, const std::string& why) {
    v.ok = false;
    v.reasons.push_back(t.name() + ": " + why);
  };
  if (!is_prime(p)) {
    v.ok = false;
    v.reasons.push_back("p = " + std::to_string(p) + " is not prime");
    return v;
  }
  for (const auto& t : factors) {
    switch (t.family) {
      case Family::A:
        if ((t.rank + 1) % p == 0) fail(t, "p | n (n = " + std::to_string(t.rank + 1) + ")");
        break;
      case Family::B:
      case Family::C:
      case Family::D:
        if (p == 2) fail(t, "p = 2");
        break;
      case Family::E:
        if (p == 2 || p == 3 || (t.rank == 8 && p == 5)) fail(t, "p = " + std::to_string(p));
        break;
      case Family::F:
      case Family::G:
        if (p == 2 || p == 3) fail(t, "p = " + std::to_string(p));
        break;
    }
  }
  return v;
}

VeryGoodVerdict very_good_check(const GroupDatum& g) { return very_good_check(g.roots().factors(), g.p()); }

Int pi1_order(const GroupDatum& g) { return lattice_quotient(g.cochar(), coroot_lattice(g.roots())).order(); }

Int pi1_order(const GroupDatum& g, const RootSet& sub) {
  const auto& rs = g.roots();
  if (subsystem_rank(rs, sub) < rs.rank()) throw NotFullRank("subsystem is not of full rank");
  auto base = subsystem_base(rs, sub);
  IntMatrix b(rs.rank(), static_cast<Eigen::Index>(base.size()));
  for (std::size_t i = 0; i < base.size(); ++i) b.col(i) = rs.coroot_coweight(base[i]);
  return lattice_quotient(g.cochar(), Lattice{b, "subsystem coroot"}).order();
}

Int geometric_center_order(const GroupDatum& g, const RootSet& sub) {
  const auto& rs = g.roots();
  auto base = subsystem_base(rs, sub);
  if (static_cast<int>(base.size()) < rs.rank()) throw NotFullRank("subsystem does not span the coweight space");
  IntMatrix rows(static_cast<Eigen::Index>(base.size()), rs.rank());
  for (std::size_t i = 0; i < base.size(); ++i) rows.row(i) = g.root_character(base[i]).transpose();
  return quotient_by_rows(rows).order();
}

}  // namespace coendo
