#pragma once

// Test-only reference computations, kept independent of the library paths
// they check.

#include "coendo/matrix.hpp"

#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using coendo::Int;
using coendo::IntMatrix;

/// Positive roots of an irreducible Cartan matrix via root strings: for a
/// positive root b and simple root a_i, b + a_i is a root iff the lower end
/// of the a_i-string through b, p, satisfies p - <b, a_i^vee> > 0.
inline std::set<std::vector<Int>> positive_roots_by_strings(const IntMatrix& a) {
  const int r = static_cast<int>(a.rows());
  std::set<std::vector<Int>> roots;
  std::vector<std::vector<Int>> layer;
  for (int i = 0; i < r; ++i) {
    std::vector<Int> e(r, 0);
    e[i] = 1;
    layer.push_back(e);
    roots.insert(e);
  }
  while (!layer.empty()) {
    std::vector<std::vector<Int>> next;
    for (const auto& b : layer) {
      for (int i = 0; i < r; ++i) {
        Int p = 0;
        for (;;) {
          std::vector<Int> down = b;
          down[i] -= p + 1;
          if (!roots.count(down)) break;
          ++p;
        }
        Int pairing = 0;
        for (int j = 0; j < r; ++j) pairing += b[j] * a(j, i);
        if (p - pairing > 0) {
          std::vector<Int> up = b;
          up[i] += 1;
          if (roots.insert(up).second) next.push_back(up);
        }
      }
    }
    layer = std::move(next);
  }
  return roots;
}

/// Random unimodular matrix built from elementary operations.
inline IntMatrix random_unimodular(int n, std::mt19937_64& rng, int steps = 12) {
  IntMatrix m = IntMatrix::Identity(n, n);
  if (n < 2) return m;
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    m.row(i) += coef(rng) * m.row(j);
  }
  return m;
}

inline int cyclotomic_degree(Int n) {
  int phi = 0;
  for (Int k = 1; k <= n; ++k) {
    Int a = k, b = n;
    while (b) {
      Int t = a % b;
      a = b;
      b = t;
    }
    if (a == 1) ++phi;
  }
  return phi;
}

}  // namespace oracle
