#pragma once

// Exact integer linear algebra on small dense matrices.

#include <Eigen/Core>
#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coendo {

using Int = std::int64_t;
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using Rational = boost::rational<Int>;

/// Non-negative remainder of a modulo n (n > 0).
inline Int mod(Int a, Int n) {
  Int r = a % n;
  return r < 0 ? r + n : r;
}

Int gcd(Int a, Int b);
Int lcm(Int a, Int b);

/// Overflow-checked arithmetic; throws coendo::Error on overflow.
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);

/// Rank over Q.
int rank(const IntMatrix& m);

/// Determinant via fraction-free elimination.
Int determinant(const IntMatrix& m);

/// Solves a * x = b for square invertible `a`. Returns nullopt when the
/// unique rational solution is not integral. Throws if `a` is singular.
std::optional<IntMatrix> solve_integral(const IntMatrix& a, const IntMatrix& b);

/// Rational solution of a * x = b (square invertible `a`), row-major.
std::vector<std::vector<Rational>> solve_rational(const IntMatrix& a, const IntMatrix& b);

/// Adjugate matrix, so that a * adjugate(a) = det(a) * I.
IntMatrix adjugate(const IntMatrix& a);

/// u * a * v = d with u, v unimodular and d diagonal, d(i,i) | d(i+1,i+1),
/// diagonal entries non-negative.
struct SmithForm {
  IntMatrix d;
  IntMatrix u, u_inv;
  IntMatrix v, v_inv;
  std::vector<Int> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Lexicographic comparison of integer vectors of equal length.
bool lex_less(const IntVector& a, const IntVector& b);

std::string to_string(const IntVector& v);

}  // namespace coendo
