#include "coendo/matrix.hpp"

#include "coendo/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace coendo {

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(std::abs(a) / gcd(a, b), std::abs(b));
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in addition");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in multiplication");
  return r;
}

namespace {

using RatRows = std::vector<std::vector<Rational>>;

RatRows to_rational(const IntMatrix& m) {
  RatRows out(m.rows(), std::vector<Rational>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = Rational(m(i, j));
  return out;
}

// Reduces `rows` to row echelon form in place; returns the rank.
int echelon(RatRows& rows, std::size_t cols) {
  int rank = 0;
  const std::size_t n = rows.size();
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < n; ++c) {
    std::size_t pivot = rank;
    while (pivot < n && rows[pivot][c].numerator() == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < n; ++r) {
      if (rows[r][c].numerator() == 0) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int rank(const IntMatrix& m) {
  RatRows rows = to_rational(m);
  return echelon(rows, static_cast<std::size_t>(m.cols()));
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.row(k).swap(a.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = (checked_mul(a(i, j), a(k, k)) - checked_mul(a(i, k), a(k, j))) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<std::vector<Rational>> solve_rational(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows()) throw Error("solve: shape mismatch");
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  RatRows aug(n, std::vector<Rational>(n + m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a(i, j);
    for (std::size_t j = 0; j < m; ++j) aug[i][n + j] = b(i, j);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && aug[pivot][c].numerator() == 0) ++pivot;
    if (pivot == n) throw Error("solve: singular matrix");
    std::swap(aug[pivot], aug[c]);
    Rational inv = Rational(1) / aug[c][c];
    for (auto& x : aug[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || aug[r][c].numerator() == 0) continue;
      Rational f = aug[r][c];
      for (std::size_t k = c; k < n + m; ++k) aug[r][k] -= f * aug[c][k];
    }
  }
  RatRows x(n, std::vector<Rational>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) x[i][j] = aug[i][n + j];
  return x;
}

std::optional<IntMatrix> solve_integral(const IntMatrix& a, const IntMatrix& b) {
  auto x = solve_rational(a, b);
  IntMatrix out(a.cols(), b.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      if (x[i][j].denominator() != 1) return std::nullopt;
      out(i, j) = x[i][j].numerator();
    }
  return out;
}

IntMatrix adjugate(const IntMatrix& a) {
  const Int det = determinant(a);
  if (det == 0) throw Error("adjugate of a singular matrix");
  auto inv = solve_rational(a, IntMatrix::Identity(a.rows(), a.cols()));
  IntMatrix out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      Rational v = inv[i][j] * det;
      out(i, j) = v.numerator();
    }
  return out;
}

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> out;
  for (Eigen::Index i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

namespace {

// Row and column operations applied simultaneously to d and the
// transformation matrices so that u * a * v = d holds throughout.
struct SmithWork {
  SmithForm f;

  void swap_rows(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    f.d.row(i).swap(f.d.row(j));
    f.u.row(i).swap(f.u.row(j));
    f.u_inv.col(i).swap(f.u_inv.col(j));
  }
  void swap_cols(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    f.d.col(i).swap(f.d.col(j));
    f.v.col(i).swap(f.v.col(j));
    f.v_inv.row(i).swap(f.v_inv.row(j));
  }
  // row_i += k * row_j
  void add_row(Eigen::Index i, Eigen::Index j, Int k) {
    if (k == 0) return;
    for (Eigen::Index c = 0; c < f.d.cols(); ++c) f.d(i, c) = checked_add(f.d(i, c), checked_mul(k, f.d(j, c)));
    for (Eigen::Index c = 0; c < f.u.cols(); ++c) f.u(i, c) = checked_add(f.u(i, c), checked_mul(k, f.u(j, c)));
    for (Eigen::Index r = 0; r < f.u_inv.rows(); ++r)
      f.u_inv(r, j) = checked_add(f.u_inv(r, j), checked_mul(-k, f.u_inv(r, i)));
  }
  // col_i += k * col_j
  void add_col(Eigen::Index i, Eigen::Index j, Int k) {
    if (k == 0) return;
    for (Eigen::Index r = 0; r < f.d.rows(); ++r) f.d(r, i) = checked_add(f.d(r, i), checked_mul(k, f.d(r, j)));
    for (Eigen::Index r = 0; r < f.v.rows(); ++r) f.v(r, i) = checked_add(f.v(r, i), checked_mul(k, f.v(r, j)));
    for (Eigen::Index c = 0; c < f.v_inv.cols(); ++c)
      f.v_inv(j, c) = checked_add(f.v_inv(j, c), checked_mul(-k, f.v_inv(i, c)));
  }
  void negate_row(Eigen::Index i) {
    f.d.row(i) *= -1;
    f.u.row(i) *= -1;
    f.u_inv.col(i) *= -1;
  }
};

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  SmithWork w;
  w.f.d = a;
  w.f.u = w.f.u_inv = IntMatrix::Identity(m, m);
  w.f.v = w.f.v_inv = IntMatrix::Identity(n, n);
  IntMatrix& d = w.f.d;

  for (Eigen::Index k = 0; k < std::min(m, n); ++k) {
    for (;;) {
      // Smallest non-zero entry of the trailing block becomes the pivot.
      Eigen::Index pr = -1, pc = -1;
      for (Eigen::Index i = k; i < m; ++i)
        for (Eigen::Index j = k; j < n; ++j)
          if (d(i, j) != 0 && (pr < 0 || std::abs(d(i, j)) < std::abs(d(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr < 0) return w.f;
      w.swap_rows(k, pr);
      w.swap_cols(k, pc);

      bool clean = true;
      for (Eigen::Index i = k + 1; i < m; ++i) {
        w.add_row(i, k, -floor_div(d(i, k), d(k, k)));
        if (d(i, k) != 0) clean = false;
      }
      for (Eigen::Index j = k + 1; j < n; ++j) {
        w.add_col(j, k, -floor_div(d(k, j), d(k, k)));
        if (d(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the rest of the block.
      Eigen::Index bad_row = -1;
      for (Eigen::Index i = k + 1; i < m && bad_row < 0; ++i)
        for (Eigen::Index j = k + 1; j < n; ++j)
          if (d(i, j) % d(k, k) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row < 0) break;
      w.add_row(k, bad_row, 1);
    }
    if (d(k, k) < 0) w.negate_row(k);
  }
  return w.f;
}

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
  os << ']';
  return os.str();
}

}  // namespace coendo
