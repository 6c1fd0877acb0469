#pragma once

// Small dense exact linear algebra over Z and Q. Matrices here are at most a
// few thousand entries, so plain Gaussian elimination is enough.

#include "cytoric/lattice.hpp"

#include <optional>
#include <vector>

namespace cytoric::linalg {

using RatMatrix = std::vector<std::vector<Rational>>;
using IntMatrix = std::vector<std::vector<Integer>>;

template <class Tag>
std::vector<Rational> to_rational(const LatticePoint<Tag> &p) {
  std::vector<Rational> out;
  out.reserve(p.dim());
  for (const auto &c : p.coords()) out.emplace_back(c);
  return out;
}

inline RatMatrix to_rational(const IntMatrix &a) {
  RatMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i].assign(a[i].begin(), a[i].end());
  return out;
}

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(RatMatrix &a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RatMatrix a) { return rref(a).size(); }
inline std::size_t rank(const IntMatrix &a) { return rank(to_rational(a)); }

/// Basis of {x : a x = 0}; `cols` is needed when `a` has no rows.
inline std::vector<std::vector<Rational>> nullspace(RatMatrix a,
                                                    std::size_t cols) {
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of a x = b, or nullopt when inconsistent. Free variables are
/// set to zero, so the answer is unique whenever a has full column rank.
inline std::optional<std::vector<Rational>>
solve(const RatMatrix &a, const std::vector<Rational> &b, std::size_t cols) {
  RatMatrix aug(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  const auto pivots = rref(aug);
  std::vector<Rational> x(cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;
    x[pivots[r]] = aug[r][cols];
  }
  return x;
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Integer determinant(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

template <class Tag>
IntMatrix rows_of(std::span<const LatticePoint<Tag>> pts) {
  IntMatrix m;
  m.reserve(pts.size());
  for (const auto &p : pts) m.emplace_back(p.coords().begin(), p.coords().end());
  return m;
}

/// Dimension of the affine hull of `pts` (-1 for the empty set).
template <class Tag>
int affine_dimension(std::span<const LatticePoint<Tag>> pts) {
  if (pts.empty()) return -1;
  IntMatrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    auto d = pts[i] - pts[0];
    diffs.emplace_back(d.coords().begin(), d.coords().end());
  }
  return diffs.empty() ? 0 : static_cast<int>(rank(diffs));
}

/// Scales a rational vector to the primitive integer vector on its ray.
inline std::vector<Integer> primitive_integer(const std::vector<Rational> &v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer l = 1;
  for (const auto &q : v) l = boost::multiprecision::lcm(l, denominator(q));
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto &q : v) out.push_back(numerator(Rational(q * l)));
  Integer g = gcd(out);
  if (g != 0)
    for (auto &c : out) c /= g;
  return out;
}

} // namespace cytoric::linalg
