#pragma once

// Fixture access and small independent oracles shared by the test binaries.
// Oracles here use plain int64 arithmetic and brute force on purpose; they
// must not call into the library code they check.

#include "cytoric/io.hpp"
#include "cytoric/polytope.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace testing_support {

using namespace cytoric;

inline std::string fixture(const std::string &name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

inline std::vector<MPoint> load(const std::string &name) {
  return read_polytope_file(fixture(name));
}

/// Reflexive 4-dimensional fixtures with their documented Hodge numbers.
inline const std::vector<std::string> &reflexive_4d() {
  static const std::vector<std::string> names = {
      "example_s3.poly", "quintic.poly", "quintic_mirror.poly", "cube.poly",
      "cross.poly"};
  return names;
}

inline std::vector<std::string> polygon_fixtures() {
  std::vector<std::string> out;
  for (int i = 1; i <= 16; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "polygons/p%02d.poly", i);
    out.emplace_back(buf);
  }
  return out;
}

using Vec = std::vector<std::int64_t>;

inline Vec to_vec(const MPoint &p) {
  Vec v;
  for (const auto &c : p.coords()) v.push_back(c.convert_to<std::int64_t>());
  return v;
}

inline std::vector<Vec> to_vecs(const std::vector<MPoint> &pts) {
  std::vector<Vec> out;
  for (const auto &p : pts) out.push_back(to_vec(p));
  return out;
}

inline std::int64_t dot(const Vec &a, const Vec &b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Calls f on every integer point of the box [-b, b]^dim.
template <class F> void for_box(std::size_t dim, std::int64_t b, F &&f) {
  Vec x(dim, -b);
  while (true) {
    f(x);
    std::size_t i = 0;
    while (i < dim && x[i] == b) x[i++] = -b;
    if (i == dim) return;
    ++x[i];
  }
}

/// Lattice points y with <x, y> >= -k for every x in `gens`, i.e. of k times
/// the dual of conv(gens), searched in [-bound, bound]^dim.
inline std::size_t count_dual_dilate(const std::vector<Vec> &gens,
                                     std::int64_t k, std::int64_t bound) {
  std::size_t n = 0;
  for_box(gens[0].size(), bound, [&](const Vec &y) {
    for (const auto &x : gens)
      if (dot(x, y) < -k) return;
    ++n;
  });
  return n;
}

/// Normalized volume d! vol of the dual of conv(gens) from the leading
/// Ehrhart coefficient: the d-th forward difference of L(k), k = 0..d.
inline std::int64_t dual_normalized_volume(const std::vector<Vec> &gens,
                                           std::int64_t bound) {
  const std::size_t d = gens[0].size();
  std::int64_t total = 0, binom = 1;
  for (std::size_t k = 0; k <= d; ++k) {
    const std::int64_t sign = ((d - k) % 2 == 0) ? 1 : -1;
    total += sign * binom *
             static_cast<std::int64_t>(count_dual_dilate(
                 gens, static_cast<std::int64_t>(k), bound * (std::int64_t)k));
    binom = binom * static_cast<std::int64_t>(d - k) /
            static_cast<std::int64_t>(k + 1);
  }
  return total;
}

/// Exact rank of an int64 matrix by fraction-free elimination in int64
/// (entries stay small for the matrices used here).
inline std::size_t rank_i64(std::vector<Vec> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      const std::int64_t f = a[i][c], g = a[r][c];
      std::int64_t h = 0;
      for (std::size_t j = 0; j < cols; ++j) {
        a[i][j] = a[i][j] * g - a[r][j] * f;
        h = std::gcd(h, a[i][j]);
      }
      if (h > 1)
        for (auto &x : a[i]) x /= h;
    }
    ++r;
  }
  return r;
}

/// Affine dimension of a point set.
inline int affine_dim(const std::vector<Vec> &pts) {
  if (pts.empty()) return -1;
  std::vector<Vec> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Vec d(pts[0].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
    diffs.push_back(d);
  }
  return static_cast<int>(rank_i64(diffs));
}

/// f-vector by brute force: faces are argmax sets of linear functionals with
/// entries in [-b, b]; sufficient for the small symmetric polytopes used.
inline std::vector<std::size_t> brute_f_vector(const std::vector<Vec> &verts,
                                               std::int64_t b) {
  const std::size_t d = verts[0].size();
  std::set<std::vector<std::size_t>> faces;
  for_box(d, b, [&](const Vec &c) {
    if (std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; })) return;
    std::int64_t best = dot(c, verts[0]);
    for (const auto &v : verts) best = std::max(best, dot(c, v));
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (dot(c, verts[i]) == best) s.push_back(i);
    faces.insert(s);
  });
  std::vector<std::size_t> f(d, 0);
  for (const auto &s : faces) {
    std::vector<Vec> pts;
    for (auto i : s) pts.push_back(verts[i]);
    ++f[static_cast<std::size_t>(affine_dim(pts))];
  }
  return f;
}

/// Random unimodular matrix as a product of elementary operations.
inline std::vector<Vec> random_unimodular(std::mt19937 &rng, std::size_t d,
                                          int steps = 6) {
  std::vector<Vec> u(d, Vec(d, 0));
  for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);
  std::uniform_int_distribution<int> coef(-1, 1);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) {
      for (auto &x : u[i]) x = -x;
      continue;
    }
    const int c = coef(rng);
    for (std::size_t k = 0; k < d; ++k) u[i][k] += c * u[j][k];
  }
  return u;
}

inline std::vector<MPoint> transform(const std::vector<Vec> &u,
                                     const std::vector<MPoint> &pts) {
  std::vector<MPoint> out;
  for (const auto &p : pts) {
    const Vec v = to_vec(p);
    std::vector<Integer> w;
    for (const auto &row : u) w.emplace_back(dot(row, v));
    out.emplace_back(std::move(w));
  }
  return out;
}

/// h11 of the pair from scratch in int64. A boundary point y of the fan
/// polytope is tight (<x, y> = -1) on a set T of vertices x of Delta, and T
/// spans the dual face of y's carrier. |T| spanning a point means y is
/// interior to a facet; T spanning a segment means y is interior to a
/// 2-face whose dual edge has gcd(b - a) - 1 interior points.
inline long long h11_oracle(const std::vector<Vec> &gens, std::int64_t bound) {
  std::int64_t l = 0, facet_interior = 0, pairing_term = 0;
  for_box(gens[0].size(), bound, [&](const Vec &y) {
    for (const auto &x : gens)
      if (dot(x, y) < -1) return;
    ++l;
    std::vector<Vec> tight;
    for (const auto &x : gens)
      if (dot(x, y) == -1) tight.push_back(x);
    if (tight.empty()) return;
    const int dual_dim = affine_dim(tight);
    if (dual_dim == 0) ++facet_interior;
    if (dual_dim == 1) {
      if (tight.size() != 2) throw std::logic_error("edge with extra vertices");
      std::int64_t g = 0;
      for (std::size_t i = 0; i < tight[0].size(); ++i)
        g = std::gcd(g, tight[1][i] - tight[0][i]);
      pairing_term += g - 1;
    }
  });
  return l - 5 - facet_interior + pairing_term;
}

/// Coefficient of H^2 in (1 + H)^5 / (1 + 5H), by series division.
inline std::int64_t quintic_c2_coefficient() {
  std::array<std::int64_t, 3> num{1, 5, 10}, q{};
  // q * (1 + 5H) = num mod H^3
  q[0] = num[0];
  q[1] = num[1] - 5 * q[0];
  q[2] = num[2] - 5 * q[1];
  return q[2];
}

/// c2 . H_1 for the anticanonical hypersurface in (P^1)^4 by expansion in
/// Q[H_1..H_4] / (H_i^2): c(Z) = prod (1 + H_i)^2 / (1 + 2 sum H_i), then
/// multiply the degree-2 part by H_1 and 2 sum H_i and read H_1H_2H_3H_4.
inline std::int64_t p1_fourth_c2_dot_h1() {
  using Poly = std::array<std::int64_t, 16>; // indexed by monomial bitmask
  auto mul = [](const Poly &a, const Poly &b) {
    Poly c{};
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j)
        if ((i & j) == 0) c[i | j] += a[i] * b[j];
    return c;
  };
  Poly one{};
  one[0] = 1;
  Poly num = one;
  for (int i = 0; i < 4; ++i) {
    Poly f = one;
    f[1 << i] = 2; // (1 + H_i)^2 = 1 + 2 H_i
    num = mul(num, f);
  }
  Poly s{}; // 2 sum H_i
  for (int i = 0; i < 4; ++i) s[1 << i] = 2;
  // 1 / (1 + s) = sum (-s)^k, nilpotent after degree 4
  Poly inv = one, term = one;
  for (int k = 1; k <= 4; ++k) {
    term = mul(term, s);
    for (int i = 0; i < 16; ++i) inv[i] += (k % 2 ? -1 : 1) * term[i];
  }
  Poly c = mul(num, inv);
  Poly c2{};
  for (int i = 0; i < 16; ++i)
    if (__builtin_popcount(i) == 2) c2[i] = c[i];
  Poly h1{};
  h1[1] = 1;
  return mul(mul(c2, h1), s)[15];
}

} // namespace testing_support
