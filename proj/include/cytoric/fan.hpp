#pragma once

// Complete fans in N: face fans of reflexive polytopes, fine regular crepant
// (MPCP) triangulations of their boundary, and divisor audits on them.

#include "cytoric/lattice.hpp"
#include "cytoric/linalg.hpp"
#include "cytoric/polytope.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace cytoric {

enum class FanProvenance { FaceFan, Refinement };

/// A cone of a fan, given by indices into the fan's ray list.
struct FanCone {
  IndexSet rays;
  int dim = 0;
};

struct Wall {
  IndexSet rays;
  std::size_t left = 0;  // incident maximal cones
  std::size_t right = 0; // npos when only one cone contains the wall
};

namespace detail {

inline linalg::IntMatrix ray_matrix(const std::vector<NPoint> &rays,
                                    const IndexSet &idx) {
  linalg::IntMatrix m;
  for (auto i : idx)
    m.emplace_back(rays[i].coords().begin(), rays[i].coords().end());
  return m;
}

} // namespace detail

/// Fan with primitive rays and a list of maximal cones. Simplicial fans
/// derive their faces as subsets; non-simplicial ones are given explicitly.
class Fan {
public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  /// Simplicial fan; faces are all subsets of maximal cones.
  Fan(std::size_t dim, std::vector<NPoint> rays,
      std::vector<IndexSet> max_cones, FanProvenance provenance)
      : dim_(dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)),
        provenance_(provenance) {
    validate();
    std::set<IndexSet> seen;
    for (const auto &c : max_cones_) {
      if (linalg::rank(detail::ray_matrix(rays_, c)) != c.size())
        throw DomainError("fan: maximal cone is not simplicial");
      const std::size_t k = c.size();
      for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        IndexSet sub;
        for (std::size_t b = 0; b < k; ++b)
          if (mask & (std::size_t{1} << b)) sub.push_back(c[b]);
        seen.insert(std::move(sub));
      }
    }
    for (auto &s : seen) faces_.push_back({s, static_cast<int>(s.size())});
    finish();
  }

  /// Fan with an explicit face list (each a ray index set).
  Fan(std::size_t dim, std::vector<NPoint> rays,
      std::vector<IndexSet> max_cones, std::vector<IndexSet> faces,
      FanProvenance provenance)
      : dim_(dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)),
        provenance_(provenance) {
    validate();
    for (auto &f : faces) {
      int d = static_cast<int>(linalg::rank(detail::ray_matrix(rays_, f)));
      faces_.push_back({std::move(f), d});
    }
    finish();
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::vector<NPoint> &rays() const { return rays_; }
  [[nodiscard]] const std::vector<IndexSet> &max_cones() const {
    return max_cones_;
  }
  /// All nonempty cones (the origin cone excluded), ordered by (dim, rays).
  [[nodiscard]] const std::vector<FanCone> &faces() const { return faces_; }
  [[nodiscard]] FanProvenance provenance() const { return provenance_; }

  [[nodiscard]] bool is_simplicial() const {
    return std::all_of(max_cones_.begin(), max_cones_.end(),
                       [&](const auto &c) { return c.size() == dim_; });
  }

  [[nodiscard]] std::size_t ray_index(const NPoint &p) const {
    auto it = std::lower_bound(rays_.begin(), rays_.end(), p);
    return (it != rays_.end() && *it == p)
               ? static_cast<std::size_t>(it - rays_.begin())
               : npos;
  }

  /// Index of the face with exactly these rays, or npos.
  [[nodiscard]] std::size_t find_face(const IndexSet &rays) const {
    auto it = face_index_.find(rays);
    return it == face_index_.end() ? npos : it->second;
  }
  [[nodiscard]] bool is_face(const IndexSet &rays) const {
    return rays.empty() || face_index_.count(rays) > 0;
  }
  /// Maximal cones containing all of `rays`.
  [[nodiscard]] std::vector<std::size_t>
  cones_containing(const IndexSet &rays) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < max_cones_.size(); ++c)
      if (is_subset(rays, max_cones_[c])) out.push_back(c);
    return out;
  }

  /// Codimension-one faces with their incident maximal cones.
  [[nodiscard]] std::vector<Wall> walls() const {
    std::vector<Wall> out;
    for (const auto &f : faces_) {
      if (f.dim != static_cast<int>(dim_) - 1) continue;
      auto inc = cones_containing(f.rays);
      if (inc.size() > 2)
        throw std::logic_error("fan: wall in more than two maximal cones");
      out.push_back({f.rays, inc.empty() ? npos : inc[0],
                     inc.size() < 2 ? npos : inc[1]});
    }
    return out;
  }

  /// Rays of the given maximal cone as points.
  [[nodiscard]] std::vector<NPoint> cone_rays(std::size_t c) const {
    std::vector<NPoint> out;
    for (auto r : max_cones_[c]) out.push_back(rays_[r]);
    return out;
  }

private:
  void validate() {
    if (!std::is_sorted(rays_.begin(), rays_.end()) ||
        std::adjacent_find(rays_.begin(), rays_.end()) != rays_.end())
      throw InputError("fan: rays must be sorted and distinct");
    for (const auto &r : rays_) {
      if (r.dim() != dim_) throw InputError("fan: ray dimension mismatch");
      if (!is_primitive(r)) throw InputError("fan: ray is not primitive");
    }
    for (auto &c : max_cones_) {
      std::sort(c.begin(), c.end());
      if (linalg::rank(detail::ray_matrix(rays_, c)) != dim_)
        throw DomainError("fan: maximal cone is not full-dimensional");
    }
    std::sort(max_cones_.begin(), max_cones_.end());
  }

  void finish() {
    std::sort(faces_.begin(), faces_.end(), [](const auto &a, const auto &b) {
      return std::tie(a.dim, a.rays) < std::tie(b.dim, b.rays);
    });
    for (std::size_t i = 0; i < faces_.size(); ++i)
      face_index_.emplace(faces_[i].rays, i);
  }

  std::size_t dim_;
  std::vector<NPoint> rays_;
  std::vector<IndexSet> max_cones_;
  std::vector<FanCone> faces_;
  std::map<IndexSet, std::size_t> face_index_;
  FanProvenance provenance_;
};

// --------------------------------------------------------------------------
// Construction

/// Cones over the proper faces of the dual of a reflexive polytope.
inline Fan face_fan(const ReflexivePair<MTag> &pair) {
  const auto &dstar = pair.dual();
  // Polytope vertices are already in lexicographic order.
  std::vector<IndexSet> max_cones, faces;
  for (const auto &f : dstar.facets()) max_cones.push_back(f.vertices);
  for (const auto &f : dstar.faces()) faces.push_back(f.vertices);
  return Fan(dstar.ambient_dim(), dstar.vertices(), std::move(max_cones),
             std::move(faces), FanProvenance::FaceFan);
}

namespace detail {

// Sign of det[rows..., extra...] as -1/0/1.
inline int orientation(const std::vector<NPoint> &pts, const IndexSet &rows,
                       std::size_t extra,
                       const std::vector<NPoint> &completion) {
  linalg::IntMatrix m = ray_matrix(pts, rows);
  m.emplace_back(pts[extra].coords().begin(), pts[extra].coords().end());
  for (const auto &w : completion)
    m.emplace_back(w.coords().begin(), w.coords().end());
  Integer d = linalg::determinant(std::move(m));
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

// Unit vectors completing the span of `idx` to the whole space.
inline std::vector<NPoint> completion(const std::vector<NPoint> &pts,
                                      const IndexSet &idx, std::size_t dim) {
  std::vector<NPoint> out;
  linalg::IntMatrix m = ray_matrix(pts, idx);
  std::size_t r = linalg::rank(m);
  for (std::size_t i = 0; i < dim && r < dim; ++i) {
    NPoint e(dim);
    e[i] = 1;
    m.emplace_back(e.coords().begin(), e.coords().end());
    if (linalg::rank(m) > r) {
      ++r;
      out.push_back(std::move(e));
    } else {
      m.pop_back();
    }
  }
  return out;
}

/// Placing triangulation of points lying on a common affine hyperplane that
/// misses the origin, processed in the given order. Works on the cones over
/// the points, so orientation tests are plain determinants. Every input
/// point must be a vertex of the convex hull of the input.
inline std::vector<IndexSet> placing_triangulation(
    const std::vector<NPoint> &pts, const std::vector<std::size_t> &order) {
  const std::size_t dim = pts[order[0]].dim();
  std::vector<IndexSet> simplices{{order[0]}};
  IndexSet span{order[0]};
  auto comp = completion(pts, span, dim);
  for (std::size_t k = 1; k < order.size(); ++k) {
    const std::size_t p = order[k];
    IndexSet trial = span;
    trial.push_back(p);
    std::sort(trial.begin(), trial.end());
    if (linalg::rank(ray_matrix(pts, trial)) > span.size()) {
      for (auto &s : simplices) {
        s.push_back(p);
        std::sort(s.begin(), s.end());
      }
      span = std::move(trial);
      comp = completion(pts, span, dim);
      continue;
    }
    // completion for a boundary face: the span minus one direction, so the
    // face together with a point of the span and the completion is square.
    std::map<IndexSet, std::vector<std::size_t>> face_owner;
    for (std::size_t s = 0; s < simplices.size(); ++s)
      for (std::size_t drop = 0; drop < simplices[s].size(); ++drop) {
        IndexSet f = simplices[s];
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
        face_owner[f].push_back(s);
      }
    std::vector<IndexSet> added;
    for (const auto &[f, owners] : face_owner) {
      if (owners.size() != 1) continue;
      const auto &s = simplices[owners[0]];
      std::size_t opposite = 0;
      for (auto v : s)
        if (!std::binary_search(f.begin(), f.end(), v)) opposite = v;
      int a = orientation(pts, f, p, comp);
      int b = orientation(pts, f, opposite, comp);
      if (a != 0 && a == -b) {
        IndexSet ns = f;
        ns.insert(std::upper_bound(ns.begin(), ns.end(), p), p);
        added.push_back(std::move(ns));
      }
    }
    if (added.empty())
      throw DomainError("placing: point is not a vertex of the hull");
    for (auto &a : added) simplices.push_back(std::move(a));
  }
  return simplices;
}

// Coefficients of `p` in the basis given by the rays of a simplicial
// full-dimensional cone.
inline std::vector<Rational> cone_coordinates(const std::vector<NPoint> &rays,
                                              const IndexSet &cone,
                                              const NPoint &p) {
  const std::size_t n = p.dim();
  linalg::RatMatrix a(n, std::vector<Rational>(cone.size()));
  for (std::size_t j = 0; j < cone.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) a[i][j] = rays[cone[j]][i];
  auto x = linalg::solve(a, linalg::to_rational(p), cone.size());
  if (!x) throw std::logic_error("cone coordinates: point outside span");
  return *x;
}

} // namespace detail

/// Fine, regular, crepant simplicial refinement of the face fan whose rays
/// are all boundary lattice points of the dual polytope. Vertices of each
/// facet are placed in lexicographic order; every remaining boundary point is
/// then pulled (stellar subdivision), again in lexicographic order.
inline Fan mpcp_triangulate(const ReflexivePair<MTag> &pair) {
  const auto &dstar = pair.dual();
  const std::size_t dim = dstar.ambient_dim();
  const auto census = lattice_points(dstar);
  std::vector<NPoint> rays;
  for (std::size_t i = 0; i < census.points.size(); ++i)
    if (census.carrier[i] != Polytope<NTag>::npos)
      rays.push_back(census.points[i]);

  std::vector<IndexSet> cones;
  for (const auto &f : dstar.facets()) {
    std::vector<std::size_t> order;
    for (auto v : f.vertices) order.push_back(
        static_cast<std::size_t>(
            std::lower_bound(rays.begin(), rays.end(), dstar.vertices()[v]) -
            rays.begin()));
    // ray order is lexicographic, so sorting indices sorts the points
    std::sort(order.begin(), order.end());
    for (auto &s : detail::placing_triangulation(rays, order))
      cones.push_back(std::move(s));
  }

  for (std::size_t r = 0; r < rays.size(); ++r) {
    if (dstar.vertex_index(rays[r]) != Polytope<NTag>::npos) continue;
    const auto tight = dstar.tight_facets(rays[r]);
    std::vector<IndexSet> next;
    for (auto &c : cones) {
      // Cones on facets away from the point cannot contain it.
      bool candidate = false;
      for (auto f : tight) {
        bool on = true;
        for (auto v : c)
          if (!dstar.facets()[f].plane.contains(rays[v])) {
            on = false;
            break;
          }
        if (on) {
          candidate = true;
          break;
        }
      }
      if (!candidate) {
        next.push_back(std::move(c));
        continue;
      }
      auto lambda = detail::cone_coordinates(rays, c, rays[r]);
      if (std::any_of(lambda.begin(), lambda.end(),
                      [](const Rational &q) { return q < 0; })) {
        next.push_back(std::move(c));
        continue;
      }
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (lambda[j] == 0) continue;
        IndexSet ns = c;
        ns[j] = r;
        std::sort(ns.begin(), ns.end());
        next.push_back(std::move(ns));
      }
    }
    cones = std::move(next);
  }
  return Fan(dim, std::move(rays), std::move(cones),
             FanProvenance::Refinement);
}

// --------------------------------------------------------------------------
// Cone audits

/// |det| of the generators of a simplicial full-dimensional cone.
inline Integer cone_mult(std::span<const NPoint> rays) {
  if (rays.empty() || rays.size() != rays[0].dim())
    throw DomainError("cone_mult: cone is not simplicial and full-dimensional");
  Integer d = linalg::determinant(linalg::rows_of<NTag>(rays));
  if (d == 0)
    throw DomainError("cone_mult: generators are linearly dependent");
  return d < 0 ? Integer(-d) : d;
}

inline Integer cone_mult(const Fan &fan, std::size_t cone) {
  auto r = fan.cone_rays(cone);
  return cone_mult(std::span<const NPoint>(r));
}

/// Nonzero lattice points of the half-open parallelepiped spanned by the
/// rays, as coordinate vectors in the ray basis (entries in [0, 1)).
inline std::vector<std::vector<Rational>>
box_elements(std::span<const NPoint> rays) {
  const std::size_t n = rays[0].dim();
  NPoint lo(n), hi(n);
  for (const auto &r : rays)
    for (std::size_t i = 0; i < n; ++i) {
      if (r[i] < 0) lo[i] += r[i];
      if (r[i] > 0) hi[i] += r[i];
    }
  std::vector<NPoint> rv(rays.begin(), rays.end());
  IndexSet all(rays.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<std::vector<Rational>> out;
  NPoint cur = lo;
  for (;;) {
    if (!cur.is_zero()) {
      auto lambda = detail::cone_coordinates(rv, all, cur);
      if (std::all_of(lambda.begin(), lambda.end(), [](const Rational &q) {
            return q >= 0 && q < 1;
          }))
        out.push_back(std::move(lambda));
    }
    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      if (cur[i] < hi[i]) {
        ++cur[i];
        advanced = true;
        break;
      }
      cur[i] = lo[i];
    }
    if (!advanced) break;
  }
  return out;
}

struct SingularCone {
  std::size_t cone = 0;
  Integer mult;
  /// Largest number of generators fixed by a nontrivial element of the
  /// quotient group N / <rays>; 0 means an isolated quotient singularity.
  std::size_t fixed_dim = 0;
};

/// Maximal cones of a simplicial fan with multiplicity > 1.
inline std::vector<SingularCone> singularity_census(const Fan &fan) {
  if (!fan.is_simplicial())
    throw DomainError("singularity_census: fan is not simplicial");
  std::vector<SingularCone> out;
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    Integer m = cone_mult(fan, c);
    if (m == 1) continue;
    auto r = fan.cone_rays(c);
    std::size_t fixed = 0;
    for (const auto &b : box_elements(std::span<const NPoint>(r))) {
      auto zeros = static_cast<std::size_t>(
          std::count(b.begin(), b.end(), Rational(0)));
      fixed = std::max(fixed, zeros);
    }
    out.push_back({c, m, fixed});
  }
  return out;
}

// --------------------------------------------------------------------------
// Divisors

/// Formal Q-combination of the toric divisors D_rho, one coefficient per ray.
struct WeilDivisor {
  std::vector<Rational> coeffs;

  static WeilDivisor zero(const Fan &fan) {
    return {std::vector<Rational>(fan.rays().size())};
  }
  static WeilDivisor ray(const Fan &fan, std::size_t r, Rational c = 1) {
    auto d = zero(fan);
    d.coeffs.at(r) = std::move(c);
    return d;
  }
  /// -K = sum of all toric divisors.
  static WeilDivisor anticanonical(const Fan &fan) {
    return {std::vector<Rational>(fan.rays().size(), Rational(1))};
  }
  /// div(chi^m) = sum <m, v_i> D_i.
  static WeilDivisor principal(const Fan &fan, const MPoint &m) {
    auto d = zero(fan);
    for (std::size_t i = 0; i < fan.rays().size(); ++i)
      d.coeffs[i] = pairing(m, fan.rays()[i]);
    return d;
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](const Rational &q) { return q == 0; });
  }

  WeilDivisor &operator+=(const WeilDivisor &o) {
    if (o.coeffs.size() != coeffs.size())
      throw InputError("divisor size mismatch");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
  }
  friend WeilDivisor operator+(WeilDivisor a, const WeilDivisor &b) {
    return a += b;
  }
  friend WeilDivisor operator*(const Rational &k, WeilDivisor a) {
    for (auto &c : a.coeffs) c *= k;
    return a;
  }
  friend WeilDivisor operator-(WeilDivisor a) { return Rational(-1) * std::move(a); }
  friend bool operator==(const WeilDivisor &, const WeilDivisor &) = default;
};

struct QCartierResult {
  bool qcartier = false;
  /// Smallest k with k*D Cartier; set only when qcartier.
  std::optional<Integer> cartier_index;
  /// m_sigma per maximal cone, with <m_sigma, v> = -a_v on the rays of sigma.
  std::vector<std::vector<Rational>> local_data;
};

namespace detail {

inline std::optional<std::vector<Rational>>
local_linear_data(const Fan &fan, std::size_t c, const WeilDivisor &d) {
  const auto &cone = fan.max_cones()[c];
  linalg::RatMatrix a;
  std::vector<Rational> b;
  for (auto r : cone) {
    a.push_back(linalg::to_rational(fan.rays()[r]));
    b.push_back(-d.coeffs[r]);
  }
  return linalg::solve(a, b, fan.dim());
}

} // namespace detail

/// Per-cone exact solve for the local linear data of `d`.
inline QCartierResult is_qcartier(const Fan &fan, const WeilDivisor &d) {
  if (d.coeffs.size() != fan.rays().size())
    throw InputError("is_qcartier: divisor does not match fan rays");
  QCartierResult out;
  Integer index = 1;
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    auto m = detail::local_linear_data(fan, c, d);
    if (!m) {
      out.local_data.clear();
      return out;
    }
    for (const auto &q : *m)
      index = boost::multiprecision::lcm(index,
                                         boost::multiprecision::denominator(q));
    out.local_data.push_back(std::move(*m));
  }
  out.qcartier = true;
  out.cartier_index = index;
  return out;
}

/// dim_Q of Q-Cartier divisors modulo principal ones. A Weil divisor is
/// Q-Cartier iff it respects every linear relation among the rays of each
/// maximal cone, so the Q-Cartier space is the kernel of those relations.
inline std::size_t picard_rank_q(const Fan &fan) {
  const std::size_t nr = fan.rays().size();
  linalg::RatMatrix relations;
  for (const auto &cone : fan.max_cones()) {
    if (cone.size() == fan.dim()) continue;
    // relations among rays: kernel of the (dim x |cone|) generator matrix
    linalg::RatMatrix g(fan.dim(), std::vector<Rational>(cone.size()));
    for (std::size_t j = 0; j < cone.size(); ++j)
      for (std::size_t i = 0; i < fan.dim(); ++i)
        g[i][j] = fan.rays()[cone[j]][i];
    for (const auto &rel : linalg::nullspace(g, cone.size())) {
      std::vector<Rational> row(nr);
      for (std::size_t j = 0; j < cone.size(); ++j) row[cone[j]] = rel[j];
      relations.push_back(std::move(row));
    }
  }
  const std::size_t qcartier_dim =
      nr - (relations.empty() ? 0 : linalg::rank(relations));
  return qcartier_dim - fan.dim();
}

/// Convexity of the support function of a Q-Cartier divisor: for each
/// maximal cone the local data satisfies <m_sigma, v> >= -a_v on all rays.
inline bool is_nef(const Fan &fan, const WeilDivisor &d) {
  auto q = is_qcartier(fan, d);
  if (!q.qcartier) throw DomainError("is_nef: divisor is not Q-Cartier");
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    const auto &m = q.local_data[c];
    for (std::size_t r = 0; r < fan.rays().size(); ++r) {
      Rational s = 0;
      for (std::size_t i = 0; i < fan.dim(); ++i) s += m[i] * fan.rays()[r][i];
      if (s < -d.coeffs[r]) return false;
    }
  }
  return true;
}

/// Sum of multiplicities of the maximal cones of a simplicial fan. For a
/// triangulation of the boundary of a reflexive polytope this is its
/// normalized volume.
inline Integer total_multiplicity(const Fan &fan) {
  Integer s = 0;
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c)
    s += cone_mult(fan, c);
  return s;
}

} // namespace cytoric
