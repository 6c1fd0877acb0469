#pragma once

// Exact convex geometry of lattice polytopes: hulls, face lattices, lattice
// point censuses, duality and reflexivity.

#include "cytoric/lattice.hpp"
#include "cytoric/linalg.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cytoric {

using IndexSet = std::vector<std::size_t>; // always sorted

inline IndexSet intersect(const IndexSet &a, const IndexSet &b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline bool is_subset(const IndexSet &a, const IndexSet &b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Thrown by `hull` when the points do not span the ambient space.
class NotFullDimensional : public DomainError {
public:
  NotFullDimensional(int affine_dim, std::size_t ambient_dim)
      : DomainError("points span an affine subspace of dimension " +
                    std::to_string(affine_dim) + " in ambient dimension " +
                    std::to_string(ambient_dim)),
        affine_dim_(affine_dim) {}
  [[nodiscard]] int affine_dimension() const { return affine_dim_; }

private:
  int affine_dim_;
};

/// Facet inequality <x, normal> >= offset with primitive normal, together with
/// the vertices on the facet.
template <class Tag> struct Facet {
  RationalHyperplane<Tag> plane;
  IndexSet vertices;

  /// c_F in <x, n_F> >= -c_F.
  [[nodiscard]] Integer c() const { return -plane.offset(); }
};

struct Face {
  int dim = 0;
  IndexSet vertices;
  IndexSet facets;   // facets containing this face
  IndexSet children; // faces of dimension dim-1 inside this one
  IndexSet parents;  // faces of dimension dim+1 containing this one
};

template <class Tag> class Polytope;

template <class Tag>
Polytope<Tag> hull(std::vector<LatticePoint<Tag>> points);

/// Full-dimensional lattice polytope: V-representation, H-representation and
/// face lattice. Immutable once built.
template <class Tag> class Polytope {
public:
  using Point = LatticePoint<Tag>;
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  [[nodiscard]] std::size_t ambient_dim() const { return dim_; }
  [[nodiscard]] const std::vector<Point> &vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<Facet<Tag>> &facets() const {
    return facets_;
  }
  /// All nonempty proper faces ordered by (dim, vertex set).
  [[nodiscard]] const std::vector<Face> &faces() const { return faces_; }
  [[nodiscard]] const Face &face(std::size_t id) const { return faces_[id]; }

  [[nodiscard]] std::size_t find_face(const IndexSet &vertices) const {
    auto it = face_index_.find(vertices);
    return it == face_index_.end() ? npos : it->second;
  }
  [[nodiscard]] std::size_t vertex_index(const Point &p) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), p);
    return (it != vertices_.end() && *it == p)
               ? static_cast<std::size_t>(it - vertices_.begin())
               : npos;
  }
  /// Face id of the facet with index `f`.
  [[nodiscard]] std::size_t facet_face(std::size_t f) const {
    return find_face(facets_[f].vertices);
  }

  [[nodiscard]] bool contains(const Point &p) const {
    return std::all_of(facets_.begin(), facets_.end(), [&](const auto &f) {
      return f.plane.evaluate(p) >= 0;
    });
  }

  /// Indices of the facets whose hyperplane passes through `p`.
  [[nodiscard]] IndexSet tight_facets(const Point &p) const {
    IndexSet out;
    for (std::size_t f = 0; f < facets_.size(); ++f)
      if (facets_[f].plane.contains(p)) out.push_back(f);
    return out;
  }

  /// Face whose relative interior contains `p`; npos for interior points.
  /// `p` must lie in the polytope.
  [[nodiscard]] std::size_t carrier(const Point &p) const {
    const auto tight = tight_facets(p);
    if (tight.empty()) return npos;
    IndexSet vs = facets_[tight[0]].vertices;
    for (std::size_t i = 1; i < tight.size(); ++i)
      vs = intersect(vs, facets_[tight[i]].vertices);
    return find_face(vs);
  }

  /// f-vector (f_0, ..., f_{n-1}).
  [[nodiscard]] std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f(dim_, 0);
    for (const auto &face : faces_) ++f[static_cast<std::size_t>(face.dim)];
    return f;
  }

  /// Strict: 0 violates no facet inequality with equality.
  [[nodiscard]] bool has_interior_origin() const {
    return std::all_of(facets_.begin(), facets_.end(),
                       [](const auto &f) { return f.plane.offset() < 0; });
  }

private:
  friend Polytope hull<Tag>(std::vector<Point> points);
  Polytope() = default;

  void build_face_lattice();

  std::size_t dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Facet<Tag>> facets_;
  std::vector<Face> faces_;
  std::map<IndexSet, std::size_t> face_index_;
};

namespace detail {

template <class Tag> struct WorkFacet {
  LatticePoint<dual_lattice_t<Tag>> normal;
  Integer offset;
  IndexSet points;
};

// Oriented primitive hyperplane through `pts` (which must span a hyperplane),
// with `interior_sum` / `weight` strictly on the positive side.
template <class Tag>
std::optional<WorkFacet<Tag>>
plane_through(const std::vector<LatticePoint<Tag>> &all, const IndexSet &pts,
              const LatticePoint<Tag> &interior_sum, const Integer &weight) {
  const std::size_t d = all[0].dim();
  linalg::RatMatrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i)
    diffs.push_back(linalg::to_rational(all[pts[i]] - all[pts[0]]));
  auto ns = linalg::nullspace(diffs, d);
  if (ns.size() != 1) return std::nullopt;
  LatticePoint<dual_lattice_t<Tag>> n(linalg::primitive_integer(ns[0]));
  Integer off = pairing(all[pts[0]], n);
  Integer side = pairing(interior_sum, n) - weight * off;
  if (side == 0) return std::nullopt;
  if (side < 0) {
    n = -n;
    off = -off;
  }
  return WorkFacet<Tag>{std::move(n), std::move(off), pts};
}

inline IndexSet set_union(const IndexSet &a, const IndexSet &b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

} // namespace detail

/// Convex hull of lattice points by incremental insertion. Coplanar points
/// are kept on their facets, so non-simplicial facets come out whole.
template <class Tag>
Polytope<Tag> hull(std::vector<LatticePoint<Tag>> points) {
  using Point = LatticePoint<Tag>;
  if (points.empty()) throw InputError("hull: no points");
  const std::size_t d = points[0].dim();
  if (d == 0) throw InputError("hull: zero-dimensional ambient space");
  for (const auto &p : points)
    if (p.dim() != d) throw InputError("hull: points of mixed dimension");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Greedy affinely independent start.
  IndexSet simplex{0};
  for (std::size_t i = 1; i < points.size() && simplex.size() < d + 1; ++i) {
    std::vector<Point> trial;
    for (auto s : simplex) trial.push_back(points[s]);
    trial.push_back(points[i]);
    if (linalg::affine_dimension<Tag>(trial) ==
        static_cast<int>(simplex.size()))
      simplex.push_back(i);
  }
  if (simplex.size() < d + 1)
    throw NotFullDimensional(static_cast<int>(simplex.size()) - 1, d);

  Point interior_sum(d);
  for (auto s : simplex) interior_sum += points[s];
  const Integer weight = static_cast<long long>(d + 1);

  std::vector<detail::WorkFacet<Tag>> facets;
  for (std::size_t skip = 0; skip <= d; ++skip) {
    IndexSet pts;
    for (std::size_t k = 0; k <= d; ++k)
      if (k != skip) pts.push_back(simplex[k]);
    facets.push_back(*detail::plane_through(points, pts, interior_sum, weight));
  }

  for (std::size_t p = 0; p < points.size(); ++p) {
    if (std::binary_search(simplex.begin(), simplex.end(), p)) continue;
    std::vector<int> state(facets.size()); // -1 visible, 0 coplanar, 1 hidden
    bool any_visible = false;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      Integer e = pairing(points[p], facets[f].normal) - facets[f].offset;
      state[f] = e < 0 ? -1 : (e == 0 ? 0 : 1);
      any_visible |= state[f] < 0;
    }
    if (any_visible) {
      std::vector<detail::WorkFacet<Tag>> created;
      for (std::size_t f = 0; f < facets.size(); ++f) {
        if (state[f] >= 0) continue;
        for (std::size_t g = 0; g < facets.size(); ++g) {
          if (state[g] < 0) continue;
          IndexSet ridge = intersect(facets[f].points, facets[g].points);
          std::vector<Point> rp;
          for (auto r : ridge) rp.push_back(points[r]);
          if (linalg::affine_dimension<Tag>(rp) != static_cast<int>(d) - 2)
            continue;
          if (state[g] == 0) continue; // g absorbs p below
          IndexSet pts = ridge;
          pts.insert(std::upper_bound(pts.begin(), pts.end(), p), p);
          auto nf = detail::plane_through(points, pts, interior_sum, weight);
          if (!nf) throw std::logic_error("hull: degenerate horizon ridge");
          auto same = std::find_if(created.begin(), created.end(),
                                   [&](const auto &c) {
                                     return c.normal == nf->normal &&
                                            c.offset == nf->offset;
                                   });
          if (same == created.end())
            created.push_back(std::move(*nf));
          else
            same->points = detail::set_union(same->points, nf->points);
        }
      }
      std::vector<detail::WorkFacet<Tag>> next;
      for (std::size_t f = 0; f < facets.size(); ++f)
        if (state[f] >= 0) next.push_back(std::move(facets[f]));
      facets = std::move(next);
      state.erase(std::remove(state.begin(), state.end(), -1), state.end());
      for (auto &c : created) facets.push_back(std::move(c));
      state.resize(facets.size(), 1);
    }
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (state[f] != 0) continue;
      auto &pts = facets[f].points;
      pts.insert(std::upper_bound(pts.begin(), pts.end(), p), p);
    }
  }

  // A point is a vertex iff the normals of the facets through it span.
  std::vector<std::size_t> new_index(points.size(), Polytope<Tag>::npos);
  Polytope<Tag> out;
  out.dim_ = d;
  for (std::size_t p = 0; p < points.size(); ++p) {
    linalg::IntMatrix normals;
    for (const auto &f : facets)
      if (std::binary_search(f.points.begin(), f.points.end(), p))
        normals.emplace_back(f.normal.coords().begin(), f.normal.coords().end());
    if (normals.size() >= d && linalg::rank(normals) == d) {
      new_index[p] = out.vertices_.size();
      out.vertices_.push_back(points[p]);
    }
  }
  for (auto &f : facets) {
    IndexSet vs;
    for (auto p : f.points)
      if (new_index[p] != Polytope<Tag>::npos) vs.push_back(new_index[p]);
    out.facets_.push_back(
        {RationalHyperplane<Tag>(std::move(f.normal), std::move(f.offset)),
         std::move(vs)});
  }
  std::sort(out.facets_.begin(), out.facets_.end(),
            [](const auto &a, const auto &b) {
              return a.vertices < b.vertices;
            });
  out.build_face_lattice();
  return out;
}

template <class Tag> void Polytope<Tag>::build_face_lattice() {
  std::map<IndexSet, int> found;
  std::vector<IndexSet> work;
  for (const auto &f : facets_) {
    if (found.emplace(f.vertices, 0).second) work.push_back(f.vertices);
  }
  while (!work.empty()) {
    IndexSet cur = std::move(work.back());
    work.pop_back();
    for (const auto &f : facets_) {
      IndexSet x = intersect(cur, f.vertices);
      if (!x.empty() && found.emplace(x, 0).second) work.push_back(x);
    }
  }
  for (auto &[vs, dim] : found) {
    std::vector<Point> pts;
    for (auto v : vs) pts.push_back(vertices_[v]);
    dim = linalg::affine_dimension<Tag>(pts);
  }
  std::vector<std::pair<int, IndexSet>> ordered;
  for (auto &[vs, dim] : found) ordered.emplace_back(dim, vs);
  std::sort(ordered.begin(), ordered.end());
  faces_.clear();
  face_index_.clear();
  for (auto &[dim, vs] : ordered) {
    Face face;
    face.dim = dim;
    face.vertices = vs;
    for (std::size_t f = 0; f < facets_.size(); ++f)
      if (is_subset(vs, facets_[f].vertices)) face.facets.push_back(f);
    face_index_.emplace(vs, faces_.size());
    faces_.push_back(std::move(face));
  }
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    for (std::size_t j = 0; j < faces_.size(); ++j) {
      if (faces_[j].dim != faces_[i].dim + 1) continue;
      if (is_subset(faces_[i].vertices, faces_[j].vertices)) {
        faces_[i].parents.push_back(j);
        faces_[j].children.push_back(i);
      }
    }
  }
}

// --------------------------------------------------------------------------
// Lattice points

struct FaceData {
  int dim = 0;
  std::size_t l = 0;      // lattice points in the closed face
  std::size_t l_star = 0; // lattice points in the relative interior
  /// Lattice length l* + 1; only meaningful for edges.
  [[nodiscard]] std::size_t length() const { return l_star + 1; }
};

/// Every lattice point of a polytope, each tagged with the unique face whose
/// relative interior contains it.
template <class Tag> struct PointCensus {
  std::vector<LatticePoint<Tag>> points;   // lexicographic order
  std::vector<std::size_t> carrier;        // face id, or Polytope::npos
  std::vector<FaceData> per_face;          // indexed by face id
  std::size_t l = 0;                       // l(P)
  std::size_t l_star = 0;                  // l*(P)

  [[nodiscard]] std::size_t boundary_count() const { return l - l_star; }
  [[nodiscard]] std::size_t index_of(const LatticePoint<Tag> &p) const {
    auto it = std::lower_bound(points.begin(), points.end(), p);
    return (it != points.end() && *it == p)
               ? static_cast<std::size_t>(it - points.begin())
               : std::numeric_limits<std::size_t>::max();
  }
};

template <class Tag>
PointCensus<Tag> lattice_points(const Polytope<Tag> &poly) {
  const std::size_t d = poly.ambient_dim();
  LatticePoint<Tag> lo = poly.vertices()[0], hi = poly.vertices()[0];
  for (const auto &v : poly.vertices())
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  PointCensus<Tag> census;
  census.per_face.resize(poly.faces().size());
  for (std::size_t f = 0; f < poly.faces().size(); ++f)
    census.per_face[f].dim = poly.face(f).dim;

  LatticePoint<Tag> cur = lo;
  for (;;) {
    if (poly.contains(cur)) {
      std::size_t c = poly.carrier(cur);
      census.points.push_back(cur);
      census.carrier.push_back(c);
      if (c == Polytope<Tag>::npos)
        ++census.l_star;
      else
        ++census.per_face[c].l_star;
    }
    // odometer, last coordinate fastest so points come out sorted
    bool advanced = false;
    for (std::size_t i = d; i-- > 0;) {
      if (cur[i] < hi[i]) {
        ++cur[i];
        advanced = true;
        break;
      }
      cur[i] = lo[i];
    }
    if (!advanced) break;
  }
  census.l = census.points.size();
  for (std::size_t f = 0; f < poly.faces().size(); ++f) {
    std::size_t total = census.per_face[f].l_star;
    for (std::size_t g = 0; g < poly.faces().size(); ++g)
      if (g != f && poly.face(g).dim < poly.face(f).dim &&
          is_subset(poly.face(g).vertices, poly.face(f).vertices))
        total += census.per_face[g].l_star;
    census.per_face[f].l = total;
  }
  return census;
}

// --------------------------------------------------------------------------
// Duality

/// Polytope with rational vertices in the dual space; produced by `dual`.
template <class Tag> struct RationalPolytope {
  /// vertices[i] = n_F / c_F for facet i of the primal polytope.
  std::vector<std::vector<Rational>> vertices;

  [[nodiscard]] bool is_integral() const {
    for (const auto &v : vertices)
      for (const auto &q : v)
        if (boost::multiprecision::denominator(q) != 1) return false;
    return true;
  }
};

/// {y : <x, y> >= -1 for all x in P}.
template <class Tag>
RationalPolytope<dual_lattice_t<Tag>> dual(const Polytope<Tag> &poly) {
  if (!poly.has_interior_origin())
    throw DomainError("dual: origin is not an interior point");
  RationalPolytope<dual_lattice_t<Tag>> out;
  for (const auto &f : poly.facets()) {
    std::vector<Rational> y;
    const Integer c = f.c();
    for (const auto &x : f.plane.normal().coords()) y.emplace_back(x, c);
    out.vertices.push_back(std::move(y));
  }
  return out;
}

/// The dual as a lattice polytope; requires integral dual vertices.
template <class Tag>
Polytope<dual_lattice_t<Tag>> lattice_dual(const Polytope<Tag> &poly) {
  auto rd = dual(poly);
  if (!rd.is_integral())
    throw DomainError("dual polytope has non-integral vertices");
  std::vector<LatticePoint<dual_lattice_t<Tag>>> pts;
  for (const auto &v : rd.vertices) {
    std::vector<Integer> c;
    for (const auto &q : v) c.push_back(boost::multiprecision::numerator(q));
    pts.emplace_back(std::move(c));
  }
  return hull(std::move(pts));
}

/// Every facet at integral distance one from the origin.
template <class Tag> bool is_reflexive(const Polytope<Tag> &poly) {
  if (!poly.has_interior_origin())
    throw DomainError("is_reflexive: origin is not an interior point");
  const LatticePoint<Tag> origin(poly.ambient_dim());
  bool by_distance = std::all_of(
      poly.facets().begin(), poly.facets().end(),
      [&](const auto &f) { return integral_distance(f.plane, origin) == 1; });
  bool by_dual = dual(poly).is_integral();
  if (by_distance != by_dual)
    throw std::logic_error("reflexivity criteria disagree");
  return by_distance;
}

/// A reflexive polytope together with its lattice dual and the
/// inclusion-reversing bijection between their faces.
template <class Tag> class ReflexivePair {
public:
  using Dual = dual_lattice_t<Tag>;

  explicit ReflexivePair(Polytope<Tag> primal)
      : primal_(std::move(primal)), dual_(make_dual(primal_)) {
    to_dual_.assign(primal_.faces().size(), Polytope<Tag>::npos);
    to_primal_.assign(dual_.faces().size(), Polytope<Tag>::npos);
    for (std::size_t f = 0; f < primal_.faces().size(); ++f) {
      IndexSet vs;
      for (std::size_t y = 0; y < dual_.vertices().size(); ++y) {
        bool all = true;
        for (auto x : primal_.face(f).vertices)
          if (pairing(primal_.vertices()[x], dual_.vertices()[y]) != -1) {
            all = false;
            break;
          }
        if (all) vs.push_back(y);
      }
      std::size_t g = dual_.find_face(vs);
      if (g == Polytope<Tag>::npos)
        throw std::logic_error("dual face lookup failed");
      to_dual_[f] = g;
      to_primal_[g] = f;
    }
  }

  [[nodiscard]] const Polytope<Tag> &primal() const { return primal_; }
  [[nodiscard]] const Polytope<Dual> &dual() const { return dual_; }
  [[nodiscard]] std::size_t dual_face(std::size_t primal_face) const {
    return to_dual_[primal_face];
  }
  [[nodiscard]] std::size_t primal_face(std::size_t dual_face) const {
    return to_primal_[dual_face];
  }

private:
  static Polytope<Dual> make_dual(const Polytope<Tag> &p) {
    if (!is_reflexive(p)) throw DomainError("polytope is not reflexive");
    return lattice_dual(p);
  }

  Polytope<Tag> primal_;
  Polytope<Dual> dual_;
  std::vector<std::size_t> to_dual_;
  std::vector<std::size_t> to_primal_;
};

/// Face of the dual where the pairing with all of face `f` equals -1.
/// Returns the face id in `lattice_dual(poly)`.
template <class Tag>
std::size_t dual_face(const Polytope<Tag> &poly, std::size_t f) {
  return ReflexivePair<Tag>(poly).dual_face(f);
}

} // namespace cytoric
