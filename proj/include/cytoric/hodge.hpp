#pragma once

// Hodge numbers of Calabi-Yau hypersurfaces in toric varieties of reflexive
// 4-polytopes, and the census of toric divisors restricted to the
// hypersurface.

#include "cytoric/polytope.hpp"

#include <string_view>
#include <vector>

namespace cytoric {

/// Where a boundary lattice point of the dual polytope sits.
enum class PointType { Interior3Face, Interior2Face, Interior1Face, Vertex };

constexpr std::string_view to_string(PointType t) {
  switch (t) {
  case PointType::Interior3Face: return "interior-3-face";
  case PointType::Interior2Face: return "interior-2-face";
  case PointType::Interior1Face: return "interior-1-face";
  case PointType::Vertex: return "vertex";
  }
  return "?";
}

template <class Tag> struct ClassifiedPoint {
  LatticePoint<Tag> point;
  PointType type;
  std::size_t face; // carrier face id
};

namespace detail {

template <class Tag> void require_reflexive_4d(const Polytope<Tag> &p) {
  if (p.ambient_dim() != 4)
    throw DomainError("expected a 4-dimensional polytope, got dimension " +
                      std::to_string(p.ambient_dim()));
  if (!p.has_interior_origin() || !is_reflexive(p))
    throw DomainError("polytope is not reflexive");
}

inline PointType type_of_dim(int dim) {
  switch (dim) {
  case 3: return PointType::Interior3Face;
  case 2: return PointType::Interior2Face;
  case 1: return PointType::Interior1Face;
  default: return PointType::Vertex;
  }
}

} // namespace detail

/// Boundary points of a reflexive 4-polytope by the dimension of the face
/// containing them in its relative interior; lexicographic order.
template <class Tag>
std::vector<ClassifiedPoint<Tag>> classify_boundary(const Polytope<Tag> &dstar,
                                                    const PointCensus<Tag> &census) {
  std::vector<ClassifiedPoint<Tag>> out;
  for (std::size_t i = 0; i < census.points.size(); ++i) {
    const auto f = census.carrier[i];
    if (f == Polytope<Tag>::npos) continue;
    out.push_back(
        {census.points[i], detail::type_of_dim(dstar.face(f).dim), f});
  }
  return out;
}

template <class Tag>
std::vector<ClassifiedPoint<Tag>> classify_boundary(const Polytope<Tag> &dstar) {
  detail::require_reflexive_4d(dstar);
  return classify_boundary(dstar, lattice_points(dstar));
}

/// The three correction terms of the h11 formula, evaluated on the fan side.
struct HodgeTerms {
  std::size_t lattice_points = 0;      // l(dual)
  std::size_t facet_interiors = 0;     // sum over facets of l*
  std::size_t two_face_pairing = 0;    // sum over 2-faces of l*(face) l*(dual edge)
  [[nodiscard]] long long value() const {
    return static_cast<long long>(lattice_points) - 5 -
           static_cast<long long>(facet_interiors) +
           static_cast<long long>(two_face_pairing);
  }
};

/// h11 of the hypersurface for the pair, reading the fan polytope as the
/// pair's dual: l(D*) - 5 - sum_{dim F*=3} l*(F*) + sum_{dim F*=2} l*(F*) l*(F).
template <class Tag>
HodgeTerms h11_terms(const ReflexivePair<Tag> &pair,
                     const PointCensus<Tag> &primal_census,
                     const PointCensus<dual_lattice_t<Tag>> &dual_census) {
  const auto &dstar = pair.dual();
  HodgeTerms t;
  t.lattice_points = dual_census.l;
  for (std::size_t f = 0; f < dstar.faces().size(); ++f) {
    const auto &face = dstar.face(f);
    if (face.dim == 3) t.facet_interiors += dual_census.per_face[f].l_star;
    if (face.dim == 2) {
      const std::size_t edge = pair.primal_face(f);
      t.two_face_pairing +=
          dual_census.per_face[f].l_star * primal_census.per_face[edge].l_star;
    }
  }
  return t;
}

/// Divisors on the hypersurface coming from toric divisors.
template <class Tag> struct DivisorCensus {
  struct FPoint {
    LatticePoint<Tag> point;
    std::size_t components = 0; // d(edge) = l*(edge) + 1
  };
  std::vector<LatticePoint<Tag>> e_divisors; // vertices and edge interiors
  std::vector<FPoint> f_divisors;            // 2-face interiors
  std::vector<LatticePoint<Tag>> skipped;    // facet interiors
  std::size_t relation_dim = 4;

  [[nodiscard]] std::size_t total_components() const {
    std::size_t n = e_divisors.size();
    for (const auto &f : f_divisors) n += f.components;
    return n;
  }
  [[nodiscard]] long long h11() const {
    return static_cast<long long>(total_components()) -
           static_cast<long long>(relation_dim);
  }
};

template <class Tag>
DivisorCensus<dual_lattice_t<Tag>>
divisor_census(const ReflexivePair<Tag> &pair,
               const PointCensus<Tag> &primal_census,
               const PointCensus<dual_lattice_t<Tag>> &dual_census) {
  DivisorCensus<dual_lattice_t<Tag>> out;
  for (const auto &cp : classify_boundary(pair.dual(), dual_census)) {
    switch (cp.type) {
    case PointType::Interior3Face: out.skipped.push_back(cp.point); break;
    case PointType::Interior2Face: {
      const std::size_t edge = pair.primal_face(cp.face);
      out.f_divisors.push_back(
          {cp.point, primal_census.per_face[edge].length()});
      break;
    }
    default: out.e_divisors.push_back(cp.point); break;
    }
  }
  return out;
}

template <class Tag> struct HodgeReport {
  long long h11 = 0;
  long long h12 = 0;
  long long euler = 0;
  HodgeTerms h11_terms;
  HodgeTerms h12_terms;
  DivisorCensus<dual_lattice_t<Tag>> census;
};

/// Hodge numbers of the Calabi-Yau hypersurface of a reflexive 4-polytope.
/// h12 is h11 of the mirror, computed with the roles of the pair exchanged.
template <class Tag> class HodgeCalculator {
public:
  explicit HodgeCalculator(const ReflexivePair<Tag> &pair)
      : pair_(pair), primal_census_(lattice_points(pair.primal())),
        dual_census_(lattice_points(pair.dual())) {
    detail::require_reflexive_4d(pair.primal());
  }

  [[nodiscard]] const PointCensus<Tag> &primal_census() const {
    return primal_census_;
  }
  [[nodiscard]] const PointCensus<dual_lattice_t<Tag>> &dual_census() const {
    return dual_census_;
  }

  [[nodiscard]] HodgeTerms h11_terms() const {
    return cytoric::h11_terms(pair_, primal_census_, dual_census_);
  }
  [[nodiscard]] HodgeTerms h12_terms() const {
    const ReflexivePair<dual_lattice_t<Tag>> mirror(pair_.dual());
    // The mirror pair rebuilds the same polytopes, so the censuses carry
    // over with roles swapped.
    return cytoric::h11_terms(mirror, dual_census_, primal_census_);
  }
  [[nodiscard]] long long h11() const { return h11_terms().value(); }
  [[nodiscard]] long long h12() const { return h12_terms().value(); }
  [[nodiscard]] long long euler() const { return 2 * (h11() - h12()); }

  [[nodiscard]] DivisorCensus<dual_lattice_t<Tag>> divisor_census() const {
    return cytoric::divisor_census(pair_, primal_census_, dual_census_);
  }

  [[nodiscard]] HodgeReport<Tag> report() const {
    HodgeReport<Tag> r;
    r.h11_terms = h11_terms();
    r.h12_terms = h12_terms();
    r.h11 = r.h11_terms.value();
    r.h12 = r.h12_terms.value();
    r.euler = 2 * (r.h11 - r.h12);
    r.census = divisor_census();
    return r;
  }

private:
  const ReflexivePair<Tag> &pair_;
  PointCensus<Tag> primal_census_;
  PointCensus<dual_lattice_t<Tag>> dual_census_;
};

template <class Tag> long long h11(const ReflexivePair<Tag> &pair) {
  return HodgeCalculator<Tag>(pair).h11();
}
template <class Tag> long long h12(const ReflexivePair<Tag> &pair) {
  return HodgeCalculator<Tag>(pair).h12();
}
template <class Tag> long long euler(const ReflexivePair<Tag> &pair) {
  return HodgeCalculator<Tag>(pair).euler();
}

} // namespace cytoric
