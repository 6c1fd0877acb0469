#pragma once

// Intersection numbers on simplicial complete fans and the second Chern
// class of the anticanonical Calabi-Yau hypersurface.

#include "cytoric/fan.hpp"
#include "cytoric/hodge.hpp"

#include <array>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace cytoric {

/// Top intersection form D_1 ... D_n on a simplicial complete n-fan.
///
/// Square-free monomials spanning a cone evaluate to 1/mult. A repeated ray
/// D_i is removed by choosing a maximal cone sigma containing the support,
/// the unique m in M_Q with <m, v_k> = delta_ik on the rays of sigma, and
/// substituting D_i ~ -sum_{j not in sigma} <m, v_j> D_j. Each substitution
/// adds a new ray to the support, so the recursion terminates.
///
/// The memo table is the only mutable state. Lookups and inserts take a lock;
/// concurrent inserts of the same key store the same value.
class IntersectionForm {
public:
  explicit IntersectionForm(Fan fan) : fan_(std::move(fan)) {
    if (!fan_.is_simplicial())
      throw DomainError("intersection form: fan is not simplicial");
    for (const auto &w : fan_.walls())
      if (w.right == Fan::npos)
        throw DomainError("intersection form: fan is not complete");
    faces_by_ray_.resize(fan_.rays().size());
    for (std::size_t f = 0; f < fan_.faces().size(); ++f)
      for (auto r : fan_.faces()[f].rays) faces_by_ray_[r].push_back(f);
  }

  IntersectionForm(const IntersectionForm &) = delete;
  IntersectionForm &operator=(const IntersectionForm &) = delete;

  [[nodiscard]] const Fan &fan() const { return fan_; }

  /// Value on a multiset of ray indices (any order, size = fan dimension).
  [[nodiscard]] Rational monomial(IndexSet rays) const {
    if (rays.size() != fan_.dim())
      throw InputError("intersection form: wrong number of factors");
    std::sort(rays.begin(), rays.end());
    return eval(rays);
  }

  /// Multilinear extension to Weil divisors.
  [[nodiscard]] Rational operator()(std::span<const WeilDivisor> ds) const {
    const std::size_t n = fan_.dim();
    if (ds.size() != n)
      throw InputError("intersection form: wrong number of factors");
    std::vector<IndexSet> supports(n);
    std::size_t sparsest = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (ds[k].coeffs.size() != fan_.rays().size())
        throw InputError("intersection form: divisor does not match fan");
      for (std::size_t r = 0; r < ds[k].coeffs.size(); ++r)
        if (ds[k].coeffs[r] != 0) supports[k].push_back(r);
      if (supports[k].empty()) return 0;
      if (supports[k].size() < supports[sparsest].size()) sparsest = k;
    }
    std::vector<char> candidate(fan_.faces().size(), 0);
    for (auto r : supports[sparsest])
      for (auto f : faces_by_ray_[r]) candidate[f] = 1;

    Rational total = 0;
    IndexSet multiset(n);
    for (std::size_t f = 0; f < fan_.faces().size(); ++f) {
      if (!candidate[f]) continue;
      const auto &support = fan_.faces()[f].rays;
      if (support.size() > n) continue;
      // compositions of n into |support| positive parts
      std::vector<std::size_t> parts(support.size(), 1);
      const std::size_t extra = n - support.size();
      for_each_composition(parts, 0, extra, [&] {
        std::size_t k = 0;
        for (std::size_t i = 0; i < support.size(); ++i)
          for (std::size_t c = 0; c < parts[i]; ++c) multiset[k++] = support[i];
        Rational coeff = 0;
        IndexSet perm = multiset;
        do {
          Rational prod = 1;
          for (std::size_t a = 0; a < n && prod != 0; ++a)
            prod *= ds[a].coeffs[perm[a]];
          coeff += prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (coeff != 0) total += coeff * eval(multiset);
      });
    }
    return total;
  }

  Rational operator()(const WeilDivisor &a, const WeilDivisor &b,
                      const WeilDivisor &c, const WeilDivisor &d) const {
    const std::array<WeilDivisor, 4> ds{a, b, c, d};
    return (*this)(std::span<const WeilDivisor>(ds));
  }

  /// D_{fixed} . (-K)^k with -K = sum of all D_r, expanded over the faces
  /// that contain the support of `fixed`.
  [[nodiscard]] Rational times_anticanonical(IndexSet fixed,
                                             std::size_t k) const {
    const std::size_t n = fan_.dim();
    if (fixed.size() + k != n)
      throw InputError("intersection form: wrong number of factors");
    std::sort(fixed.begin(), fixed.end());
    if (k == 0) return eval(fixed);
    IndexSet base = fixed;
    base.erase(std::unique(base.begin(), base.end()), base.end());
    if (base.empty()) throw InputError("intersection form: empty support");
    Rational total = 0;
    for (auto f : faces_by_ray_[base[0]]) {
      const auto &face = fan_.faces()[f].rays;
      if (face.size() > base.size() + k || !is_subset(base, face)) continue;
      IndexSet fresh;
      std::set_difference(face.begin(), face.end(), base.begin(), base.end(),
                          std::back_inserter(fresh));
      // ordered k-tuples over `face` covering every ray of `fresh`
      std::vector<std::size_t> parts(face.size(), 0);
      for (std::size_t i = 0; i < face.size(); ++i)
        if (std::binary_search(fresh.begin(), fresh.end(), face[i]))
          parts[i] = 1;
      distribute(parts, 0, k - fresh.size(), [&] {
        IndexSet m = fixed;
        Integer ways = factorial(k);
        for (std::size_t i = 0; i < face.size(); ++i) {
          ways /= factorial(parts[i]);
          m.insert(m.end(), parts[i], face[i]);
        }
        std::sort(m.begin(), m.end());
        total += Rational(ways) * eval(m);
      });
    }
    return total;
  }

private:
  static Integer factorial(std::size_t n) {
    Integer r = 1;
    for (std::size_t i = 2; i <= n; ++i) r *= i;
    return r;
  }

  template <class F>
  static void distribute(std::vector<std::size_t> &parts, std::size_t i,
                         std::size_t left, F &&f) {
    if (i + 1 >= parts.size()) {
      if (!parts.empty()) parts.back() += left;
      f();
      if (!parts.empty()) parts.back() -= left;
      return;
    }
    for (std::size_t take = 0; take <= left; ++take) {
      parts[i] += take;
      distribute(parts, i + 1, left - take, f);
      parts[i] -= take;
    }
  }

  template <class F>
  static void for_each_composition(std::vector<std::size_t> &parts,
                                   std::size_t i, std::size_t left, F &&f) {
    if (i + 1 == parts.size()) {
      parts[i] += left;
      f();
      parts[i] -= left;
      return;
    }
    for (std::size_t take = 0; take <= left; ++take) {
      parts[i] += take;
      for_each_composition(parts, i + 1, left - take, f);
      parts[i] -= take;
    }
  }

  Rational eval(const IndexSet &m) const {
    {
      std::lock_guard lock(mutex_);
      auto it = memo_.find(m);
      if (it != memo_.end()) return it->second;
    }
    Rational value = compute(m);
    std::lock_guard lock(mutex_);
    memo_.emplace(m, value);
    return value;
  }

  Rational compute(const IndexSet &m) const {
    IndexSet support = m;
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const std::size_t fid = fan_.find_face(support);
    if (fid == Fan::npos) return 0;
    if (support.size() == fan_.dim()) {
      std::vector<NPoint> rays;
      for (auto r : support) rays.push_back(fan_.rays()[r]);
      return Rational(1) / Rational(cone_mult(std::span<const NPoint>(rays)));
    }
    std::size_t repeated = m[0];
    for (std::size_t k = 1; k < m.size(); ++k)
      if (m[k] == m[k - 1]) {
        repeated = m[k];
        break;
      }
    const auto &sigma = fan_.max_cones()[fan_.cones_containing(support)[0]];
    linalg::RatMatrix a;
    std::vector<Rational> b;
    for (auto r : sigma) {
      a.push_back(linalg::to_rational(fan_.rays()[r]));
      b.emplace_back(r == repeated ? 1 : 0);
    }
    const auto mvec = *linalg::solve(a, b, fan_.dim());

    IndexSet reduced = m;
    reduced.erase(std::find(reduced.begin(), reduced.end(), repeated));
    Rational total = 0;
    for (std::size_t j = 0; j < fan_.rays().size(); ++j) {
      if (std::binary_search(sigma.begin(), sigma.end(), j)) continue;
      IndexSet s = support;
      s.insert(std::upper_bound(s.begin(), s.end(), j), j);
      if (!fan_.is_face(s)) continue;
      Rational c = 0;
      for (std::size_t i = 0; i < fan_.dim(); ++i)
        c += mvec[i] * fan_.rays()[j][i];
      if (c == 0) continue;
      IndexSet next = reduced;
      next.insert(std::upper_bound(next.begin(), next.end(), j), j);
      total -= c * eval(next);
    }
    return total;
  }

  struct IndexSetHash {
    std::size_t operator()(const IndexSet &s) const {
      std::size_t h = 0;
      for (auto x : s) h = h * 1000003u + x;
      return h;
    }
  };

  Fan fan_;
  std::vector<std::vector<std::size_t>> faces_by_ray_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<IndexSet, Rational, IndexSetHash> memo_;
};

// --------------------------------------------------------------------------

enum class CurveClass {
  Empty,            // misses the hypersurface
  RationalCurves,   // surface over a curve of singularities: d(edge) curves
  ExceptionalCurve, // two exceptional branches over a singular curve meet
  SmoothCurve,      // edge of the dual polytope between two vertices
};

constexpr std::string_view to_string(CurveClass c) {
  switch (c) {
  case CurveClass::Empty: return "empty";
  case CurveClass::RationalCurves: return "rational-curves";
  case CurveClass::ExceptionalCurve: return "exceptional-curve";
  case CurveClass::SmoothCurve: return "smooth-curve";
  }
  return "?";
}

struct CurveRecord {
  std::size_t ray_a = 0, ray_b = 0; // fan ray indices, a < b
  PointType type_a{}, type_b{};
  int face_dim = 0;           // smallest face of the dual containing the edge
  CurveClass cls{};
  std::size_t components = 0; // number of curves (0 when empty)
};

struct DivisorCoverage {
  std::size_t ray = 0;
  PointType type{};
  bool covered = false; // meets the hypersurface in some nonempty C_ij
};

struct CurveCensus {
  std::vector<CurveRecord> curves;
  std::vector<DivisorCoverage> coverage; // E and F divisors only
};

struct NefCheck {
  WeilDivisor divisor;
  Rational degree; // L . (-K)^3
  Rational c2;     // c2 . L
};

struct ChernReport {
  std::vector<Rational> c2_values; // c2 . D_i per ray
  Rational c2_anticanonical;       // c2 . (-K)
  CurveCensus census;
  std::vector<NefCheck> nef_checks;
  [[nodiscard]] bool positive() const {
    if (c2_anticanonical <= 0) return false;
    for (const auto &n : nef_checks)
      if (n.degree > 0 && n.c2 <= 0) return false;
    return true;
  }
};

/// Second Chern class of the hypersurface Z in |-K| on the MPCP
/// resolution. c(TZ) = prod(1 + D_i) / (1 + sum D_i), so
/// c2(Z) = (sum_{i<j} D_i D_j)|_Z and restriction is a product with -K.
class ChernCalculator {
public:
  ChernCalculator(const ReflexivePair<MTag> &pair, Fan mpcp)
      : pair_(pair), form_(std::move(mpcp)) {
    detail::require_reflexive_4d(pair.primal());
    const auto &f = form_.fan();
    for (const auto &r : f.rays()) {
      Integer lo = pairing(pair.primal().vertices()[0], r);
      for (const auto &x : pair.primal().vertices())
        lo = std::min(lo, pairing(x, r));
      if (lo != -1)
        throw DomainError("fan ray is not a boundary point of the dual");
    }
    const std::size_t n = f.rays().size();
    for (std::size_t l = 0; l < n; ++l) {
      Rational deg = form_.times_anticanonical({l}, 3);
      Rational squares = 0;
      for (std::size_t i = 0; i < n; ++i) {
        IndexSet pair_il{std::min(i, l), std::max(i, l)};
        if (i != l && !f.is_face(pair_il)) continue;
        squares += form_.times_anticanonical({i, i, l}, 1);
      }
      c2_ray_.push_back((deg - squares) / 2);
      degree_ray_.push_back(std::move(deg));
    }
  }

  [[nodiscard]] const IntersectionForm &form() const { return form_; }
  [[nodiscard]] const Fan &fan() const { return form_.fan(); }

  /// c2(Z) . L = sum_{i<j} D_i D_j L (-K)
  ///           = ((-K)^3 L - sum_i D_i^2 L (-K)) / 2,
  /// evaluated per ray and extended linearly.
  [[nodiscard]] Rational c2_dot(const WeilDivisor &l) const {
    return pair_with(l, c2_ray_);
  }

  /// L . (-K)^3, the degree of L on Z against the anticanonical class.
  [[nodiscard]] Rational degree(const WeilDivisor &l) const {
    return pair_with(l, degree_ray_);
  }

  [[nodiscard]] CurveCensus curve_census() const {
    const auto &f = fan();
    const auto &dstar = pair_.dual();
    const auto primal_census = lattice_points(pair_.primal());
    std::vector<PointType> type(f.rays().size());
    for (std::size_t r = 0; r < f.rays().size(); ++r) {
      auto c = dstar.carrier(f.rays()[r]);
      type[r] = detail::type_of_dim(dstar.face(c).dim);
    }
    CurveCensus out;
    std::vector<char> covered(f.rays().size(), 0);
    for (const auto &cone : f.faces()) {
      if (cone.rays.size() != 2) continue;
      CurveRecord rec;
      rec.ray_a = cone.rays[0];
      rec.ray_b = cone.rays[1];
      rec.type_a = type[rec.ray_a];
      rec.type_b = type[rec.ray_b];
      IndexSet common = intersect(dstar.tight_facets(f.rays()[rec.ray_a]),
                                  dstar.tight_facets(f.rays()[rec.ray_b]));
      IndexSet vs = dstar.facets()[common.at(0)].vertices;
      for (std::size_t i = 1; i < common.size(); ++i)
        vs = intersect(vs, dstar.facets()[common[i]].vertices);
      const std::size_t face = dstar.find_face(vs);
      rec.face_dim = dstar.face(face).dim;
      if (rec.type_a == PointType::Interior3Face ||
          rec.type_b == PointType::Interior3Face || rec.face_dim == 3) {
        rec.cls = CurveClass::Empty;
      } else if (rec.face_dim == 2) {
        rec.cls = CurveClass::RationalCurves;
        rec.components =
            primal_census.per_face[pair_.primal_face(face)].length();
      } else if (rec.type_a == PointType::Vertex &&
                 rec.type_b == PointType::Vertex) {
        rec.cls = CurveClass::SmoothCurve;
        rec.components = 1;
      } else {
        rec.cls = CurveClass::ExceptionalCurve;
        rec.components = 1;
      }
      if (rec.cls != CurveClass::Empty) covered[rec.ray_a] = covered[rec.ray_b] = 1;
      out.curves.push_back(rec);
    }
    for (std::size_t r = 0; r < f.rays().size(); ++r)
      if (type[r] != PointType::Interior3Face)
        out.coverage.push_back({r, type[r], covered[r] != 0});
    return out;
  }

  /// Deterministic sample of nef toric classes: support functions
  /// min_{m in Q} <m, v> for small lattice polytopes Q in M (segments from
  /// the origin to lattice points of the primal polytope, and the primal
  /// polytope itself), kept when nef.
  [[nodiscard]] std::vector<WeilDivisor> nef_test_classes() const {
    const auto &f = fan();
    auto support_divisor = [&](const std::vector<MPoint> &q) {
      auto d = WeilDivisor::zero(f);
      for (std::size_t r = 0; r < f.rays().size(); ++r) {
        Integer lo = pairing(q[0], f.rays()[r]);
        for (const auto &m : q) lo = std::min(lo, pairing(m, f.rays()[r]));
        d.coeffs[r] = Rational(-lo);
      }
      return d;
    };
    std::vector<WeilDivisor> out;
    auto consider = [&](WeilDivisor d) {
      if (d.is_zero() || !is_nef(f, d)) return;
      if (std::find(out.begin(), out.end(), d) == out.end())
        out.push_back(std::move(d));
    };
    consider(support_divisor(pair_.primal().vertices()));
    const MPoint origin(f.dim());
    const auto census = lattice_points(pair_.primal());
    for (const auto &p : census.points)
      if (!p.is_zero()) consider(support_divisor({origin, p}));
    return out;
  }

  [[nodiscard]] ChernReport report(std::span<const WeilDivisor> extra = {}) const {
    ChernReport r;
    r.c2_values = c2_ray_;
    // linear in L, so c2 . (-K) is the sum of the ray values
    r.c2_anticanonical = 0;
    for (const auto &v : r.c2_values) r.c2_anticanonical += v;
    r.census = curve_census();
    auto classes = nef_test_classes();
    for (const auto &d : extra) classes.push_back(d);
    for (auto &d : classes) {
      Rational deg = degree(d);
      Rational c2 = c2_dot(d);
      r.nef_checks.push_back({std::move(d), std::move(deg), std::move(c2)});
    }
    return r;
  }

private:
  Rational pair_with(const WeilDivisor &l,
                     const std::vector<Rational> &per_ray) const {
    if (l.coeffs.size() != per_ray.size())
      throw InputError("divisor does not match fan");
    Rational total = 0;
    for (std::size_t r = 0; r < per_ray.size(); ++r)
      if (l.coeffs[r] != 0) total += l.coeffs[r] * per_ray[r];
    return total;
  }

  const ReflexivePair<MTag> &pair_;
  IntersectionForm form_;
  std::vector<Rational> c2_ray_;
  std::vector<Rational> degree_ray_;
};

} // namespace cytoric
