#pragma once

// Exact integer vectors over a dual pair of lattices M and N = Hom(M, Z).

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cytoric {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Bad arguments to an operation (shape mismatch, zero vector, ...).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input that violates a mathematical precondition
/// (non-reflexive polytope, 0 on the boundary, non-simplicial cone, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

struct MTag;
struct NTag;

template <class Tag> struct dual_lattice;
template <> struct dual_lattice<MTag> { using type = NTag; };
template <> struct dual_lattice<NTag> { using type = MTag; };
template <class Tag> using dual_lattice_t = typename dual_lattice<Tag>::type;

/// A point of the lattice named by `Tag`. M- and N-points never mix in
/// arithmetic; only `pairing` crosses between them.
template <class Tag> class LatticePoint {
public:
  using tag = Tag;

  LatticePoint() = default;
  explicit LatticePoint(std::size_t dim) : coords_(dim) {}
  explicit LatticePoint(std::vector<Integer> coords)
      : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<long long> coords) {
    coords_.reserve(coords.size());
    for (long long c : coords) coords_.emplace_back(c);
  }

  [[nodiscard]] std::size_t dim() const { return coords_.size(); }
  [[nodiscard]] const Integer &operator[](std::size_t i) const {
    return coords_[i];
  }
  Integer &operator[](std::size_t i) { return coords_[i]; }
  [[nodiscard]] std::span<const Integer> coords() const { return coords_; }

  [[nodiscard]] bool is_zero() const {
    for (const auto &c : coords_)
      if (c != 0) return false;
    return true;
  }

  LatticePoint &operator+=(const LatticePoint &o) {
    check_dim(o);
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  LatticePoint &operator-=(const LatticePoint &o) {
    check_dim(o);
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  LatticePoint &operator*=(const Integer &k) {
    for (auto &c : coords_) c *= k;
    return *this;
  }
  friend LatticePoint operator+(LatticePoint a, const LatticePoint &b) {
    return a += b;
  }
  friend LatticePoint operator-(LatticePoint a, const LatticePoint &b) {
    return a -= b;
  }
  friend LatticePoint operator-(LatticePoint a) {
    for (auto &c : a.coords_) c = -c;
    return a;
  }
  friend LatticePoint operator*(const Integer &k, LatticePoint a) {
    return a *= k;
  }

  friend bool operator==(const LatticePoint &, const LatticePoint &) = default;
  // Lexicographic on coordinates; shorter vectors first.
  friend std::strong_ordering operator<=>(const LatticePoint &a,
                                          const LatticePoint &b) {
    if (a.dim() != b.dim()) return a.dim() <=> b.dim();
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (a.coords_[i] < b.coords_[i]) return std::strong_ordering::less;
      if (b.coords_[i] < a.coords_[i]) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  friend std::ostream &operator<<(std::ostream &os, const LatticePoint &p) {
    os << '(';
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (i) os << ',';
      os << p.coords_[i];
    }
    return os << ')';
  }

private:
  void check_dim(const LatticePoint &o) const {
    if (o.dim() != dim()) throw InputError("lattice point dimension mismatch");
  }

  std::vector<Integer> coords_;
};

using MPoint = LatticePoint<MTag>;
using NPoint = LatticePoint<NTag>;

template <class Tag> std::string to_string(const LatticePoint<Tag> &p) {
  std::string s;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) s += ' ';
    s += p[i].str();
  }
  return s;
}

/// The natural pairing <x, y> between a lattice and its dual.
template <class Tag>
Integer pairing(const LatticePoint<Tag> &x,
                const LatticePoint<dual_lattice_t<Tag>> &y) {
  if (x.dim() != y.dim())
    throw InputError("pairing: dimension mismatch (" +
                     std::to_string(x.dim()) + " vs " +
                     std::to_string(y.dim()) + ")");
  Integer s = 0;
  for (std::size_t i = 0; i < x.dim(); ++i) s += x[i] * y[i];
  return s;
}

inline Integer gcd(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto &c : v) g = boost::multiprecision::gcd(g, c);
  return g;
}

/// `v` divided by the gcd of its coordinates.
template <class Tag> LatticePoint<Tag> primitive(const LatticePoint<Tag> &v) {
  if (v.is_zero()) throw InputError("primitive: zero vector");
  Integer g = gcd(v.coords());
  LatticePoint<Tag> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v[i] / g;
  return out;
}

template <class Tag> bool is_primitive(const LatticePoint<Tag> &v) {
  return !v.is_zero() && gcd(v.coords()) == 1;
}

/// Affine hyperplane {x in Tag-lattice : <x, normal> = offset} with a
/// primitive normal in the dual lattice.
template <class Tag> class RationalHyperplane {
public:
  using Normal = LatticePoint<dual_lattice_t<Tag>>;

  RationalHyperplane(Normal normal, Integer offset)
      : normal_(std::move(normal)), offset_(std::move(offset)) {
    if (!is_primitive(normal_))
      throw InputError("hyperplane normal must be primitive");
  }

  [[nodiscard]] const Normal &normal() const { return normal_; }
  [[nodiscard]] const Integer &offset() const { return offset_; }

  /// <p, normal> - offset.
  [[nodiscard]] Integer evaluate(const LatticePoint<Tag> &p) const {
    return pairing(p, normal_) - offset_;
  }
  [[nodiscard]] bool contains(const LatticePoint<Tag> &p) const {
    return evaluate(p) == 0;
  }

  friend bool operator==(const RationalHyperplane &,
                         const RationalHyperplane &) = default;

private:
  Normal normal_;
  Integer offset_;
};

/// |c - <p, n_H>| for H = {<x, n_H> = c}.
template <class Tag>
Integer integral_distance(const RationalHyperplane<Tag> &h,
                          const LatticePoint<Tag> &p) {
  Integer d = h.offset() - pairing(p, h.normal());
  return d < 0 ? Integer(-d) : d;
}

inline std::string to_string(const Rational &q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

} // namespace cytoric
