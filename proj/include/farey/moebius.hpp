#pragma once

// Möbius maps of the upper half-plane and the ideal-boundary geometry built
// on them: cross-ratios, hyperbolic translations, shears of ideal triangle
// pairs, horocycles, and the Cayley transform used for rendering.
//
// Points of the extended real line are plain Reals; ∞ is +inf (a -inf input
// is read as the same point). Every routine returns +inf for ∞.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "farey/rational.hpp"

namespace farey {

using Complex = std::complex<Real>;

inline constexpr Real kInfinity = std::numeric_limits<Real>::infinity();

inline bool is_infinite(Real x) { return std::isinf(x); }

/// Raised when floating-point input is too degenerate to give a meaningful
/// answer (coincident points, collapsed triangles).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// True iff x, y, z are pairwise distinct and positively ordered on R ∪ {∞}.
bool cyclically_ordered(Real x, Real y, Real z);

/// z ↦ (az + b)/(cz + d) with ad - bc > 0, always stored with determinant 1.
class Moebius {
 public:
  Moebius() = default;
  /// Throws std::invalid_argument unless ad - bc > 0.
  Moebius(Real a, Real b, Real c, Real d);

  static Moebius identity() { return {}; }

  Real a() const { return a_; }
  Real b() const { return b_; }
  Real c() const { return c_; }
  Real d() const { return d_; }
  Real det() const { return a_ * d_ - b_ * c_; }

  Real operator()(Real x) const;
  Complex operator()(Complex z) const;

  /// (*this ∘ rhs), renormalised to determinant 1.
  Moebius operator*(const Moebius& rhs) const;
  Moebius inverse() const { return Moebius(d_, -b_, -c_, a_); }

 private:
  Real a_ = 1, b_ = 0, c_ = 0, d_ = 1;
};

/// The unique Möbius map with M(x1)=y1, M(x2)=y2, M(x3)=y3. Both triples must
/// be pairwise distinct and share the same cyclic orientation; otherwise
/// std::invalid_argument.
Moebius map_triple(Real x1, Real x2, Real x3, Real y1, Real y2, Real y3);

/// Orientation-preserving map sending p to ∞ (identity when p is ∞).
Moebius send_to_infinity(Real p);

/// cr(a,b,c,d) = (c-a)(d-b) / ((d-a)(c-b)), with the factors containing ∞
/// cancelled. Throws DegenerateError on coincident points.
Real cross_ratio(Real a, Real b, Real c, Real d);

/// Oriented geodesic with ideal endpoints.
struct Geodesic {
  Real from;
  Real to;
};

/// Translation by signed length t along the axis, moving points toward
/// axis.to when t > 0.
Moebius hyperbolic_translation(const Geodesic& axis, Real t);

using IdealTriangle = std::array<Real, 3>;

/// Shear of the pair (t1, t2) across their common side: the r with
/// A(t2) = (0, e^r, ∞) for the orientation-preserving A taking t1 to
/// (-1, 0, ∞) and the shared side to (0, ∞).
Real shear_of_pair(const IdealTriangle& t1, const IdealTriangle& t2, const Geodesic& shared);

/// Same quantity through a single cross-ratio of the quadrilateral, read in
/// the decreasing cyclic order (a, b, c, d) with diagonal (a, c):
/// ln(-(d-a)(b-c) / ((d-c)(b-a))). Used to cross-check shear_of_pair.
Real shear_by_cross_ratio(const IdealTriangle& t1, const IdealTriangle& t2, const Geodesic& shared);

/// Horocycle tangent to the boundary at `center`. For a finite center `size`
/// is the Euclidean diameter; for ∞ it is the height of the horizontal line.
struct Horocycle {
  Real center;
  Real size;
};

/// Image of a horocycle under a Möbius map (exact rule via the derivative).
Horocycle transform(const Moebius& m, const Horocycle& h);

/// The horocycle centred at `center` passing through z.
Horocycle horocycle_through(Real center, Complex z);

/// The point where the geodesic from h.center to `other` crosses h.
Complex horocycle_meets_geodesic(const Horocycle& h, Real other);

/// Signed distance along the geodesic joining the centres between the points
/// where it meets c1 and c2; positive when the horocycles are disjoint.
Real horocycle_distance(const Horocycle& c1, const Horocycle& c2);

/// Length of the arc of h between the geodesics (h.center, other1) and
/// (h.center, other2).
Real wedge_horocyclic_length(const Horocycle& h, Real other1, Real other2);

/// Cayley transform z ↦ (z - i)/(z + i) from the upper half-plane to the
/// unit disk; the boundary point x lands on the unit circle, ∞ on 1.
Complex to_disk(Complex z);
Complex to_disk_boundary(Real x);

}  // namespace farey
