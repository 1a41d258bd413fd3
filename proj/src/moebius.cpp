#include "farey/moebius.hpp"

namespace farey {

namespace {

bool same_point(Real x, Real y) { return (is_infinite(x) && is_infinite(y)) || x == y; }

bool circle_less(Real x, Real y) {
  if (is_infinite(x)) return false;
  if (is_infinite(y)) return true;
  return x < y;
}

// Raw 2x2 matrix; used where the determinant sign carries orientation.
struct Mat {
  Real a, b, c, d;
  Real det() const { return a * d - b * c; }
  Mat operator*(const Mat& m) const {
    return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
  }
  Mat adjugate() const { return {d, -b, -c, a}; }
};

// Sends (x1, x2, x3) to (0, 1, ∞); determinant sign is the orientation of the triple.
Mat to_standard(Real x1, Real x2, Real x3) {
  if (is_infinite(x1)) return {0, x2 - x3, 1, -x3};
  if (is_infinite(x2)) return {1, -x1, 1, -x3};
  if (is_infinite(x3)) return {1, -x1, 0, x2 - x1};
  return {x2 - x3, -x1 * (x2 - x3), x2 - x1, -x3 * (x2 - x1)};
}

}  // namespace

bool cyclically_ordered(Real x, Real y, Real z) {
  if (same_point(x, y) || same_point(y, z) || same_point(z, x)) return false;
  bool xy = circle_less(x, y);
  bool yz = circle_less(y, z);
  bool zx = circle_less(z, x);
  return (xy && yz) || (yz && zx) || (zx && xy);
}

Moebius::Moebius(Real a, Real b, Real c, Real d) {
  Real det = a * d - b * c;
  if (!(det > 0) || !std::isfinite(det)) throw std::invalid_argument("Moebius map needs ad - bc > 0");
  Real s = 1 / std::sqrt(det);
  a_ = a * s;
  b_ = b * s;
  c_ = c * s;
  d_ = d * s;
}

Real Moebius::operator()(Real x) const {
  if (is_infinite(x)) return c_ == 0 ? kInfinity : a_ / c_;
  Real den = c_ * x + d_;
  if (den == 0) return kInfinity;
  Real value = (a_ * x + b_) / den;
  return is_infinite(value) ? kInfinity : value;
}

Complex Moebius::operator()(Complex z) const { return (a_ * z + b_) / (c_ * z + d_); }

Moebius Moebius::operator*(const Moebius& m) const {
  return Moebius(a_ * m.a_ + b_ * m.c_, a_ * m.b_ + b_ * m.d_, c_ * m.a_ + d_ * m.c_, c_ * m.b_ + d_ * m.d_);
}

Moebius map_triple(Real x1, Real x2, Real x3, Real y1, Real y2, Real y3) {
  if (same_point(x1, x2) || same_point(x2, x3) || same_point(x1, x3) || same_point(y1, y2) ||
      same_point(y2, y3) || same_point(y1, y3))
    throw std::invalid_argument("map_triple: degenerate triple");
  Mat m = to_standard(y1, y2, y3).adjugate() * to_standard(x1, x2, x3);
  if (!(m.det() > 0)) throw std::invalid_argument("map_triple: triples have opposite orientation");
  return Moebius(m.a, m.b, m.c, m.d);
}

Moebius send_to_infinity(Real p) {
  if (is_infinite(p)) return Moebius::identity();
  return Moebius(0, -1, 1, -p);
}

Real cross_ratio(Real a, Real b, Real c, Real d) {
  if (same_point(a, b) || same_point(a, c) || same_point(a, d) || same_point(b, c) || same_point(b, d) ||
      same_point(c, d))
    throw DegenerateError("cross_ratio: coincident points");
  if (is_infinite(a)) return (d - b) / (c - b);
  if (is_infinite(b)) return (c - a) / (d - a);
  if (is_infinite(c)) return (d - b) / (d - a);
  if (is_infinite(d)) return (c - a) / (c - b);
  return ((c - a) * (d - b)) / ((d - a) * (c - b));
}

Moebius hyperbolic_translation(const Geodesic& axis, Real t) {
  if (same_point(axis.from, axis.to)) throw std::invalid_argument("translation axis endpoints coincide");
  Moebius a;
  if (is_infinite(axis.from)) {
    a = Moebius(0, -1, 1, -axis.to);
  } else if (is_infinite(axis.to)) {
    a = Moebius(1, -axis.from, 0, 1);
  } else {
    Real k = axis.from > axis.to ? 1 : -1;
    a = Moebius(k, -k * axis.from, 1, -axis.to);
  }
  Moebius scale(std::exp(t / 2), 0, 0, std::exp(-t / 2));
  return a.inverse() * scale * a;
}

namespace {

struct PairFrame {
  Real off1;   // t1's vertex off the shared side
  Real off2;   // t2's vertex off the shared side
  Real left;   // shared endpoint sent to 0
  Real right;  // shared endpoint sent to ∞
};

Real off_vertex(const IdealTriangle& t, const Geodesic& shared) {
  int hits = 0;
  Real off = 0;
  int offs = 0;
  for (Real v : t) {
    if (same_point(v, shared.from) || same_point(v, shared.to)) {
      ++hits;
    } else {
      off = v;
      ++offs;
    }
  }
  if (hits != 2 || offs != 1) throw std::invalid_argument("shear_of_pair: shared edge is not a side of both triangles");
  return off;
}

PairFrame frame(const IdealTriangle& t1, const IdealTriangle& t2, const Geodesic& shared) {
  if (same_point(shared.from, shared.to)) throw DegenerateError("shear_of_pair: shared edge collapses");
  Real b = off_vertex(t1, shared);
  Real d = off_vertex(t2, shared);
  if (same_point(b, d)) throw std::invalid_argument("shear_of_pair: triangles coincide");
  bool side1 = cyclically_ordered(shared.from, b, shared.to);
  bool side2 = cyclically_ordered(shared.from, d, shared.to);
  if (side1 == side2) throw std::invalid_argument("shear_of_pair: triangle interiors overlap");
  // (b, left, right) must be positively ordered so that A sends it to (-1, 0, ∞).
  if (cyclically_ordered(b, shared.from, shared.to)) return {b, d, shared.from, shared.to};
  return {b, d, shared.to, shared.from};
}

}  // namespace

Real shear_of_pair(const IdealTriangle& t1, const IdealTriangle& t2, const Geodesic& shared) {
  PairFrame f = frame(t1, t2, shared);
  Moebius a = map_triple(f.off1, f.left, f.right, -1, 0, kInfinity);
  Real image = a(f.off2);
  if (!(image > 0) || is_infinite(image)) throw DegenerateError("shear_of_pair: image vertex not in the positive half");
  return std::log(image);
}

Real shear_by_cross_ratio(const IdealTriangle& t1, const IdealTriangle& t2, const Geodesic& shared) {
  PairFrame f = frame(t1, t2, shared);
  // (left, off1, right, off2) is the decreasing cyclic order.
  Real value = -cross_ratio(f.left, f.right, f.off2, f.off1);
  if (!(value > 0)) throw DegenerateError("shear_by_cross_ratio: non-positive cross-ratio");
  return std::log(value);
}

Horocycle transform(const Moebius& m, const Horocycle& h) {
  if (is_infinite(h.center)) {
    if (m.c() == 0) return {kInfinity, h.size * m.a() * m.a()};
    return {m.a() / m.c(), 1 / (m.c() * m.c() * h.size)};
  }
  Real den = m.c() * h.center + m.d();
  if (den == 0) return {kInfinity, 1 / (m.c() * m.c() * h.size)};
  return {m(h.center), h.size / (den * den)};
}

Horocycle horocycle_through(Real center, Complex z) {
  if (is_infinite(center)) return {kInfinity, z.imag()};
  Real dx = z.real() - center;
  return {center, (dx * dx + z.imag() * z.imag()) / z.imag()};
}

Complex horocycle_meets_geodesic(const Horocycle& h, Real other) {
  if (same_point(h.center, other)) throw std::invalid_argument("geodesic endpoint equals horocycle center");
  if (is_infinite(h.center)) return {other, h.size};
  if (is_infinite(other)) return {h.center, h.size};
  Complex chart(-1 / (other - h.center), 1 / h.size);
  return Complex(h.center, 0) - Real(1) / chart;
}

Real horocycle_distance(const Horocycle& c1, const Horocycle& c2) {
  if (same_point(c1.center, c2.center)) throw std::invalid_argument("horocycle_distance: equal centers");
  if (is_infinite(c1.center)) return std::log(c1.size / c2.size);
  if (is_infinite(c2.center)) return std::log(c2.size / c1.size);
  Real gap = c2.center - c1.center;
  return std::log(gap * gap / (c1.size * c2.size));
}

Real wedge_horocyclic_length(const Horocycle& h, Real other1, Real other2) {
  if (same_point(h.center, other1) || same_point(h.center, other2))
    throw std::invalid_argument("wedge_horocyclic_length: geodesics must end at the horocycle center");
  if (same_point(other1, other2)) return 0;
  if (is_infinite(h.center)) return std::fabs(other1 - other2) / h.size;
  auto inv = [&](Real o) { return is_infinite(o) ? Real(0) : 1 / (o - h.center); };
  return h.size * std::fabs(inv(other1) - inv(other2));
}

Complex to_disk(Complex z) {
  const Complex i(0, 1);
  return (z - i) / (z + i);
}

Complex to_disk_boundary(Real x) {
  if (is_infinite(x)) return {1, 0};
  return to_disk(Complex(x, 0));
}

}  // namespace farey
