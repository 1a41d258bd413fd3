#include "farey/shear.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <stdexcept>

namespace farey {

void ShearMap::set(const FareyEdge& e, Real value) { set(e, value, generation(e)); }

void ShearMap::set(const FareyEdge& e, Real value, std::size_t generation) {
  if (generation > depth_)
    throw std::invalid_argument("edge " + e.key() + " has generation " + std::to_string(generation) +
                                " beyond shear map depth " + std::to_string(depth_));
  values_.insert_or_assign(e, std::make_pair(value, generation));
}

Real ShearMap::operator()(const FareyEdge& e) const {
  auto it = values_.find(e);
  return it == values_.end() ? default_ : it->second.first;
}

std::vector<ShearMap::Entry> ShearMap::entries() const {
  std::vector<Entry> out;
  out.reserve(values_.size());
  for (const auto& [e, v] : values_) out.push_back({e, v.second, v.first});
  std::sort(out.begin(), out.end(), [](const Entry& x, const Entry& y) {
    if (x.generation != y.generation) return x.generation < y.generation;
    return canonical_less(x.edge, y.edge);
  });
  return out;
}

VertexMap::VertexMap(Function f, std::string name) : f_(std::move(f)), name_(std::move(name)), fixes_base_(false) {
  try {
    fixes_base_ = f_(ExtendedRational(0)) == 0 && f_(ExtendedRational(1)) == 1 &&
                  is_infinite(f_(ExtendedRational::infinity()));
  } catch (const std::exception&) {
    fixes_base_ = false;
  }
}

namespace {

bool nearly_equal(Real x, Real y) {
  if (is_infinite(x) || is_infinite(y)) return is_infinite(x) && is_infinite(y);
  Real scale = std::max({Real(1), std::fabs(x), std::fabs(y)});
  return std::fabs(x - y) <= Real(1e-12) * scale;
}

}  // namespace

ShearMap shear_from_homeo(const VertexMap& h, std::size_t depth) {
  std::unordered_map<ExtendedRational, Real, ExtendedRationalHash> cache;
  auto image = [&](const ExtendedRational& x) {
    auto it = cache.find(x);
    if (it != cache.end()) return it->second;
    Real y = h(x);
    if (std::isnan(y)) throw DegenerateError("map is undefined at " + x.key());
    if (is_infinite(y)) y = kInfinity;
    cache.emplace(x, y);
    return y;
  };

  ShearMap s(depth);
  for (const auto& record : enumerate_edges(depth)) {
    const FareyEdge& e = record.edge;
    auto [m, n] = flanking_vertices(e);
    Real ha = image(e.a()), hb = image(e.b()), hm = image(m), hn = image(n);
    const Real pts[4] = {ha, hb, hm, hn};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (nearly_equal(pts[i], pts[j]))
          throw DegenerateError("image points coincide around edge " + e.key());
    if (cyclically_ordered(e.a(), m, e.b()) != cyclically_ordered(ha, hm, hb) ||
        cyclically_ordered(e.a(), n, e.b()) != cyclically_ordered(ha, hn, hb))
      throw std::invalid_argument("map is not monotone around edge " + e.key());
    s.set(e, shear_of_pair({ha, hb, hm}, {ha, hb, hn}, {ha, hb}), record.generation);
  }
  return s;
}

Moebius crossing_translation(const FareyEdge& e, const ExtendedRational& behind, Real shear) {
  if (shear == 0) return Moebius::identity();
  Geodesic axis = cyclically_ordered(e.a(), e.b(), behind) ? Geodesic{e.a().to_real(), e.b().to_real()}
                                                            : Geodesic{e.b().to_real(), e.a().to_real()};
  return hyperbolic_translation(axis, shear);
}

CocycleValue cocycle(const ShearMap& s, const Triangle& t) {
  std::vector<FareyEdge> path = dual_path(t);
  CocycleValue out;
  out.truncated = path.size() > s.depth() + 1;
  Triangle current = base_triangle();
  for (const auto& e : path) {
    ExtendedRational behind = current.opposite(e);
    out.map = out.map * crossing_translation(e, behind, s(e));
    auto [m, n] = flanking_vertices(e);
    current = Triangle(e, m == behind ? n : m);
  }
  return out;
}

CocycleValue cocycle(const ShearMap& s, const TriangleAddress& address) { return cocycle(s, decode(address)); }

namespace {

// Image of the vertex across e, given the images of the triangle behind it.
// Solves A(w) = e^shear for the A sending (behind, p, q) to (-1, 0, ∞), in
// closed form so that nearby points do not cancel.
Real place_across(Real behind, Real p, Real q, Real shear) {
  Real t = std::exp(shear);
  if (is_infinite(behind)) return p + t * (q - p) / (t + 1);
  if (is_infinite(q)) return p + t * (p - behind);
  if (is_infinite(p)) return q + (q - behind) / t;
  Real k = (q - behind) / (behind - p);
  return p + t * (q - p) / (t - k);
}

Real develop_across(const FareyEdge& e, const ExtendedRational& behind, Real h_behind, Real h_a, Real h_b,
                    Real shear) {
  if (cyclically_ordered(behind, e.a(), e.b())) return place_across(h_behind, h_a, h_b, shear);
  return place_across(h_behind, h_b, h_a, shear);
}

}  // namespace

Real char_map_eval(const ShearMap& s, const ExtendedRational& x) {
  if (vertex_generation(x) > s.depth() + 1)
    throw std::out_of_range("vertex " + x.key() + " lies beyond the shear map depth");
  Triangle current = base_triangle();
  if (current.contains(x)) return x.to_real();
  std::unordered_map<ExtendedRational, Real, ExtendedRationalHash> image;
  for (const auto& v : current.vertices()) image.emplace(v, v.to_real());
  for (const auto& e : dual_path(birth_triangle(x))) {
    ExtendedRational behind = current.opposite(e);
    auto [m, n] = flanking_vertices(e);
    ExtendedRational w = m == behind ? n : m;
    image[w] = develop_across(e, behind, image.at(behind), image.at(e.a()), image.at(e.b()), s(e));
    current = Triangle(e, w);
  }
  return image.at(x);
}

CharacteristicMap::CharacteristicMap(const ShearMap& s, std::size_t vertex_depth)
    : vertex_depth_(vertex_depth), truncated_(vertex_depth > s.depth() + 1) {
  struct Item {
    Triangle triangle;
    FareyEdge entered;
  };
  const Triangle base = base_triangle();
  for (const auto& v : base.vertices()) values_.emplace(v, v.to_real());
  std::deque<Item> queue;
  auto push_across = [&](const Triangle& t, const FareyEdge& e) {
    ExtendedRational behind = t.opposite(e);
    auto [m, n] = flanking_vertices(e);
    queue.push_back({Triangle(e, m == behind ? n : m), e});
  };
  for (const auto& e : base.sides()) push_across(base, e);
  for (std::size_t d = 1; d <= vertex_depth; ++d) {
    std::size_t level = queue.size();
    for (std::size_t i = 0; i < level; ++i) {
      Item item = std::move(queue.front());
      queue.pop_front();
      const FareyEdge& e = item.entered;
      const ExtendedRational& w = item.triangle.opposite(e);
      auto [m, n] = flanking_vertices(e);
      const ExtendedRational& behind = m == w ? n : m;
      values_.emplace(w, develop_across(e, behind, values_.at(behind), values_.at(e.a()), values_.at(e.b()), s(e)));
      if (d == vertex_depth) continue;
      for (const auto& f : item.triangle.sides())
        if (!(f == e)) push_across(item.triangle, f);
    }
  }
}

Real CharacteristicMap::operator()(const ExtendedRational& x) const {
  auto it = values_.find(x);
  if (it == values_.end()) throw std::out_of_range("vertex " + x.key() + " is outside the tabulated depth");
  return it->second;
}

VertexMap CharacteristicMap::as_vertex_map() const {
  auto table = std::make_shared<CharacteristicMap>(*this);
  return VertexMap([table](const ExtendedRational& x) { return (*table)(x); }, "characteristic_map");
}

ShearMap fan_earthquake_shear(Real c, std::size_t depth) {
  ShearMap s(depth);
  const long long reach = static_cast<long long>(depth);
  for (long long n = -reach; n <= reach + 1; ++n) s.set(FareyEdge(ExtendedRational(n), ExtendedRational::infinity()), c);
  return s;
}

namespace {

void expect_params(const std::string& family, const std::vector<Real>& params, std::size_t count) {
  if (params.size() != count)
    throw std::invalid_argument(family + " expects " + std::to_string(count) + " parameter(s), got " +
                                std::to_string(params.size()));
}

}  // namespace

VertexMap builtin_homeo(const std::string& family, const std::vector<Real>& params) {
  if (family == "moebius") {
    expect_params(family, params, 4);
    Moebius m(params[0], params[1], params[2], params[3]);
    return VertexMap([m](const ExtendedRational& x) { return m(x.to_real()); }, family);
  }
  if (family == "piecewise_linear") {
    expect_params(family, params, 1);
    Real k = params[0];
    if (!(k > 0)) throw std::invalid_argument("piecewise_linear needs k > 0");
    return VertexMap(
        [k](const ExtendedRational& x) {
          Real v = x.to_real();
          return (is_infinite(v) || v >= 0) ? v : k * v;
        },
        family);
  }
  if (family == "power") {
    expect_params(family, params, 1);
    Real alpha = params[0];
    if (!(alpha > 0)) throw std::invalid_argument("power needs alpha > 0");
    return VertexMap(
        [alpha](const ExtendedRational& x) {
          Real v = x.to_real();
          if (is_infinite(v)) return v;
          return std::copysign(std::pow(std::fabs(v), alpha), v);
        },
        family);
  }
  if (family == "fan_earthquake") {
    expect_params(family, params, 2);
    if (!(params[1] >= 0) || params[1] != std::floor(params[1]))
      throw std::invalid_argument("fan_earthquake depth must be a non-negative integer");
    auto table = std::make_shared<CharacteristicMap>(fan_earthquake_shear(params[0], static_cast<std::size_t>(params[1])));
    return VertexMap([table](const ExtendedRational& x) { return (*table)(x); }, family);
  }
  throw std::invalid_argument("unknown map family '" + family + "'");
}

}  // namespace farey
