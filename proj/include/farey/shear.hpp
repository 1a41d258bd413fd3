#pragma once

// Shear coordinates on F: the shear map of a circle homeomorphism, and the
// inverse construction through the cocycle H_s and the characteristic map h_s.

#include <cstddef>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "farey/farey.hpp"
#include "farey/moebius.hpp"

namespace farey {

/// Finite table of shears on edges of generation <= depth; every other edge
/// reads as the default value.
class ShearMap {
 public:
  explicit ShearMap(std::size_t depth = 0, Real default_value = 0) : depth_(depth), default_(default_value) {}

  /// Throws std::invalid_argument if generation(e) exceeds depth().
  void set(const FareyEdge& e, Real value);
  /// Same, trusting the caller's generation.
  void set(const FareyEdge& e, Real value, std::size_t generation);

  Real operator()(const FareyEdge& e) const;
  bool in_support(const FareyEdge& e) const { return values_.count(e) != 0; }

  std::size_t depth() const { return depth_; }
  Real default_value() const { return default_; }
  std::size_t size() const { return values_.size(); }

  struct Entry {
    FareyEdge edge;
    std::size_t generation;
    Real value;
  };
  /// Support ordered by (generation, canonical edge order).
  std::vector<Entry> entries() const;

 private:
  std::size_t depth_;
  Real default_;
  std::unordered_map<FareyEdge, std::pair<Real, std::size_t>, FareyEdgeHash> values_;
};

/// A circle map evaluated on Farey vertices.
class VertexMap {
 public:
  using Function = std::function<Real(const ExtendedRational&)>;

  VertexMap(Function f, std::string name);

  Real operator()(const ExtendedRational& x) const { return f_(x); }
  const std::string& name() const { return name_; }
  /// Whether h(0) = 0, h(1) = 1 and h(∞) = ∞.
  bool fixes_base() const { return fixes_base_; }

 private:
  Function f_;
  std::string name_;
  bool fixes_base_;
};

/// Shear map of h on every edge of generation <= depth. Throws
/// std::invalid_argument when h reverses the cyclic order of a flanking
/// quadrilateral and DegenerateError when two image points coincide within
/// 1e-12.
ShearMap shear_from_homeo(const VertexMap& h, std::size_t depth);

struct CocycleValue {
  Moebius map;
  /// True when the path crossed edges beyond the shear map's depth, whose
  /// shear was read as the default.
  bool truncated = false;
};

/// H_s on a complementary triangle: the product of translations along the
/// crossed edges, nearest the base outermost. Each crossed edge is oriented
/// so that the base lies on its left.
CocycleValue cocycle(const ShearMap& s, const Triangle& t);
CocycleValue cocycle(const ShearMap& s, const TriangleAddress& address);

/// Translation factor contributed by crossing edge e out of the triangle
/// whose third vertex is `behind`.
Moebius crossing_translation(const FareyEdge& e, const ExtendedRational& behind, Real shear);

/// h_s(x). Exact with respect to the table for vertices of generation up to
/// depth + 1; deeper vertices throw std::out_of_range.
Real char_map_eval(const ShearMap& s, const ExtendedRational& x);

/// h_s tabulated on every vertex of generation <= vertex_depth in one pass
/// over the dual tree.
class CharacteristicMap {
 public:
  explicit CharacteristicMap(const ShearMap& s) : CharacteristicMap(s, s.depth() + 1) {}
  CharacteristicMap(const ShearMap& s, std::size_t vertex_depth);

  /// Throws std::out_of_range for vertices outside the table.
  Real operator()(const ExtendedRational& x) const;
  bool contains(const ExtendedRational& x) const { return values_.count(x) != 0; }
  std::size_t vertex_depth() const { return vertex_depth_; }
  /// True when the table used default shears beyond the map's depth.
  bool truncated() const { return truncated_; }

  VertexMap as_vertex_map() const;

 private:
  std::size_t vertex_depth_;
  bool truncated_;
  std::unordered_map<ExtendedRational, Real, ExtendedRationalHash> values_;
};

/// Test corpus of circle maps. Families: "moebius" (a, b, c, d),
/// "piecewise_linear" (k), "power" (alpha), "fan_earthquake" (c, depth).
/// Throws std::invalid_argument for unknown families or bad parameters.
VertexMap builtin_homeo(const std::string& family, const std::vector<Real>& params);

/// Constant shear c on the fan at ∞ up to the given generation, 0 elsewhere.
ShearMap fan_earthquake_shear(Real c, std::size_t depth);

}  // namespace farey
