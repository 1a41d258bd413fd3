#pragma once

// Exact combinatorics of the Farey tessellation F: edges, complementary
// triangles, generations, fans with their integer indexing, chains, and the
// dual tree rooted at the base triangle (0, 1, ∞).

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "farey/moebius.hpp"
#include "farey/rational.hpp"

namespace farey {

/// True iff |ps - qr| = 1 for a = p/q, b = r/s.
bool is_farey_edge(const ExtendedRational& a, const ExtendedRational& b);

/// Edge of F, stored with endpoints in canonical order (finite ascending,
/// ∞ last).
class FareyEdge {
 public:
  /// Throws std::invalid_argument if (x, y) is not an edge of F.
  FareyEdge(ExtendedRational x, ExtendedRational y);

  /// Parses "p/q|r/s"; endpoints may come in either order.
  static FareyEdge parse_key(std::string_view key);

  const ExtendedRational& a() const { return a_; }
  const ExtendedRational& b() const { return b_; }

  bool contains(const ExtendedRational& v) const { return v == a_ || v == b_; }
  /// The endpoint that is not v. Precondition: contains(v).
  const ExtendedRational& other(const ExtendedRational& v) const;

  std::string key() const { return a_.key() + "|" + b_.key(); }

  friend bool operator==(const FareyEdge&, const FareyEdge&) = default;

 private:
  ExtendedRational a_;
  ExtendedRational b_;
};

bool canonical_less(const FareyEdge& e, const FareyEdge& f);
std::optional<ExtendedRational> common_endpoint(const FareyEdge& e, const FareyEdge& f);

struct FareyEdgeHash {
  std::size_t operator()(const FareyEdge& e) const;
};

/// Third vertices of the two complementary triangles on either side of e:
/// (mediant, anti-mediant) of the endpoints.
std::pair<ExtendedRational, ExtendedRational> flanking_vertices(const FareyEdge& e);

/// Complementary triangle of F, vertices in canonical order.
class Triangle {
 public:
  /// Throws std::invalid_argument unless the three points are pairwise
  /// Farey neighbours.
  Triangle(ExtendedRational x, ExtendedRational y, ExtendedRational z);
  Triangle(const FareyEdge& side, const ExtendedRational& apex) : Triangle(side.a(), side.b(), apex) {}

  const std::array<ExtendedRational, 3>& vertices() const { return v_; }
  bool contains(const ExtendedRational& x) const;
  bool has_side(const FareyEdge& e) const { return contains(e.a()) && contains(e.b()); }
  std::array<FareyEdge, 3> sides() const;
  /// Vertex opposite the side e. Precondition: has_side(e).
  const ExtendedRational& opposite(const FareyEdge& e) const;
  std::string key() const;

  friend bool operator==(const Triangle&, const Triangle&) = default;

 private:
  std::array<ExtendedRational, 3> v_;
};

Triangle base_triangle();

/// Whether the ideal point v (not an endpoint of e) lies in the closed half
/// plane bounded by e that contains the base triangle.
bool on_base_side(const FareyEdge& e, const ExtendedRational& v);

/// Farey generation: dual-tree depth of the edge, 0 for the sides of the
/// base triangle.
std::size_t generation(const FareyEdge& e);

/// Dual-tree distance from the base triangle.
std::size_t triangle_depth(const Triangle& t);

/// The side of t facing the base triangle. Precondition: t is not the base.
FareyEdge parent_edge(const Triangle& t);

enum class RootSide { Base, Side01, Side1Inf, SideInf0 };
enum class Turn { Left, Right };

/// Path in the dual tree. Each step enters a triangle through a side {u, v}
/// with new vertex w, (u, w, v) positively ordered; Left continues through
/// (u, w) and Right through (w, v).
struct TriangleAddress {
  RootSide root = RootSide::Base;
  std::vector<Turn> word;

  friend bool operator==(const TriangleAddress&, const TriangleAddress&) = default;
};

/// Throws std::invalid_argument for a nonempty word under RootSide::Base.
Triangle decode(const TriangleAddress& address);
TriangleAddress address_of(const Triangle& t);
std::string to_string(const TriangleAddress& address);

/// Edges crossed from the base triangle to the target, nearest the base first.
std::vector<FareyEdge> dual_path(const TriangleAddress& address);
std::vector<FareyEdge> dual_path(const Triangle& t);

/// Integral z ↦ (az + b)/(cz + d) with ad - bc = 1.
struct IntegralMoebius {
  BigInt a = 1, b = 0, c = 0, d = 1;

  ExtendedRational operator()(const ExtendedRational& x) const;
  IntegralMoebius inverse() const { return {d, -b, -c, a}; }
  Moebius to_real() const;
};

/// Canonical A in PSL2(Z) with A(p) = ∞: bottom row (q, -r) for p = r/q,
/// top row from the extended Euclidean algorithm with 0 <= a < q.
IntegralMoebius normalizer_to_infinity(const ExtendedRational& p);

/// The n-th edge of the fan at p: A⁻¹((n, ∞)).
FareyEdge fan_edge(const ExtendedRational& p, long long n);
std::vector<FareyEdge> fan(const ExtendedRational& p, long long lo, long long hi);
/// Index of e in the fan at p. Throws std::invalid_argument if p is not an
/// endpoint of e.
long long fan_index(const ExtendedRational& p, const FareyEdge& e);

/// Consecutive edges share one endpoint; flag i marks a fan change, i.e.
/// edges i, i+1, i+2 have no common endpoint.
class Chain {
 public:
  const std::vector<FareyEdge>& edges() const { return edges_; }
  const std::vector<bool>& fan_change_flags() const { return flags_; }
  std::size_t size() const { return edges_.size(); }
  const FareyEdge& operator[](std::size_t i) const { return edges_[i]; }
  /// Common endpoint of edges i and i+1.
  const ExtendedRational& pivot(std::size_t i) const { return pivots_[i]; }

 private:
  friend Chain validate_chain(std::vector<FareyEdge> edges);
  std::vector<FareyEdge> edges_;
  std::vector<bool> flags_;
  std::vector<ExtendedRational> pivots_;
};

/// Throws std::invalid_argument on an empty sequence, non-adjacent
/// neighbours or repeated edges.
Chain validate_chain(std::vector<FareyEdge> edges);

/// Edges start, start±1, ... of the fan at p.
Chain fan_chain(const ExtendedRational& p, long long start, std::size_t count, bool increasing);

/// Chain built by walking fans. The walk starts at `start`, turns about its
/// endpoint `pivot` in direction `direction` (±1 in fan index), then for each
/// entry of `switches` either keeps turning about the same point (false) or
/// switches to the far endpoint of the current edge, stepping away from the
/// triangle just swept (true). Every step moves to an adjacent edge, so
/// consecutive edges always bound a common triangle.
Chain walk_chain(const FareyEdge& start, const ExtendedRational& pivot, int direction,
                 const std::vector<bool>& switches);

struct EdgeRecord {
  FareyEdge edge;
  std::size_t generation;
};

struct TriangleRecord {
  Triangle triangle;
  std::size_t depth;
};

struct VertexRecord {
  ExtendedRational vertex;
  std::size_t generation;
};

/// All edges of generation <= max_generation, ordered by (generation,
/// canonical order). Built breadth-first from the sides of the base.
std::vector<EdgeRecord> enumerate_edges(std::size_t max_generation);

/// All triangles with depth <= max_depth in breadth-first order.
std::vector<TriangleRecord> enumerate_triangles(std::size_t max_depth);

/// Vertex generation: depth of the triangle in which the vertex first
/// appears (0, 1 and ∞ have generation 0).
std::size_t vertex_generation(const ExtendedRational& v);
Triangle birth_triangle(const ExtendedRational& v);

/// All vertices of generation <= max_generation, ordered by (generation,
/// canonical order).
std::vector<VertexRecord> enumerate_vertices(std::size_t max_generation);

}  // namespace farey
