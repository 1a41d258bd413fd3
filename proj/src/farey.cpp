#include "farey/farey.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include <boost/functional/hash.hpp>

namespace farey {

namespace {

BigInt floor_mod(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

// Returns (x, y) with u*x + v*y = 1. Precondition: gcd(u, v) = 1.
std::pair<BigInt, BigInt> bezout(const BigInt& u, const BigInt& v) {
  BigInt old_r = u, r = v;
  BigInt old_x = 1, x = 0;
  BigInt old_y = 0, y = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_x - q * x;
    old_x = x;
    x = t;
    t = old_y - q * y;
    old_y = y;
    y = t;
  }
  if (old_r == -1) return {-old_x, -old_y};
  if (old_r != 1) throw std::logic_error("bezout: arguments not coprime");
  return {old_x, old_y};
}

ExtendedRational mediant(const ExtendedRational& x, const ExtendedRational& y) {
  return ExtendedRational(x.num() + y.num(), x.den() + y.den());
}

ExtendedRational antimediant(const ExtendedRational& x, const ExtendedRational& y) {
  return ExtendedRational(x.num() - y.num(), x.den() - y.den());
}

bool is_base_side(const FareyEdge& e) {
  const ExtendedRational zero(0), one(1);
  const ExtendedRational inf = ExtendedRational::infinity();
  return e == FareyEdge(zero, one) || e == FareyEdge(one, inf) || e == FareyEdge(zero, inf);
}

// Third vertex of the flanking triangle on the base side of e.
ExtendedRational inward_vertex(const FareyEdge& e) {
  auto [m, n] = flanking_vertices(e);
  return on_base_side(e, m) ? m : n;
}

// Neighbouring triangle of t across its side e.
Triangle cross(const Triangle& t, const FareyEdge& e) {
  auto [m, n] = flanking_vertices(e);
  return Triangle(e, t.contains(m) ? n : m);
}

// Endpoints (u, v) of e with (u, w, v) positively ordered.
std::pair<ExtendedRational, ExtendedRational> oriented_around(const FareyEdge& e, const ExtendedRational& w) {
  if (cyclically_ordered(e.a(), w, e.b())) return {e.a(), e.b()};
  return {e.b(), e.a()};
}

// Crossed edges from the base outward, computed by descent.
std::vector<FareyEdge> descend(Triangle t) {
  std::vector<FareyEdge> path;
  const Triangle base = base_triangle();
  while (!(t == base)) {
    FareyEdge f = parent_edge(t);
    path.push_back(f);
    t = Triangle(f, inward_vertex(f));
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

bool is_farey_edge(const ExtendedRational& a, const ExtendedRational& b) { return determinant_gap(a, b) == 1; }

FareyEdge::FareyEdge(ExtendedRational x, ExtendedRational y) {
  if (!is_farey_edge(x, y)) throw std::invalid_argument("not a Farey edge: " + x.key() + "|" + y.key());
  if (canonical_less(y, x)) std::swap(x, y);
  a_ = std::move(x);
  b_ = std::move(y);
}

FareyEdge FareyEdge::parse_key(std::string_view key) {
  auto bar = key.find('|');
  if (bar == std::string_view::npos || key.find('|', bar + 1) != std::string_view::npos)
    throw std::invalid_argument("malformed edge key '" + std::string(key) + "'");
  return FareyEdge(ExtendedRational::parse(key.substr(0, bar)), ExtendedRational::parse(key.substr(bar + 1)));
}

const ExtendedRational& FareyEdge::other(const ExtendedRational& v) const {
  if (v == a_) return b_;
  if (v == b_) return a_;
  throw std::invalid_argument(v.key() + " is not an endpoint of " + key());
}

bool canonical_less(const FareyEdge& e, const FareyEdge& f) {
  if (!(e.a() == f.a())) return canonical_less(e.a(), f.a());
  return canonical_less(e.b(), f.b());
}

std::optional<ExtendedRational> common_endpoint(const FareyEdge& e, const FareyEdge& f) {
  if (e == f) return std::nullopt;
  if (f.contains(e.a())) return e.a();
  if (f.contains(e.b())) return e.b();
  return std::nullopt;
}

std::size_t FareyEdgeHash::operator()(const FareyEdge& e) const {
  std::size_t seed = hash_value(e.a());
  boost::hash_combine(seed, hash_value(e.b()));
  return seed;
}

std::pair<ExtendedRational, ExtendedRational> flanking_vertices(const FareyEdge& e) {
  return {mediant(e.a(), e.b()), antimediant(e.a(), e.b())};
}

Triangle::Triangle(ExtendedRational x, ExtendedRational y, ExtendedRational z) : v_{std::move(x), std::move(y), std::move(z)} {
  if (!is_farey_edge(v_[0], v_[1]) || !is_farey_edge(v_[1], v_[2]) || !is_farey_edge(v_[0], v_[2]))
    throw std::invalid_argument("not a complementary triangle: " + v_[0].key() + ", " + v_[1].key() + ", " + v_[2].key());
  std::sort(v_.begin(), v_.end(), [](const auto& p, const auto& q) { return canonical_less(p, q); });
}

bool Triangle::contains(const ExtendedRational& x) const { return x == v_[0] || x == v_[1] || x == v_[2]; }

std::array<FareyEdge, 3> Triangle::sides() const {
  return {FareyEdge(v_[0], v_[1]), FareyEdge(v_[1], v_[2]), FareyEdge(v_[0], v_[2])};
}

const ExtendedRational& Triangle::opposite(const FareyEdge& e) const {
  for (const auto& v : v_)
    if (!e.contains(v)) return v;
  throw std::invalid_argument("edge " + e.key() + " is not a side of triangle " + key());
}

std::string Triangle::key() const { return v_[0].key() + "|" + v_[1].key() + "|" + v_[2].key(); }

Triangle base_triangle() { return Triangle(ExtendedRational(0), ExtendedRational(1), ExtendedRational::infinity()); }

bool on_base_side(const FareyEdge& e, const ExtendedRational& v) {
  if (e.contains(v)) throw std::invalid_argument("on_base_side: point is an endpoint of the edge");
  if (e.b().is_infinite()) {
    // (n, ∞): the base lies on the side x > n when n <= 0.
    bool right = compare_finite(v, e.a()) > 0;
    return right == (e.a().num() <= 0);
  }
  // The base triangle is always outside a finite edge's semicircle.
  return v.is_infinite() || compare_finite(v, e.a()) < 0 || compare_finite(v, e.b()) > 0;
}

FareyEdge parent_edge(const Triangle& t) {
  for (const auto& f : t.sides())
    if (!on_base_side(f, t.opposite(f))) return f;
  throw std::invalid_argument("the base triangle has no parent edge");
}

std::size_t triangle_depth(const Triangle& t) { return descend(t).size(); }

std::size_t generation(const FareyEdge& e) {
  if (is_base_side(e)) return 0;
  return triangle_depth(Triangle(e, inward_vertex(e)));
}

Triangle decode(const TriangleAddress& address) {
  Triangle t = base_triangle();
  if (address.root == RootSide::Base) {
    if (!address.word.empty()) throw std::invalid_argument("base address with a nonempty word");
    return t;
  }
  const ExtendedRational zero(0), one(1);
  const ExtendedRational inf = ExtendedRational::infinity();
  FareyEdge f = address.root == RootSide::Side01 ? FareyEdge(zero, one)
                : address.root == RootSide::Side1Inf ? FareyEdge(one, inf)
                                                      : FareyEdge(zero, inf);
  t = cross(t, f);
  for (Turn turn : address.word) {
    ExtendedRational w = t.opposite(f);
    auto [u, v] = oriented_around(f, w);
    f = turn == Turn::Left ? FareyEdge(u, w) : FareyEdge(w, v);
    t = cross(t, f);
  }
  return t;
}

TriangleAddress address_of(const Triangle& t) {
  std::vector<FareyEdge> path = descend(t);
  TriangleAddress address;
  if (path.empty()) return address;
  const ExtendedRational zero(0), one(1);
  if (path[0] == FareyEdge(zero, one))
    address.root = RootSide::Side01;
  else if (path[0] == FareyEdge(one, ExtendedRational::infinity()))
    address.root = RootSide::Side1Inf;
  else
    address.root = RootSide::SideInf0;
  Triangle current = cross(base_triangle(), path[0]);
  for (std::size_t i = 1; i < path.size(); ++i) {
    ExtendedRational w = current.opposite(path[i - 1]);
    auto [u, v] = oriented_around(path[i - 1], w);
    address.word.push_back(path[i] == FareyEdge(u, w) ? Turn::Left : Turn::Right);
    current = cross(current, path[i]);
  }
  return address;
}

std::string to_string(const TriangleAddress& address) {
  static const char* roots[] = {"base", "0|1", "1|inf", "inf|0"};
  std::string out = roots[static_cast<int>(address.root)];
  if (!address.word.empty()) out += ":";
  for (Turn t : address.word) out += t == Turn::Left ? 'L' : 'R';
  return out;
}

std::vector<FareyEdge> dual_path(const Triangle& t) { return descend(t); }

std::vector<FareyEdge> dual_path(const TriangleAddress& address) { return descend(decode(address)); }

ExtendedRational IntegralMoebius::operator()(const ExtendedRational& x) const {
  return ExtendedRational(a * x.num() + b * x.den(), c * x.num() + d * x.den());
}

Moebius IntegralMoebius::to_real() const {
  return Moebius(a.convert_to<Real>(), b.convert_to<Real>(), c.convert_to<Real>(), d.convert_to<Real>());
}

IntegralMoebius normalizer_to_infinity(const ExtendedRational& p) {
  if (p.is_infinite()) return {};
  const BigInt& r = p.num();
  const BigInt& s = p.den();
  // a*r + b*s = -1 with 0 <= a < s.
  auto [x, y] = bezout(r, s);
  BigInt a = -x, b = -y;
  BigInt a0 = floor_mod(a, s);
  BigInt k = (a0 - a) / s;
  return {a0, b - k * r, s, -r};
}

FareyEdge fan_edge(const ExtendedRational& p, long long n) {
  return FareyEdge(normalizer_to_infinity(p).inverse()(ExtendedRational(n)), p);
}

std::vector<FareyEdge> fan(const ExtendedRational& p, long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("fan: lo > hi");
  IntegralMoebius inv = normalizer_to_infinity(p).inverse();
  std::vector<FareyEdge> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long long n = lo; n <= hi; ++n) out.emplace_back(inv(ExtendedRational(n)), p);
  return out;
}

long long fan_index(const ExtendedRational& p, const FareyEdge& e) {
  ExtendedRational image = normalizer_to_infinity(p)(e.other(p));
  if (!image.is_integer()) throw std::logic_error("fan_index: image is not an integer");
  if (boost::multiprecision::abs(image.num()) > BigInt(std::numeric_limits<long long>::max() / 2))
    throw std::out_of_range("fan_index: index overflow");
  return image.num().convert_to<long long>();
}

Chain validate_chain(std::vector<FareyEdge> edges) {
  if (edges.empty()) throw std::invalid_argument("chain must be nonempty");
  Chain chain;
  std::unordered_set<FareyEdge, FareyEdgeHash> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!seen.insert(edges[i]).second) throw std::invalid_argument("chain repeats edge " + edges[i].key());
    if (i + 1 < edges.size()) {
      auto p = common_endpoint(edges[i], edges[i + 1]);
      if (!p) throw std::invalid_argument("chain edges " + edges[i].key() + " and " + edges[i + 1].key() + " share no endpoint");
      chain.pivots_.push_back(*p);
    }
  }
  for (std::size_t i = 0; i + 2 < edges.size(); ++i) chain.flags_.push_back(!(chain.pivots_[i] == chain.pivots_[i + 1]));
  chain.edges_ = std::move(edges);
  return chain;
}

Chain fan_chain(const ExtendedRational& p, long long start, std::size_t count, bool increasing) {
  std::vector<FareyEdge> edges;
  long long step = increasing ? 1 : -1;
  for (std::size_t j = 0; j < count; ++j) edges.push_back(fan_edge(p, start + step * static_cast<long long>(j)));
  return validate_chain(std::move(edges));
}

Chain walk_chain(const FareyEdge& start, const ExtendedRational& pivot, int direction,
                 const std::vector<bool>& switches) {
  if (direction != 1 && direction != -1) throw std::invalid_argument("walk_chain: direction must be +1 or -1");
  if (!start.contains(pivot)) throw std::invalid_argument("walk_chain: pivot is not an endpoint of the start edge");
  std::vector<FareyEdge> edges{start};
  ExtendedRational p = pivot;
  long long d = direction;
  edges.push_back(fan_edge(p, fan_index(p, start) + d));
  for (bool sw : switches) {
    const FareyEdge prev = edges[edges.size() - 2];
    const FareyEdge cur = edges.back();
    if (!sw) {
      edges.push_back(fan_edge(p, fan_index(p, cur) + d));
      continue;
    }
    ExtendedRational q = cur.other(p);
    ExtendedRational swept = prev.other(p);
    auto [m, n] = flanking_vertices(cur);
    FareyEdge next(q, m == swept ? n : m);
    d = fan_index(q, next) > fan_index(q, cur) ? 1 : -1;
    p = q;
    edges.push_back(next);
  }
  return validate_chain(std::move(edges));
}

std::vector<TriangleRecord> enumerate_triangles(std::size_t max_depth) {
  struct Item {
    Triangle triangle;
    std::size_t depth;
    std::optional<FareyEdge> entered;
  };
  std::vector<TriangleRecord> out;
  std::deque<Item> queue{{base_triangle(), 0, std::nullopt}};
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    out.push_back({item.triangle, item.depth});
    if (item.depth == max_depth) continue;
    for (const auto& f : item.triangle.sides()) {
      if (item.entered && f == *item.entered) continue;
      queue.push_back({cross(item.triangle, f), item.depth + 1, f});
    }
  }
  return out;
}

std::vector<EdgeRecord> enumerate_edges(std::size_t max_generation) {
  std::vector<EdgeRecord> out;
  for (const auto& f : base_triangle().sides()) out.push_back({f, 0});
  // A triangle at depth d >= 1 contributes its two outward sides, of generation d.
  std::deque<std::pair<Triangle, FareyEdge>> queue;
  for (const auto& f : base_triangle().sides()) queue.emplace_back(cross(base_triangle(), f), f);
  for (std::size_t d = 1; d <= max_generation; ++d) {
    std::size_t level = queue.size();
    for (std::size_t i = 0; i < level; ++i) {
      auto [t, entered] = queue.front();
      queue.pop_front();
      for (const auto& f : t.sides()) {
        if (f == entered) continue;
        out.push_back({f, d});
        if (d < max_generation) queue.emplace_back(cross(t, f), f);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const EdgeRecord& x, const EdgeRecord& y) {
    if (x.generation != y.generation) return x.generation < y.generation;
    return canonical_less(x.edge, y.edge);
  });
  return out;
}

Triangle birth_triangle(const ExtendedRational& v) {
  if (v.is_infinite() || v == ExtendedRational(0) || v == ExtendedRational(1)) return base_triangle();
  const ExtendedRational inf = ExtendedRational::infinity();
  if (v.is_integer()) {
    BigInt n = v.num();
    if (n >= 2) return Triangle(ExtendedRational(n - 1, 1), v, inf);
    return Triangle(v, ExtendedRational(n + 1, 1), inf);
  }
  // Neighbours p'/q' < p/q < p''/q'' with p q' - p' q = 1.
  const BigInt& p = v.num();
  const BigInt& q = v.den();
  BigInt qi = floor_mod(bezout(floor_mod(p, q), q).first, q);
  BigInt pi = (p * qi - 1) / q;
  return Triangle(ExtendedRational(pi, qi), v, ExtendedRational(p - pi, q - qi));
}

std::size_t vertex_generation(const ExtendedRational& v) { return triangle_depth(birth_triangle(v)); }

std::vector<VertexRecord> enumerate_vertices(std::size_t max_generation) {
  std::vector<VertexRecord> out;
  for (const auto& v : base_triangle().vertices()) out.push_back({v, 0});
  std::deque<std::pair<Triangle, FareyEdge>> queue;
  for (const auto& f : base_triangle().sides()) queue.emplace_back(cross(base_triangle(), f), f);
  for (std::size_t d = 1; d <= max_generation; ++d) {
    std::size_t level = queue.size();
    for (std::size_t i = 0; i < level; ++i) {
      auto [t, entered] = queue.front();
      queue.pop_front();
      out.push_back({t.opposite(entered), d});
      if (d == max_generation) continue;
      for (const auto& f : t.sides())
        if (!(f == entered)) queue.emplace_back(cross(t, f), f);
    }
  }
  std::sort(out.begin(), out.end(), [](const VertexRecord& x, const VertexRecord& y) {
    if (x.generation != y.generation) return x.generation < y.generation;
    return canonical_less(x.vertex, y.vertex);
  });
  return out;
}

}  // namespace farey
