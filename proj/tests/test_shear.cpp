#include <gtest/gtest.h>

#include <random>

#include "farey/shear.hpp"
#include "oracles.hpp"

using namespace farey;
using R = ExtendedRational;

namespace {

const R inf = R::infinity();

R q(const char* text) { return R::parse(text); }
FareyEdge E(const char* a, const char* b) { return FareyEdge(q(a), q(b)); }

}  // namespace

TEST(ShearMap, DefaultsAndDepth) {
  ShearMap s(2, 0.25);
  EXPECT_EQ(s(E("0", "1")), Real(0.25));
  s.set(E("1/2", "1"), -1);
  EXPECT_EQ(s(E("1/2", "1")), -1);
  EXPECT_TRUE(s.in_support(E("1/2", "1")));
  EXPECT_THROW(s.set(E("1/4", "1/3"), 1), std::invalid_argument);
  auto entries = s.entries();
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries[0].generation, 1u);
}

TEST(ShearFromHomeo, Examples) {
  auto id = shear_from_homeo(builtin_homeo("power", {1}), 6);
  for (const auto& e : id.entries()) EXPECT_NEAR(e.value, 0, 1e-15);
  auto pl = shear_from_homeo(builtin_homeo("piecewise_linear", {3}), 6);
  for (const auto& e : pl.entries()) {
    if (e.edge == E("0", "inf"))
      EXPECT_NEAR(e.value, -std::log(3.0L), 1e-15);
    else
      EXPECT_NEAR(e.value, 0, 1e-15) << e.edge.key();
  }
  EXPECT_EQ(pl.size(), enumerate_edges(6).size());
}

// Direct oracle: the only straddling quadruple is (-k, 0, 1, ∞) around (0,∞).
TEST(ShearFromHomeo, PiecewiseLinearQuadruple) {
  for (Real k : {Real(0.5), Real(2), Real(5)}) {
    Real direct = shear_of_pair({1, 0, kInfinity}, {-k, 0, kInfinity}, {0, kInfinity});
    auto s = shear_from_homeo(builtin_homeo("piecewise_linear", {k}), 2);
    EXPECT_NEAR(s(E("0", "inf")), direct, 1e-15);
    EXPECT_NEAR(direct, -std::log(k), 1e-15);
  }
}

TEST(ShearFromHomeo, Errors) {
  VertexMap flat([](const R& x) { return x.is_infinite() ? kInfinity : Real(0) * x.to_real(); }, "flat");
  EXPECT_THROW(shear_from_homeo(flat, 2), DegenerateError);
  VertexMap reversed([](const R& x) { return x.is_infinite() ? kInfinity : -x.to_real(); }, "reversed");
  EXPECT_THROW(shear_from_homeo(reversed, 2), std::invalid_argument);
  VertexMap undefined([](const R&) { return std::nanl(""); }, "undefined");
  EXPECT_THROW(shear_from_homeo(undefined, 2), DegenerateError);
}

TEST(BuiltinHomeo, Families) {
  EXPECT_NEAR(builtin_homeo("moebius", {1, 1, 0, 1})(q("0")), 1, 1e-18);
  auto pl1 = builtin_homeo("piecewise_linear", {1});
  auto pw1 = builtin_homeo("power", {1});
  for (const auto& v : enumerate_vertices(4)) {
    if (v.vertex.is_infinite()) continue;
    EXPECT_EQ(pl1(v.vertex), v.vertex.to_real());
    EXPECT_NEAR(pw1(v.vertex), v.vertex.to_real(), 1e-15);
  }
  EXPECT_TRUE(builtin_homeo("power", {2}).fixes_base());
  EXPECT_FALSE(builtin_homeo("moebius", {1, 1, 0, 1}).fixes_base());
  EXPECT_THROW(builtin_homeo("nope", {}), std::invalid_argument);
  EXPECT_THROW(builtin_homeo("power", {1, 2}), std::invalid_argument);
  EXPECT_THROW(builtin_homeo("power", {-1}), std::invalid_argument);
  EXPECT_THROW(builtin_homeo("moebius", {1, 0, 0, -1}), std::invalid_argument);
}

TEST(Cocycle, SingleEdgeExamples) {
  const Real t = 0.8;
  ShearMap s(3);
  s.set(E("0", "inf"), t);
  auto h = cocycle(s, Triangle(q("-1"), q("0"), inf));
  EXPECT_FALSE(h.truncated);
  for (Real x : {Real(-2), Real(-1), Real(0.5), Real(3)}) EXPECT_NEAR(h.map(x), std::exp(-t) * x, 1e-15);

  const Real u = -0.6;
  ShearMap s2(3);
  s2.set(E("1", "inf"), u);
  auto h2 = cocycle(s2, Triangle(q("1"), q("2"), inf));
  for (Real x : {Real(-2), Real(1), Real(1.5), Real(3)}) EXPECT_NEAR(h2.map(x), std::exp(u) * (x - 1) + 1, 1e-15);
  EXPECT_TRUE(cocycle(s2, base_triangle()).map.b() == 0);
}

TEST(Cocycle, AgreesWithCharacteristicMap) {
  std::mt19937_64 rng(21);
  ShearMap s = oracle::random_shear(rng, 6);
  CharacteristicMap h(s);
  for (const auto& r : enumerate_triangles(6)) {
    auto value = cocycle(s, r.triangle);
    EXPECT_FALSE(value.truncated);
    for (const auto& v : r.triangle.vertices()) {
      if (v.is_infinite()) continue;
      Real expected = h(v);
      Real got = value.map(v.to_real());
      if (is_infinite(expected)) continue;
      EXPECT_NEAR(got, expected, 1e-9 * (1 + std::fabs(expected))) << r.triangle.key();
    }
  }
}

TEST(CharacteristicMap, Examples) {
  ShearMap zero(5);
  for (const auto& v : enumerate_vertices(6)) {
    if (v.vertex.is_infinite()) continue;
    EXPECT_NEAR(char_map_eval(zero, v.vertex), v.vertex.to_real(), 1e-15);
  }
  const Real t = 0.4;
  ShearMap s(5);
  s.set(E("0", "inf"), t);
  for (const auto& v : enumerate_vertices(6)) {
    if (v.vertex.is_infinite()) continue;
    Real x = v.vertex.to_real();
    EXPECT_NEAR(char_map_eval(s, v.vertex), x >= 0 ? x : std::exp(-t) * x, 1e-15) << v.vertex.key();
  }
  std::mt19937_64 rng(4);
  ShearMap r = oracle::random_shear(rng, 5);
  EXPECT_EQ(char_map_eval(r, q("0")), 0);
  EXPECT_EQ(char_map_eval(r, q("1")), 1);
  EXPECT_TRUE(is_infinite(char_map_eval(r, inf)));
}

TEST(CharacteristicMap, StrictDepth) {
  ShearMap s(2);
  EXPECT_NO_THROW(char_map_eval(s, q("1/4")));
  EXPECT_THROW(char_map_eval(s, q("1/5")), std::out_of_range);
  CharacteristicMap table(s);
  EXPECT_TRUE(table.contains(q("1/4")));
  EXPECT_FALSE(table.contains(q("1/5")));
  EXPECT_THROW(table(q("1/5")), std::out_of_range);
}

TEST(CharacteristicMap, MonotoneOnVertices) {
  std::mt19937_64 rng(8);
  ShearMap s = oracle::random_shear(rng, 7, -2, 2);
  std::vector<std::pair<Real, Real>> pts;
  for (const auto& v : enumerate_vertices(8))
    if (!v.vertex.is_infinite()) pts.emplace_back(v.vertex.to_real(), char_map_eval(s, v.vertex));
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LT(pts[i - 1].second, pts[i].second);
}

TEST(RoundTrip, ShearToMapToShear) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    ShearMap s = oracle::random_shear(rng, 8);
    ShearMap back = shear_from_homeo(CharacteristicMap(s).as_vertex_map(), 8);
    for (const auto& e : s.entries()) EXPECT_NEAR(back(e.edge), e.value, 1e-11) << e.edge.key();
  }
}

TEST(RoundTrip, MapToShearToMap) {
  for (Real alpha : {Real(0.5), Real(1.7)}) {
    auto h = builtin_homeo("power", {alpha});
    CharacteristicMap back(shear_from_homeo(h, 8));
    for (const auto& v : enumerate_vertices(9)) {
      if (v.vertex.is_infinite()) continue;
      EXPECT_NEAR(back(v.vertex), h(v.vertex), 1e-12 * (1 + std::fabs(h(v.vertex))));
    }
  }
}

TEST(FanEarthquake, ShearAndMap) {
  ShearMap s = fan_earthquake_shear(0.5, 4);
  EXPECT_EQ(s(E("-4", "inf")), Real(0.5));
  EXPECT_EQ(s(E("5", "inf")), Real(0.5));
  EXPECT_EQ(s(E("1/2", "1")), 0);
  EXPECT_EQ(s.size(), 10u);
  auto h = builtin_homeo("fan_earthquake", {0.5, 4});
  EXPECT_NEAR(h(q("1")), 1, 1e-15);
  EXPECT_THROW(builtin_homeo("fan_earthquake", {0.5, 1.5}), std::invalid_argument);
}
