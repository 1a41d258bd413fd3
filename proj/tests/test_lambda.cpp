#include <gtest/gtest.h>

#include <map>
#include <random>

#include "farey/lambda.hpp"
#include "oracles.hpp"

using namespace farey;
using R = ExtendedRational;

namespace {

const R inf = R::infinity();

R q(const char* text) { return R::parse(text); }
FareyEdge E(const char* a, const char* b) { return FareyEdge(q(a), q(b)); }

// Chain that changes fan at every step.
Chain zigzag(std::mt19937_64& rng, std::size_t length) {
  auto edges = enumerate_edges(2);
  const auto& start = edges[rng() % edges.size()].edge;
  return walk_chain(start, (rng() % 2) ? start.a() : start.b(), (rng() % 2) ? 1 : -1,
                    std::vector<bool>(length - 2, true));
}

}  // namespace

TEST(LambdaMap, Basics) {
  LambdaMap lambda(3);
  EXPECT_EQ(lambda(E("0", "1")), 1);
  lambda.set(E("0", "1"), 2.5);
  EXPECT_EQ(lambda(E("0", "1")), Real(2.5));
  EXPECT_THROW(lambda.set(E("0", "inf"), 0), std::invalid_argument);
  EXPECT_THROW(lambda.set(E("0", "inf"), -1), std::invalid_argument);
  EXPECT_THROW(lambda.set(E("1/5", "1/4"), 1), std::invalid_argument);
  EXPECT_THROW(LambdaMap(2, 0), std::invalid_argument);
}

TEST(Lambda, FromDecoration) {
  EXPECT_NEAR(lambda_from_decoration({0, 1}, {kInfinity, 1}), 1, 1e-15);
  EXPECT_NEAR(lambda_from_decoration({0, 1}, {kInfinity, std::exp(1.0L)}), std::exp(-2.0L), 1e-15);
  EXPECT_NEAR(lambda_from_decoration({0, 1}, {1, 1}), 1, 1e-15);
}

TEST(Lambda, FormulaValues) {
  EXPECT_EQ(horocyclic_length_formula(1, 1, 1), 2);
  EXPECT_NEAR(horocyclic_length_formula(2, 0.5, 3), 6, 1e-15);
  EXPECT_EQ(wedge_length_from_lambdas(1, 1, 1), 1);
  EXPECT_THROW(horocyclic_length_formula(0, 1, 1), std::invalid_argument);
  EXPECT_THROW(wedge_length_from_lambdas(1, -1, 1), std::invalid_argument);
}

// Geometric wedge lengths in random decorated triangles, measured directly.
TEST(Lambda, WedgeLengthMatchesGeometry) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    auto t = oracle::random_decorated_triangle(rng);
    for (int v = 0; v < 3; ++v) {
      int a = (v + 1) % 3, b = (v + 2) % 3;
      Real l1 = lambda_from_decoration(t.horocycles[v], t.horocycles[a]);
      Real l2 = lambda_from_decoration(t.horocycles[v], t.horocycles[b]);
      Real l3 = lambda_from_decoration(t.horocycles[a], t.horocycles[b]);
      Real alpha = wedge_horocyclic_length(t.horocycles[v], t.points[a], t.points[b]);
      EXPECT_NEAR(wedge_length_from_lambdas(l1, l2, l3) / alpha, 1, 1e-12);
    }
  }
}

TEST(Ford, Horocycles) {
  EXPECT_EQ(ford_horocycle(inf).size, 1);
  EXPECT_NEAR(ford_horocycle(q("2/3")).size, Real(1) / 9, 1e-18);
  EXPECT_NEAR(ford_horocycle(q("-1/4")).center, -0.25, 1e-18);
  for (const auto& r : enumerate_edges(8))
    EXPECT_NEAR(lambda_from_decoration(ford_horocycle(r.edge.a()), ford_horocycle(r.edge.b())), 1, 1e-12);
}

TEST(Develop, FordDecoration) {
  auto real = develop(LambdaMap(8), 8);
  EXPECT_FALSE(real.defaulted);
  EXPECT_EQ(real.positions.size(), enumerate_vertices(8).size());
  for (const auto& [v, x] : real.positions) {
    if (v.is_infinite()) {
      EXPECT_TRUE(is_infinite(x));
      continue;
    }
    auto exact = oracle::reconstruct(x, 1000000, 1e-12);
    ASSERT_TRUE(exact.has_value()) << v.key();
    EXPECT_EQ(*exact, v);
    EXPECT_NEAR(real.horocycle(v).size / ford_horocycle(v).size, 1, 1e-12);
  }
  EXPECT_NEAR(real.horocycle(inf).size, 1, 1e-15);
  EXPECT_THROW(real.position(q("1/1000")), std::out_of_range);
}

TEST(Develop, MeasuredLambdasRoundTrip) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 3; ++trial) {
    LambdaMap lambda = oracle::random_pinched_lambda(rng, 8, 3);
    auto real = develop(lambda, 9);
    for (const auto& e : lambda.entries()) {
      Real measured = lambda_from_decoration(real.horocycle(e.edge.a()), real.horocycle(e.edge.b()));
      EXPECT_NEAR(measured / e.value, 1, 1e-9) << e.edge.key();
    }
    EXPECT_EQ(real.position(q("0")), 0);
    EXPECT_EQ(real.position(q("1")), 1);
  }
}

TEST(ShearFromLambda, FordIsZero) {
  for (const auto& e : shear_from_lambda(LambdaMap(8), 8).entries()) EXPECT_NEAR(e.value, 0, 1e-12) << e.edge.key();
}

// Closed form against the shear measured on the developed realization.
TEST(ShearFromLambda, ClosedFormAgainstGeometry) {
  std::mt19937_64 rng(57);
  int cases = 0;
  for (int trial = 0; trial < 3; ++trial) {
    LambdaMap lambda = oracle::random_pinched_lambda(rng, 6, 2.5);
    ShearMap s = shear_from_lambda(lambda, 5);
    for (const auto& e : s.entries()) {
      EXPECT_NEAR(shear_from_lambda_closed_form(lambda, e.edge), e.value, 1e-9) << e.edge.key();
      ++cases;
    }
  }
  EXPECT_GE(cases, 200);
}

// Rescaling the horocycle at each vertex by t_v multiplies λ(u,v) by t_u t_v
// and leaves positions and shears unchanged.
TEST(ShearFromLambda, DecorationIndependent) {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  LambdaMap lambda = oracle::random_pinched_lambda(rng, 7, 2);
  std::map<std::string, Real> scale;
  for (const auto& v : enumerate_vertices(8)) scale[v.vertex.key()] = std::exp(Real(u(rng)));
  LambdaMap rescaled(8);
  for (const auto& r : enumerate_edges(8))
    rescaled.set(r.edge, lambda(r.edge) * scale[r.edge.a().key()] * scale[r.edge.b().key()], r.generation);
  auto a = develop(lambda, 8), b = develop(rescaled, 8);
  for (const auto& [v, x] : a.positions)
    if (!is_infinite(x)) {
      EXPECT_NEAR(b.position(v), x, 1e-9 * (1 + std::fabs(x)));
    }
  ShearMap sa = shear_from_lambda(lambda, 6), sb = shear_from_lambda(rescaled, 6);
  for (const auto& e : sa.entries()) EXPECT_NEAR(sb(e.edge), e.value, 1e-9);
}

TEST(WedgeRatio, FordRatiosAreOne) {
  LambdaMap ford(8);
  for (const auto& p : {inf, q("0"), q("1"), q("1/2")})
    for (long long m = -4; m <= 4; ++m)
      for (long long k = 0; k <= 3; ++k) EXPECT_NEAR(thmE_ratio(ford, p, m, k), 1, 1e-14);
  EXPECT_NEAR(thmE_bound(ford, {inf, q("0")}, {-3, 3, 0, 3}), 1, 1e-14);
}

TEST(WedgeRatio, MatchesFanRatioOfInducedShear) {
  std::mt19937_64 rng(61);
  LambdaMap lambda = oracle::random_pinched_lambda(rng, 8, 2);
  ShearMap s = shear_from_lambda(lambda, 10);
  for (const auto& p : {inf, q("0"), q("1")})
    for (long long m = -3; m <= 3; ++m)
      for (long long k = 0; k <= 3; ++k)
        EXPECT_NEAR(thmE_ratio(lambda, p, m, k) / fan_ratio(s, p, m, k), 1, 1e-8) << p.key() << m << k;
}

TEST(WedgeRatio, PinchedBoundIsStable) {
  std::mt19937_64 rng(67);
  LambdaMap lambda = oracle::random_pinched_lambda(rng, 8, 2);
  std::vector<R> tips{inf, q("0"), q("1")};
  Real small = thmE_bound(lambda, tips, {-2, 2, 0, 2});
  Real large = thmE_bound(lambda, tips, {-5, 5, 0, 5});
  EXPECT_GE(large, small);
  // Wedge lengths lie within a factor K^{3/4} of 1, so every ratio is within K^{3/2}.
  EXPECT_LE(large, std::pow(2.0L, 1.5L) + 1e-12);
}

TEST(LambdaSeries, MatchesLeafSegmentsOnZigzagChains) {
  std::mt19937_64 rng(71);
  LambdaMap lambda = oracle::random_pinched_lambda(rng, 8, 2);
  auto real = develop(lambda, 12);
  auto h = real.as_vertex_map();
  for (int trial = 0; trial < 20; ++trial) {
    Chain chain = zigzag(rng, 2 + rng() % 9);
    std::size_t n = chain.size() - 1;
    auto report = thmD_series(lambda, chain, n);
    auto leaf = oracle::leaf_segments(h, chain, n, report.terms[0]);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(report.terms[i] / leaf[i], 1, 1e-8) << i;
  }
}

TEST(LambdaSeries, MatchesShearSeriesUpToAnchor) {
  std::mt19937_64 rng(73);
  LambdaMap lambda = oracle::random_pinched_lambda(rng, 8, 2);
  ShearMap s = shear_from_lambda(lambda, 12);
  for (int trial = 0; trial < 10; ++trial) {
    Chain chain = zigzag(rng, 2 + rng() % 9);
    std::size_t n = chain.size() - 1;
    auto d = thmD_series(lambda, chain, n);
    Real anchor = d.terms[0] / chain_series(s, chain, n).terms[0];
    auto c = chain_series(s, chain, n, {}, anchor);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(d.terms[i] / c.terms[i], 1, 1e-8) << i;
  }
}

TEST(LambdaSeries, Errors) {
  EXPECT_THROW(thmD_series(LambdaMap(4), fan_chain(inf, 0, 3, true), 3), std::invalid_argument);
  EXPECT_THROW(chain_wedge_length(LambdaMap(4), fan_chain(inf, 0, 3, true), 2), std::out_of_range);
}

TEST(Pinched, Examples) {
  LambdaMap ford(4);
  for (const auto& r : enumerate_edges(4)) ford.set(r.edge, 1, r.generation);
  auto ok = pinched_check(ford, 2);
  EXPECT_TRUE(ok.pinched);
  EXPECT_FALSE(ok.vacuous);

  LambdaMap one(4);
  one.set(E("1/2", "1"), 3);
  one.set(E("0", "1"), 0.75);
  auto bad = pinched_check(one, 2);
  EXPECT_FALSE(bad.pinched);
  ASSERT_EQ(bad.violations.size(), 1u);
  EXPECT_EQ(bad.violations[0], E("1/2", "1"));
  EXPECT_EQ(*bad.max_edge, E("1/2", "1"));
  EXPECT_EQ(*bad.min_edge, E("0", "1"));

  auto empty = pinched_check(LambdaMap(4), 2);
  EXPECT_TRUE(empty.pinched);
  EXPECT_TRUE(empty.vacuous);
  EXPECT_THROW(pinched_check(ford, 0.5), std::invalid_argument);
}
