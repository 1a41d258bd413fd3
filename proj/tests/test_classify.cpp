#include <gtest/gtest.h>

#include <random>

#include "farey/classify.hpp"
#include "oracles.hpp"

using namespace farey;
using R = ExtendedRational;

namespace {

const R inf = R::infinity();

R q(const char* text) { return R::parse(text); }
FareyEdge E(const char* a, const char* b) { return FareyEdge(q(a), q(b)); }

bool share_endpoint(const FareyEdge& x, const FareyEdge& y, const FareyEdge& z) {
  for (const auto& v : {x.a(), x.b()})
    if (y.contains(v) && z.contains(v)) return true;
  return false;
}

}  // namespace

TEST(FanRatio, ConstantFanShear) {
  for (Real c : {Real(0.5), Real(-0.5), Real(1), Real(-1)}) {
    ShearMap s = fan_earthquake_shear(c, 40);
    for (long long k = 0; k <= 30; ++k) {
      // Direct summation of the wedge-length sums.
      Real forward = 0, backward = 0;
      for (long long j = 0; j <= k; ++j) {
        forward += std::exp(c / 2 + j * c);
        backward += std::exp(-c / 2 - j * c);
      }
      Real r = fan_ratio(s, inf, 0, k);
      EXPECT_NEAR(r / (forward / backward), 1, 1e-14);
      EXPECT_NEAR(r / std::exp((k + 1) * c), 1, 1e-12);
    }
  }
}

// The fan ratio is the quotient of the horocyclic arcs cut on a horocycle about
// h_s(p) by the image fan edges e_{m-k-1}..e_m and e_m..e_{m+k+1}.
TEST(FanRatio, HorocyclicArcOracle) {
  std::mt19937_64 rng(31);
  ShearMap s = oracle::random_shear(rng, 8);
  CharacteristicMap h(s, 13);
  for (const auto& p : {inf, q("0"), q("1"), q("1/2"), q("-1")}) {
    Horocycle c{h(p), 1};
    for (long long m = -2; m <= 2; ++m)
      for (long long k = 0; k <= 2; ++k) {
        auto endpoint = [&](long long n) { return h(fan_edge(p, n).other(p)); };
        Real forward = wedge_horocyclic_length(c, endpoint(m), endpoint(m + k + 1));
        Real backward = wedge_horocyclic_length(c, endpoint(m - k - 1), endpoint(m));
        EXPECT_NEAR(fan_ratio(s, p, m, k) / (forward / backward), 1, 1e-9) << p.key() << " " << m << " " << k;
      }
  }
}

TEST(FanRatio, TableOverloadAndErrors) {
  std::vector<Real> shears{0.1, -0.2, 0.3, 0.4, -0.5};
  ShearMap s(10);
  for (long long n = -2; n <= 2; ++n) s.set(fan_edge(inf, n), shears[static_cast<std::size_t>(n + 2)]);
  EXPECT_EQ(fan_ratio(shears, -2, 0, 2), fan_ratio(s, inf, 0, 2));
  EXPECT_THROW(fan_ratio(shears, -2, 0, -1), std::invalid_argument);
  EXPECT_THROW(fan_ratio(shears, -2, 0, 3), std::out_of_range);
}

TEST(QsBound, Examples) {
  std::vector<R> tips{inf, q("0"), q("1")};
  ShearMap zero(8);
  auto r0 = qs_bound(zero, tips, {-3, 3, 0, 3});
  EXPECT_EQ(r0.m_hat, 1);
  EXPECT_FALSE(r0.truncated);
  EXPECT_EQ(r0.tips.size(), 3u);
  EXPECT_EQ(r0.tips[0].entries.size(), 28u);

  for (long long kmax : {3LL, 6LL, 10LL}) {
    auto r = qs_bound(fan_earthquake_shear(0.4, 20), {inf}, {-2, 2, 0, kmax});
    EXPECT_GE(r.m_hat, std::exp((kmax + 1) * 0.4L) * (1 - 1e-12));
  }
  auto pl = shear_from_homeo(builtin_homeo("piecewise_linear", {2}), 8);
  std::vector<R> many;
  for (const auto& v : enumerate_vertices(2)) many.push_back(v.vertex);
  EXPECT_LE(qs_bound(pl, many, {-4, 4, 0, 4}).m_hat, 2 + 1e-9);
  EXPECT_THROW(qs_bound(zero, {}, {0, 0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(qs_bound(zero, tips, {1, 0, 0, 0}), std::invalid_argument);
  EXPECT_TRUE(qs_bound(zero, tips, {-20, 20, 0, 0}).truncated);
}

TEST(Symmetric, Examples) {
  std::vector<R> tips{inf, q("0"), q("1")};
  FanWindow window{-3, 3, 0, 4};
  std::vector<std::size_t> buckets{0, 1, 2, 3};
  for (const auto& b : symmetric_diagnostic(ShearMap(8), tips, window, buckets)) EXPECT_EQ(b.max_deviation, 0);

  for (const auto& b : symmetric_diagnostic(fan_earthquake_shear(0.3, 20), {inf}, window, buckets)) {
    EXPECT_GT(b.count, 0u);
    EXPECT_GE(b.max_deviation, std::exp(0.3L) - 1 - 1e-12);
  }

  // Support on generations <= 2. Fans at tips born later never meet it.
  ShearMap low(8);
  for (const auto& r : enumerate_edges(2)) low.set(r.edge, 0.5, r.generation);
  auto near = symmetric_diagnostic(low, tips, window, buckets);
  EXPECT_GT(near[0].max_deviation, 0);
  std::vector<R> far_tips{q("1/5"), q("3/7"), q("-4/5")};
  for (const auto& b : symmetric_diagnostic(low, far_tips, {-2, 2, 0, 2}, buckets)) {
    EXPECT_EQ(b.max_deviation, 0);
    EXPECT_GT(b.count, 0u);
  }
}

TEST(ChainSigns, FanChainAtInfinity) {
  Chain up = fan_chain(inf, 0, 6, true);
  EXPECT_EQ(chain_signs(up, 3), (std::vector<int>{1, 1, 1}));
  Chain down = fan_chain(inf, 0, 6, false);
  EXPECT_EQ(chain_signs(down, 4), (std::vector<int>{-1, -1, -1, -1}));
  EXPECT_THROW(chain_signs(up, 0), std::out_of_range);
  EXPECT_THROW(chain_signs(up, 6), std::out_of_range);
}

// Brute-force parity count from the raw edges.
TEST(ChainSigns, ParityOracle) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    Chain chain = oracle::random_chain(rng, 2 + rng() % 7);
    const auto& e = chain.edges();
    for (std::size_t n = 1; n < chain.size(); ++n) {
      auto signs = chain_signs(chain, n);
      for (std::size_t i = 1; i <= n; ++i) {
        auto p = *common_endpoint(e[i - 1], e[i]);
        int order = fan_index(p, e[i - 1]) < fan_index(p, e[i]) ? 1 : -1;
        int changes = 0;
        for (std::size_t j = i; j + 1 <= n; ++j) changes += share_endpoint(e[j - 1], e[j], e[j + 1]) ? 0 : 1;
        EXPECT_EQ(signs[i - 1], order * (changes % 2 ? -1 : 1));
      }
      std::size_t before = 0;
      for (std::size_t j = 1; j + 1 <= n; ++j) before += share_endpoint(e[j - 1], e[j], e[j + 1]) ? 0 : 1;
      EXPECT_EQ(fan_changes_before(chain, n), before);
    }
  }
}

TEST(ChainSeries, Examples) {
  auto zero = chain_series(ShearMap(8), fan_chain(inf, 0, 11, true), 10);
  for (Real t : zero.terms) EXPECT_EQ(t, 1);
  EXPECT_EQ(zero.partial_sums.back(), 10);
  EXPECT_EQ(zero.verdict, SeriesVerdict::DivergingEvidence);

  ShearMap s(10);
  for (int n = 1; n <= 10; ++n) s.set(E(std::to_string(n).c_str(), "inf"), -n);
  auto conv = chain_series(s, fan_chain(inf, 1, 10, true), 6);
  Real expected = 0;
  for (int n = 1; n <= 6; ++n) {
    expected += std::exp(-n * (n + 1) / 2.0L);
    EXPECT_NEAR(conv.terms[static_cast<std::size_t>(n - 1)], std::exp(-n * (n + 1) / 2.0L), 1e-18);
  }
  EXPECT_NEAR(conv.partial_sums.back(), expected, 1e-15);
  EXPECT_NEAR(conv.partial_sums.back(), 0.420191, 1e-6);
  EXPECT_EQ(conv.verdict, SeriesVerdict::ConvergingEvidence);

  auto quake = chain_series(fan_earthquake_shear(0.7, 30), fan_chain(inf, 0, 21, false), 20);
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_NEAR(quake.terms[n - 1] / std::exp(-0.7L * n), 1, 1e-14);
  EXPECT_EQ(quake.verdict, SeriesVerdict::ConvergingEvidence);
  EXPECT_THROW(chain_series(ShearMap(3), fan_chain(inf, 0, 3, true), 3), std::invalid_argument);
}

TEST(ChainSeries, AnchorScaling) {
  std::mt19937_64 rng(43);
  ShearMap s = oracle::random_shear(rng, 6);
  Chain chain = oracle::random_chain(rng, 8);
  auto plain = chain_series(s, chain, 7);
  auto scaled = chain_series(s, chain, 7, {}, 3);
  for (std::size_t n = 1; n <= 7; ++n) {
    Real factor = fan_changes_before(chain, n) % 2 == 0 ? 3 : Real(1) / 3;
    EXPECT_NEAR(scaled.terms[n - 1], plain.terms[n - 1] * factor, 1e-15 * scaled.terms[n - 1]);
  }
}

TEST(AssessSeries, Verdicts) {
  EXPECT_EQ(assess_series({}).verdict, SeriesVerdict::Inconclusive);
  std::vector<Real> ones(20, 1);
  EXPECT_EQ(assess_series(ones).verdict, SeriesVerdict::DivergingEvidence);
  std::vector<Real> geometric;
  for (int n = 0; n < 20; ++n) geometric.push_back(std::pow(0.5L, n));
  auto g = assess_series(geometric);
  EXPECT_EQ(g.verdict, SeriesVerdict::ConvergingEvidence);
  EXPECT_NEAR(g.trend, 0.5, 1e-15);
  std::vector<Real> short_run(geometric.begin(), geometric.begin() + 5);
  EXPECT_EQ(assess_series(short_run).verdict, SeriesVerdict::Inconclusive);
  // Harmonic terms decay too slowly for either verdict at this length.
  std::vector<Real> harmonic;
  for (int n = 1; n <= 20; ++n) harmonic.push_back(Real(1) / (n * n));
  EXPECT_EQ(assess_series(harmonic).verdict, SeriesVerdict::Inconclusive);
  EXPECT_EQ(to_string(SeriesVerdict::Inconclusive), "inconclusive");
}

TEST(TeichProximity, Examples) {
  std::mt19937_64 rng(47);
  ShearMap s = oracle::random_shear(rng, 8);
  std::vector<R> tips{inf, q("0"), q("1")};
  EXPECT_EQ(teich_proximity(s, s, tips, {-3, 3, 0, 3}), 1);
  auto pl = shear_from_homeo(builtin_homeo("piecewise_linear", {2}), 8);
  EXPECT_EQ(teich_proximity(pl, ShearMap(8), tips, {-3, 3, 0, 3}), qs_bound(pl, tips, {-3, 3, 0, 3}).m_hat);
  EXPECT_EQ(teich_proximity(s, ShearMap(8), tips, {-3, 3, 0, 3}),
            teich_proximity(ShearMap(8), s, tips, {-3, 3, 0, 3}));
}
