#include "farey/lambda.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <stdexcept>

namespace farey {

LambdaMap::LambdaMap(std::size_t depth, Real default_value) : depth_(depth), default_(default_value) {
  if (!(default_value > 0)) throw std::invalid_argument("lambda default must be positive");
}

void LambdaMap::set(const FareyEdge& e, Real value) { set(e, value, generation(e)); }

void LambdaMap::set(const FareyEdge& e, Real value, std::size_t generation) {
  if (!(value > 0) || !std::isfinite(value)) throw std::invalid_argument("lambda length of " + e.key() + " must be positive");
  if (generation > depth_)
    throw std::invalid_argument("edge " + e.key() + " has generation " + std::to_string(generation) +
                                " beyond lambda map depth " + std::to_string(depth_));
  values_.insert_or_assign(e, std::make_pair(value, generation));
}

Real LambdaMap::operator()(const FareyEdge& e) const {
  auto it = values_.find(e);
  return it == values_.end() ? default_ : it->second.first;
}

std::vector<LambdaMap::Entry> LambdaMap::entries() const {
  std::vector<Entry> out;
  out.reserve(values_.size());
  for (const auto& [e, v] : values_) out.push_back({e, v.second, v.first});
  std::sort(out.begin(), out.end(), [](const Entry& x, const Entry& y) {
    if (x.generation != y.generation) return x.generation < y.generation;
    return canonical_less(x.edge, y.edge);
  });
  return out;
}

Real lambda_from_decoration(const Horocycle& c1, const Horocycle& c2) {
  return std::exp(-2 * horocycle_distance(c1, c2));
}

Real horocyclic_length_formula(Real lambda1, Real lambda2, Real lambda3) {
  if (!(lambda1 > 0) || !(lambda2 > 0) || !(lambda3 > 0)) throw std::invalid_argument("lambda lengths must be positive");
  return 2 * lambda3 / (lambda1 * lambda2);
}

Real wedge_length_from_lambdas(Real lambda1, Real lambda2, Real lambda3) {
  if (!(lambda1 > 0) || !(lambda2 > 0) || !(lambda3 > 0)) throw std::invalid_argument("lambda lengths must be positive");
  return std::sqrt(std::sqrt(lambda1 * lambda2 / lambda3));
}

Real DecoratedRealization::position(const ExtendedRational& v) const {
  auto it = positions.find(v);
  if (it == positions.end()) throw std::out_of_range("vertex " + v.key() + " was not realized");
  return it->second;
}

const Horocycle& DecoratedRealization::horocycle(const ExtendedRational& v) const {
  auto it = horocycles.find(v);
  if (it == horocycles.end()) throw std::out_of_range("vertex " + v.key() + " was not realized");
  return it->second;
}

VertexMap DecoratedRealization::as_vertex_map() const {
  auto table = std::make_shared<std::unordered_map<ExtendedRational, Real, ExtendedRationalHash>>(positions);
  return VertexMap(
      [table](const ExtendedRational& v) {
        auto it = table->find(v);
        if (it == table->end()) throw std::out_of_range("vertex " + v.key() + " was not realized");
        return it->second;
      },
      "lambda_characteristic_map");
}

Horocycle ford_horocycle(const ExtendedRational& v) {
  if (v.is_infinite()) return {kInfinity, 1};
  Real q = v.den().convert_to<Real>();
  return {v.to_real(), 1 / (q * q)};
}

namespace {

// Size of m(h), given that m sends h.center to ∞.
Real height_at_infinity(const Moebius& m, const Horocycle& h) {
  if (is_infinite(h.center)) return h.size * m.a() * m.a();
  return 1 / (m.c() * m.c() * h.size);
}

// Size of m(h), given that m sends h.center to a finite point.
Real diameter_at_finite(const Moebius& m, const Horocycle& h) {
  if (is_infinite(h.center)) return 1 / (m.c() * m.c() * h.size);
  Real den = m.c() * h.center + m.d();
  return h.size / (den * den);
}

bool too_close(Real x, Real y) {
  if (is_infinite(x) || is_infinite(y)) return is_infinite(x) && is_infinite(y);
  return std::fabs(x - y) <= Real(1e-12) * std::max({Real(1), std::fabs(x), std::fabs(y)});
}

}  // namespace

DecoratedRealization develop(const LambdaMap& lambda, std::size_t vertex_depth) {
  DecoratedRealization r;
  r.vertex_depth = vertex_depth;
  auto value = [&](const FareyEdge& e) {
    if (!lambda.in_support(e) && generation(e) > lambda.depth()) r.defaulted = true;
    return lambda(e);
  };

  const ExtendedRational zero(0), one(1);
  const ExtendedRational inf = ExtendedRational::infinity();
  Real a = value(FareyEdge(zero, inf));
  Real b = value(FareyEdge(one, inf));
  Real c = value(FareyEdge(zero, one));
  Real height = std::sqrt(std::sqrt(c / (a * b)));
  r.positions = {{zero, 0}, {one, 1}, {inf, kInfinity}};
  r.horocycles = {{zero, {0, height * std::sqrt(a)}}, {one, {1, height * std::sqrt(b)}}, {inf, {kInfinity, height}}};

  struct Item {
    Triangle triangle;
    FareyEdge entered;
  };
  std::deque<Item> queue;
  const Triangle base = base_triangle();
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
      const ExtendedRational w = item.triangle.opposite(e);
      auto [m, n] = flanking_vertices(e);
      const ExtendedRational behind = m == w ? n : m;
      // Chart sending (behind, p, q) to (-1, 0, ∞).
      const bool forward = cyclically_ordered(behind, e.a(), e.b());
      const ExtendedRational& p = forward ? e.a() : e.b();
      const ExtendedRational& q = forward ? e.b() : e.a();
      Moebius chart = map_triple(r.positions.at(behind), r.positions.at(p), r.positions.at(q), -1, 0, kInfinity);
      Real d0 = diameter_at_finite(chart, r.horocycles.at(p));
      Real top = height_at_infinity(chart, r.horocycles.at(q));
      Real dx = top * std::sqrt(value(FareyEdge(q, w)));
      Real x = std::sqrt(d0 * dx) / std::sqrt(std::sqrt(value(FareyEdge(p, w))));
      Moebius back = chart.inverse();
      Real pos = back(x);
      if (too_close(pos, r.positions.at(p)) || too_close(pos, r.positions.at(q)))
        throw DegenerateError("degenerate placement in triangle " + to_string(address_of(item.triangle)));
      r.positions.emplace(w, pos);
      r.horocycles.emplace(w, Horocycle{pos, diameter_at_finite(back, {x, dx})});
      if (d == vertex_depth) continue;
      for (const auto& f : item.triangle.sides())
        if (!(f == e)) push_across(item.triangle, f);
    }
  }
  return r;
}

ShearMap shear_from_lambda(const LambdaMap& lambda, std::size_t depth) {
  return shear_from_homeo(develop(lambda, depth + 1).as_vertex_map(), depth);
}

Real shear_from_lambda_closed_form(const LambdaMap& lambda, const FareyEdge& e) {
  const ExtendedRational& p = e.a();
  const ExtendedRational& q = e.b();
  auto [m, n] = flanking_vertices(e);
  const bool ordered = cyclically_ordered(m, p, n);
  const ExtendedRational& w1 = ordered ? m : n;
  const ExtendedRational& w2 = ordered ? n : m;
  Real la = lambda(FareyEdge(w1, p));
  Real lb = lambda(FareyEdge(p, w2));
  Real lc = lambda(FareyEdge(w2, q));
  Real ld = lambda(FareyEdge(q, w1));
  return std::log(la * lc / (lb * ld)) / 4;
}

Real chain_wedge_length(const LambdaMap& lambda, const Chain& chain, std::size_t n) {
  if (n + 1 >= chain.size()) throw std::out_of_range("chain_wedge_length: index past the chain end");
  const ExtendedRational& p = chain.pivot(n);
  const ExtendedRational& x = chain[n].other(p);
  const ExtendedRational& y = chain[n + 1].other(p);
  if (!is_farey_edge(x, y))
    throw std::invalid_argument("chain edges " + chain[n].key() + " and " + chain[n + 1].key() +
                                " do not bound a common triangle");
  return wedge_length_from_lambdas(lambda(chain[n]), lambda(chain[n + 1]), lambda(FareyEdge(x, y)));
}

LambdaSeriesReport thmD_series(const LambdaMap& lambda, const Chain& chain, std::size_t n_terms,
                               const SeriesOptions& options) {
  if (n_terms == 0 || chain.size() < n_terms + 1)
    throw std::invalid_argument("thmD_series: chain must have at least N + 1 edges");
  LambdaSeriesReport report;
  std::vector<Real> logs;
  for (std::size_t i = 0; i < n_terms; ++i) logs.push_back(std::log(lambda(chain[i])));
  Real sum = 0;
  for (std::size_t n = 1; n <= n_terms; ++n) {
    Real exponent = 0;
    Real sign = -0.5;
    for (std::size_t j = 0; j < n; ++j) {
      exponent += sign * logs[n - 1 - j];
      sign = -sign;
    }
    Real term = std::exp(exponent) * chain_wedge_length(lambda, chain, n - 1);
    sum += term;
    report.terms.push_back(term);
    report.partial_sums.push_back(sum);
  }
  SeriesAssessment a = assess_series(report.terms, options);
  report.verdict = a.verdict;
  report.trend = a.trend;
  return report;
}

namespace {

// Wedge lengths at p between fan edges i and i+1, for i in [lo, hi).
std::vector<Real> fan_wedges(const LambdaMap& lambda, const ExtendedRational& p, long long lo, long long hi) {
  std::vector<FareyEdge> edges = fan(p, lo, hi);
  std::vector<Real> out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    FareyEdge third(edges[i].other(p), edges[i + 1].other(p));
    out.push_back(wedge_length_from_lambdas(lambda(edges[i]), lambda(edges[i + 1]), lambda(third)));
  }
  return out;
}

Real wedge_ratio(const std::vector<Real>& wedges, long long lo, long long m, long long k) {
  auto at = [&](long long i) { return wedges.at(static_cast<std::size_t>(i - lo)); };
  Real forward = 0, backward = 0;
  for (long long j = 0; j <= k; ++j) {
    forward += at(m + j);
    backward += at(m - j - 1);
  }
  return forward / backward;
}

}  // namespace

Real thmE_ratio(const LambdaMap& lambda, const ExtendedRational& p, long long m, long long k) {
  if (k < 0) throw std::invalid_argument("thmE_ratio: k must be non-negative");
  const long long lo = m - k - 1;
  return wedge_ratio(fan_wedges(lambda, p, lo, m + k + 1), lo, m, k);
}

Real thmE_bound(const LambdaMap& lambda, const std::vector<ExtendedRational>& tips, const FanWindow& window) {
  if (tips.empty() || window.m_lo > window.m_hi || window.k_lo > window.k_hi || window.k_lo < 0)
    throw std::invalid_argument("empty fan window");
  Real sup = 1;
  const long long lo = window.m_lo - window.k_hi - 1;
  const long long hi = window.m_hi + window.k_hi + 1;
  for (const auto& p : tips) {
    std::vector<Real> wedges = fan_wedges(lambda, p, lo, hi);
    for (long long m = window.m_lo; m <= window.m_hi; ++m)
      for (long long k = window.k_lo; k <= window.k_hi; ++k) {
        Real r = wedge_ratio(wedges, lo, m, k);
        sup = std::max({sup, r, 1 / r});
      }
  }
  return sup;
}

PinchedReport pinched_check(const LambdaMap& lambda, Real k) {
  if (!(k >= 1)) throw std::invalid_argument("pinched_check: K must be at least 1");
  PinchedReport report;
  auto entries = lambda.entries();
  if (entries.empty()) {
    report.vacuous = true;
    return report;
  }
  report.min_value = report.max_value = entries.front().value;
  report.min_edge = report.max_edge = entries.front().edge;
  for (const auto& e : entries) {
    if (e.value < report.min_value) {
      report.min_value = e.value;
      report.min_edge = e.edge;
    }
    if (e.value > report.max_value) {
      report.max_value = e.value;
      report.max_edge = e.edge;
    }
    if (e.value < 1 / k || e.value > k) report.violations.push_back(e.edge);
  }
  report.pinched = report.violations.empty();
  return report;
}

}  // namespace farey
