#pragma once

// Penner lambda lengths on F: decorations by horocycles, development of a
// lambda assignment into a decorated image tessellation, and the series and
// ratio criteria expressed through lambda and horocyclic lengths.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "farey/classify.hpp"
#include "farey/farey.hpp"
#include "farey/moebius.hpp"
#include "farey/shear.hpp"

namespace farey {

/// Positive values on edges of generation <= depth; other edges read as the
/// default (normally 1, the Ford value).
class LambdaMap {
 public:
  explicit LambdaMap(std::size_t depth = 0, Real default_value = 1);

  /// Throws std::invalid_argument for non-positive values or edges beyond depth.
  void set(const FareyEdge& e, Real value);
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
  std::vector<Entry> entries() const;

 private:
  std::size_t depth_;
  Real default_;
  std::unordered_map<FareyEdge, std::pair<Real, std::size_t>, FareyEdgeHash> values_;
};

/// e^{-2δ} for the signed distance δ between the horocycles.
Real lambda_from_decoration(const Horocycle& c1, const Horocycle& c2);

/// 2·λ3 / (λ1·λ2). Throws std::invalid_argument on non-positive input.
Real horocyclic_length_formula(Real lambda1, Real lambda2, Real lambda3);

/// Horocyclic length of the wedge between two sides with lambda lengths
/// lambda1, lambda2, opposite side lambda3, measured on the decorating
/// horocycle: (λ1·λ2/λ3)^{1/4}.
Real wedge_length_from_lambdas(Real lambda1, Real lambda2, Real lambda3);

struct DecoratedRealization {
  std::unordered_map<ExtendedRational, Real, ExtendedRationalHash> positions;
  std::unordered_map<ExtendedRational, Horocycle, ExtendedRationalHash> horocycles;
  std::size_t vertex_depth = 0;
  /// Some edge used lies beyond the map's depth and read as the default.
  bool defaulted = false;

  /// Throws std::out_of_range for vertices that were not realized.
  Real position(const ExtendedRational& v) const;
  const Horocycle& horocycle(const ExtendedRational& v) const;
  VertexMap as_vertex_map() const;
};

/// Places (0, 1, ∞) with horocycles realizing λ on the base sides, then each
/// child triangle across its entering side, for every vertex of generation
/// <= vertex_depth. Throws DegenerateError, naming the triangle address,
/// when a new vertex lands within 1e-12 of a neighbour.
DecoratedRealization develop(const LambdaMap& lambda, std::size_t vertex_depth);

/// Horocycles of diameter 1/q² at p/q and height 1 at ∞.
Horocycle ford_horocycle(const ExtendedRational& v);

/// Shear map of the developed characteristic map h_λ up to `depth`.
ShearMap shear_from_lambda(const LambdaMap& lambda, std::size_t depth);

/// s(e) = ¼·ln(λ(w1,p)·λ(w2,q) / (λ(p,w2)·λ(q,w1))) for the quadrilateral
/// (w1, p, w2, q) around e = (p, q) in positive cyclic order.
Real shear_from_lambda_closed_form(const LambdaMap& lambda, const FareyEdge& e);

/// α_n: horocyclic length of the wedge between chain edges n and n+1
/// (0-based), at their common endpoint. Throws std::invalid_argument if the
/// two edges do not bound a common triangle.
Real chain_wedge_length(const LambdaMap& lambda, const Chain& chain, std::size_t n);

struct LambdaSeriesReport {
  std::vector<Real> terms;
  std::vector<Real> partial_sums;
  SeriesVerdict verdict = SeriesVerdict::Inconclusive;
  Real trend = 0;
};

/// Terms (λ_n^{-1/2} λ_{n-1}^{1/2} ⋯ λ_1^{(-1)^n/2})·α_n for n = 1..N.
/// Throws std::invalid_argument unless chain.size() >= N + 1.
LambdaSeriesReport thmD_series(const LambdaMap& lambda, const Chain& chain, std::size_t n_terms,
                               const SeriesOptions& options = {});

/// Ratio of forward to backward sums of wedge lengths along the fan at p,
/// k+1 wedges each side of edge m.
Real thmE_ratio(const LambdaMap& lambda, const ExtendedRational& p, long long m, long long k);

/// Window sup of max(r, 1/r) over thmE ratios.
Real thmE_bound(const LambdaMap& lambda, const std::vector<ExtendedRational>& tips, const FanWindow& window);

struct PinchedReport {
  bool pinched = true;
  /// Support was empty; the check holds vacuously.
  bool vacuous = false;
  std::optional<FareyEdge> min_edge;
  std::optional<FareyEdge> max_edge;
  Real min_value = 1;
  Real max_value = 1;
  std::vector<FareyEdge> violations;
};

/// Whether 1/K <= λ(f) <= K on the support, with extremal edges and
/// violating edges as witnesses.
PinchedReport pinched_check(const LambdaMap& lambda, Real k);

}  // namespace farey
