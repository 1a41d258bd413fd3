#pragma once

// Finite-window diagnostics on shear maps: fan ratios and the
// quasisymmetry bound, the symmetric-decay profile, the signed chain series
// deciding whether h_s extends to a homeomorphism, and the proximity
// functional between two shear maps.

#include <cstddef>
#include <string>
#include <vector>

#include "farey/farey.hpp"
#include "farey/shear.hpp"

namespace farey {

/// s(p; m, k): ratio of the k+1 forward and k+1 backward exponential sums of
/// shears along the fan at p, centred on edge m. Throws
/// std::invalid_argument for k < 0.
Real fan_ratio(const ShearMap& s, const ExtendedRational& p, long long m, long long k);

/// Same, reading fan shears from an explicit table indexed by n - offset.
Real fan_ratio(const std::vector<Real>& fan_shears, long long offset, long long m, long long k);

/// Whether every edge touched by s(p; m, k) lies within the map's depth.
bool fan_window_within_depth(const ShearMap& s, const ExtendedRational& p, long long m, long long k);

struct FanWindow {
  long long m_lo = 0, m_hi = 0;
  long long k_lo = 0, k_hi = 0;
};

struct FanWindowReport {
  struct Entry {
    long long m;
    long long k;
    Real ratio;
  };
  ExtendedRational tip;
  FanWindow window;
  std::vector<Entry> entries;
  /// Window sup of max(r, 1/r).
  Real sup = 1;
  /// Some edge in the window lay beyond the map's depth and read as default.
  bool truncated = false;
};

struct QsReport {
  std::vector<FanWindowReport> tips;
  Real m_hat = 1;
  bool truncated = false;
};

/// Fan-ratio table over the window for each tip, with M̂ the largest window
/// sup. Throws std::invalid_argument on an empty window or tip set.
QsReport qs_bound(const ShearMap& s, const std::vector<ExtendedRational>& tips, const FanWindow& window);

struct SymmetricBucket {
  std::size_t generation;
  Real max_deviation;
  std::size_t count;
};

/// For each bucket g, the largest |s(p;m,k) - 1| over windows whose triple
/// generation min(gen e_{m-k}, gen e_{m+k}) is at least g.
std::vector<SymmetricBucket> symmetric_diagnostic(const ShearMap& s, const std::vector<ExtendedRational>& tips,
                                                  const FanWindow& window, const std::vector<std::size_t>& buckets);

/// Signs (±1) multiplying s(e_1), ..., s(e_n) in the n-th leaf exponent
/// (1-based n). A position is positive when e_i precedes e_{i+1} in their
/// common fan, and flips once for each fan change between e_i and e_{n+1}.
/// Throws std::out_of_range unless 1 <= n < chain.size().
std::vector<int> chain_signs(const Chain& chain, std::size_t n);

enum class SeriesVerdict { ConvergingEvidence, DivergingEvidence, Inconclusive };

std::string to_string(SeriesVerdict v);

struct SeriesOptions {
  Real term_floor = 1e-12;
  Real tail_tolerance = 1e-9;
  /// Largest term ratio over the last half-window still read as geometric decay.
  Real decay_ratio = 0.9;
  /// Terms bounded below by this fraction of the half-window's first term
  /// count as non-decaying.
  Real divergence_floor = 0.5;
  /// Shorter series are always inconclusive.
  std::size_t min_terms = 6;
};

struct SeriesAssessment {
  SeriesVerdict verdict = SeriesVerdict::Inconclusive;
  /// Largest consecutive term ratio over the last half-window (0 if undefined).
  Real trend = 0;
};

SeriesAssessment assess_series(const std::vector<Real>& terms, const SeriesOptions& options = {});

struct ChainSeriesReport {
  std::vector<std::vector<int>> signs;
  std::vector<Real> terms;
  std::vector<Real> partial_sums;
  SeriesVerdict verdict = SeriesVerdict::Inconclusive;
  Real trend = 0;
  bool truncated = false;
};

/// Fan-change count among the first n edges of the chain (flags 1..n-1).
std::size_t fan_changes_before(const Chain& chain, std::size_t n);

/// Terms e^{s_1^n + ... + s_n^n} for n = 1..N, with l_1 scaled by `anchor`
/// (which scales l_n by anchor^{±1} according to the fan-change parity).
/// Throws std::invalid_argument unless chain.size() >= N + 1.
ChainSeriesReport chain_series(const ShearMap& s, const Chain& chain, std::size_t n_terms,
                               const SeriesOptions& options = {}, Real anchor = 1);

/// Window sup of max(r, 1/r) for r = s1(p;m,k) / s2(p;m,k).
Real teich_proximity(const ShearMap& s1, const ShearMap& s2, const std::vector<ExtendedRational>& tips,
                     const FanWindow& window);

}  // namespace farey
