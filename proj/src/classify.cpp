#include "farey/classify.hpp"

#include <algorithm>
#include <stdexcept>

namespace farey {

namespace {

void check_window(const std::vector<ExtendedRational>& tips, const FanWindow& w) {
  if (tips.empty() || w.m_lo > w.m_hi || w.k_lo > w.k_hi || w.k_lo < 0)
    throw std::invalid_argument("empty fan window");
}

struct FanTable {
  long long offset;
  std::vector<Real> shears;
  std::vector<std::size_t> generations;
};

FanTable fan_table(const ShearMap& s, const ExtendedRational& p, long long lo, long long hi, bool with_generations) {
  FanTable t{lo, {}, {}};
  for (const auto& e : fan(p, lo, hi)) {
    t.shears.push_back(s(e));
    if (with_generations) t.generations.push_back(generation(e));
  }
  return t;
}

Real spread(Real r) { return std::max(r, 1 / r); }

}  // namespace

Real fan_ratio(const std::vector<Real>& fan_shears, long long offset, long long m, long long k) {
  if (k < 0) throw std::invalid_argument("fan_ratio: k must be non-negative");
  auto at = [&](long long n) { return fan_shears.at(static_cast<std::size_t>(n - offset)); };
  Real half = at(m) / 2;
  Real forward = 0, backward = 0;
  Real up = half, down = -half;
  for (long long j = 0; j <= k; ++j) {
    if (j > 0) {
      up += at(m + j);
      down -= at(m - j);
    }
    forward += std::exp(up);
    backward += std::exp(down);
  }
  return forward / backward;
}

Real fan_ratio(const ShearMap& s, const ExtendedRational& p, long long m, long long k) {
  if (k < 0) throw std::invalid_argument("fan_ratio: k must be non-negative");
  FanTable t = fan_table(s, p, m - k, m + k, false);
  return fan_ratio(t.shears, t.offset, m, k);
}

bool fan_window_within_depth(const ShearMap& s, const ExtendedRational& p, long long m, long long k) {
  for (const auto& e : fan(p, m - k, m + k))
    if (generation(e) > s.depth()) return false;
  return true;
}

QsReport qs_bound(const ShearMap& s, const std::vector<ExtendedRational>& tips, const FanWindow& window) {
  check_window(tips, window);
  QsReport report;
  const long long lo = window.m_lo - window.k_hi;
  const long long hi = window.m_hi + window.k_hi;
  for (const auto& p : tips) {
    FanTable t = fan_table(s, p, lo, hi, true);
    FanWindowReport r{p, window, {}, 1, false};
    for (long long m = window.m_lo; m <= window.m_hi; ++m) {
      for (long long k = window.k_lo; k <= window.k_hi; ++k) {
        Real ratio = fan_ratio(t.shears, t.offset, m, k);
        r.entries.push_back({m, k, ratio});
        r.sup = std::max(r.sup, spread(ratio));
        for (long long n = m - k; n <= m + k; ++n)
          if (t.generations[static_cast<std::size_t>(n - lo)] > s.depth()) r.truncated = true;
      }
    }
    report.m_hat = std::max(report.m_hat, r.sup);
    report.truncated = report.truncated || r.truncated;
    report.tips.push_back(std::move(r));
  }
  return report;
}

std::vector<SymmetricBucket> symmetric_diagnostic(const ShearMap& s, const std::vector<ExtendedRational>& tips,
                                                  const FanWindow& window, const std::vector<std::size_t>& buckets) {
  check_window(tips, window);
  std::vector<SymmetricBucket> out;
  for (std::size_t g : buckets) out.push_back({g, 0, 0});
  const long long lo = window.m_lo - window.k_hi;
  const long long hi = window.m_hi + window.k_hi;
  for (const auto& p : tips) {
    FanTable t = fan_table(s, p, lo, hi, true);
    auto gen = [&](long long n) { return t.generations[static_cast<std::size_t>(n - lo)]; };
    for (long long m = window.m_lo; m <= window.m_hi; ++m) {
      for (long long k = window.k_lo; k <= window.k_hi; ++k) {
        Real deviation = std::fabs(fan_ratio(t.shears, t.offset, m, k) - 1);
        std::size_t triple = std::min(gen(m - k), gen(m + k));
        for (auto& b : out) {
          if (triple < b.generation) continue;
          b.max_deviation = std::max(b.max_deviation, deviation);
          ++b.count;
        }
      }
    }
  }
  return out;
}

std::vector<int> chain_signs(const Chain& chain, std::size_t n) {
  if (n < 1 || n >= chain.size()) throw std::out_of_range("chain_signs: n must satisfy 1 <= n < chain length");
  const auto& flags = chain.fan_change_flags();
  std::vector<int> signs(n);
  int parity = 1;
  // Walk i = n down to 1, accumulating the fan changes among flags i..n-1.
  for (std::size_t i = n; i >= 1; --i) {
    if (i <= n - 1 && flags[i - 1]) parity = -parity;
    const ExtendedRational& p = chain.pivot(i - 1);
    int order = fan_index(p, chain[i - 1]) < fan_index(p, chain[i]) ? 1 : -1;
    signs[i - 1] = order * parity;
  }
  return signs;
}

std::string to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::ConvergingEvidence:
      return "converging-evidence";
    case SeriesVerdict::DivergingEvidence:
      return "diverging-evidence";
    case SeriesVerdict::Inconclusive:
      break;
  }
  return "inconclusive";
}

SeriesAssessment assess_series(const std::vector<Real>& terms, const SeriesOptions& options) {
  SeriesAssessment out;
  const std::size_t n = terms.size();
  if (n == 0) return out;
  const std::size_t first = n / 2;  // last half-window: 1-based indices > n/2
  if (n - first >= 2) {
    Real trend = 0;
    for (std::size_t i = first + 1; i < n; ++i) trend = std::max(trend, terms[i] / terms[i - 1]);
    out.trend = trend;
    const Real last = terms.back();
    bool tail_small = trend < 1 && last < options.term_floor && last * trend / (1 - trend) < options.tail_tolerance;
    if (n < options.min_terms) return out;
    if (tail_small || trend <= options.decay_ratio) {
      out.verdict = SeriesVerdict::ConvergingEvidence;
      return out;
    }
  }
  if (n < options.min_terms) return out;
  Real floor = options.divergence_floor * terms[first];
  if (std::all_of(terms.begin() + static_cast<std::ptrdiff_t>(first), terms.end(), [&](Real t) { return t >= floor; }))
    out.verdict = SeriesVerdict::DivergingEvidence;
  return out;
}

std::size_t fan_changes_before(const Chain& chain, std::size_t n) {
  const auto& flags = chain.fan_change_flags();
  std::size_t count = 0;
  for (std::size_t j = 1; j + 1 <= n && j <= flags.size(); ++j) count += flags[j - 1] ? 1 : 0;
  return count;
}

ChainSeriesReport chain_series(const ShearMap& s, const Chain& chain, std::size_t n_terms,
                               const SeriesOptions& options, Real anchor) {
  if (n_terms == 0 || chain.size() < n_terms + 1)
    throw std::invalid_argument("chain_series: chain must have at least N + 1 edges");
  ChainSeriesReport report;
  std::vector<Real> shears;
  for (std::size_t i = 0; i < n_terms; ++i) {
    shears.push_back(s(chain[i]));
    if (generation(chain[i]) > s.depth()) report.truncated = true;
  }
  Real sum = 0;
  for (std::size_t n = 1; n <= n_terms; ++n) {
    std::vector<int> signs = chain_signs(chain, n);
    Real exponent = 0;
    for (std::size_t i = 0; i < n; ++i) exponent += signs[i] * shears[i];
    Real term = std::exp(exponent);
    term *= fan_changes_before(chain, n) % 2 == 0 ? anchor : 1 / anchor;
    sum += term;
    report.signs.push_back(std::move(signs));
    report.terms.push_back(term);
    report.partial_sums.push_back(sum);
  }
  SeriesAssessment a = assess_series(report.terms, options);
  report.verdict = a.verdict;
  report.trend = a.trend;
  return report;
}

Real teich_proximity(const ShearMap& s1, const ShearMap& s2, const std::vector<ExtendedRational>& tips,
                     const FanWindow& window) {
  check_window(tips, window);
  Real sup = 1;
  const long long lo = window.m_lo - window.k_hi;
  const long long hi = window.m_hi + window.k_hi;
  for (const auto& p : tips) {
    FanTable t1 = fan_table(s1, p, lo, hi, false);
    FanTable t2 = fan_table(s2, p, lo, hi, false);
    for (long long m = window.m_lo; m <= window.m_hi; ++m)
      for (long long k = window.k_lo; k <= window.k_hi; ++k)
        sup = std::max(sup, spread(fan_ratio(t1.shears, t1.offset, m, k) / fan_ratio(t2.shears, t2.offset, m, k)));
  }
  return sup;
}

}  // namespace farey
