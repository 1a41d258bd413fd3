#pragma once

// Extended rationals: the vertex set Q ∪ {∞} of the Farey tessellation.

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace farey {

using BigInt = boost::multiprecision::cpp_int;

// Scalar used for all floating-point geometry.
using Real = long double;

/// Reduced fraction p/q with q >= 0 and gcd(|p|, q) = 1. The single value
/// with q = 0 is ∞, stored as 1/0.
///
/// There is deliberately no operator<: ∞ has no place in the linear order of
/// the reals. Use canonical_less() for deterministic sorting and
/// cyclically_ordered() for orientation questions on the circle.
class ExtendedRational {
 public:
  ExtendedRational() : num_(0), den_(1) {}
  ExtendedRational(BigInt num, BigInt den);
  ExtendedRational(long long value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)

  static ExtendedRational infinity() { return ExtendedRational(BigInt(1), BigInt(0)); }

  /// Accepts "p/q", "p" and "1/0" (also "-1/0" and "inf"). Throws
  /// std::invalid_argument on malformed text or 0/0.
  static ExtendedRational parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_infinite() const { return den_ == 0; }
  bool is_integer() const { return den_ == 1; }

  /// Nearest long double; ∞ maps to +inf.
  Real to_real() const;

  /// Canonical text "p/q" (always with a denominator; ∞ is "1/0").
  std::string key() const;

  friend bool operator==(const ExtendedRational&, const ExtendedRational&) = default;

 private:
  BigInt num_;
  BigInt den_;
};

/// Strict weak order used for canonical sorting: finite values ascending,
/// ∞ after every finite value.
bool canonical_less(const ExtendedRational& x, const ExtendedRational& y);

/// -1, 0, 1 comparison of two finite values. Precondition: neither is ∞.
int compare_finite(const ExtendedRational& x, const ExtendedRational& y);

/// True iff x, y, z are pairwise distinct and occur in this order when the
/// circle R ∪ {∞} is traversed in the increasing direction.
bool cyclically_ordered(const ExtendedRational& x, const ExtendedRational& y,
                        const ExtendedRational& z);

/// |p s - q r| for x = p/q, y = r/s.
BigInt determinant_gap(const ExtendedRational& x, const ExtendedRational& y);

std::size_t hash_value(const ExtendedRational& x);

struct ExtendedRationalHash {
  std::size_t operator()(const ExtendedRational& x) const { return hash_value(x); }
};

}  // namespace farey
