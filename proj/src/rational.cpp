#include "farey/rational.hpp"

#include <stdexcept>

#include <boost/functional/hash.hpp>

namespace farey {

ExtendedRational::ExtendedRational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_ == 0 && den_ == 0) throw std::invalid_argument("0/0 is not an extended rational");
  if (den_ == 0) {
    num_ = 1;
    return;
  }
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

ExtendedRational ExtendedRational::parse(std::string_view text) {
  if (text == "inf" || text == "oo") return infinity();
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExtendedRational(parse_integer(text, text), BigInt(1));
  return ExtendedRational(parse_integer(text.substr(0, slash), text), parse_integer(text.substr(slash + 1), text));
}

Real ExtendedRational::to_real() const {
  if (is_infinite()) return std::numeric_limits<Real>::infinity();
  return num_.convert_to<Real>() / den_.convert_to<Real>();
}

std::string ExtendedRational::key() const { return num_.str() + "/" + den_.str(); }

int compare_finite(const ExtendedRational& x, const ExtendedRational& y) {
  BigInt lhs = x.num() * y.den();
  BigInt rhs = y.num() * x.den();
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

bool canonical_less(const ExtendedRational& x, const ExtendedRational& y) {
  if (x.is_infinite()) return false;
  if (y.is_infinite()) return true;
  return compare_finite(x, y) < 0;
}

bool cyclically_ordered(const ExtendedRational& x, const ExtendedRational& y, const ExtendedRational& z) {
  // On R ∪ {∞} with ∞ placed after all reals, a triple is positively ordered
  // iff it is an increasing sequence up to cyclic rotation.
  bool xy = canonical_less(x, y);
  bool yz = canonical_less(y, z);
  bool zx = canonical_less(z, x);
  if (x == y || y == z || z == x) return false;
  return (xy && yz) || (yz && zx) || (zx && xy);
}

BigInt determinant_gap(const ExtendedRational& x, const ExtendedRational& y) {
  BigInt d = x.num() * y.den() - x.den() * y.num();
  return d < 0 ? BigInt(-d) : d;
}

std::size_t hash_value(const ExtendedRational& x) {
  std::size_t seed = boost::multiprecision::hash_value(x.num());
  boost::hash_combine(seed, boost::multiprecision::hash_value(x.den()));
  return seed;
}

}  // namespace farey
