// Fixed-point ledger arithmetic in the wad / ray / rad convention.
//
//   wad = 1e18  token quantities (ETH, DAI, gwei)
//   ray = 1e27  rates and ratios
//   rad = 1e45  debt, the exact product of a wad and a ray
//
// Values are backed by a checked 512-bit integer so that rad * ray
// intermediates cannot silently wrap.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace liqsim {

using Int = boost::multiprecision::checked_int512_t;

/// 10^digits as an Int. Cached for the three scales in use.
const Int& pow10(int digits);

/// Parses a decimal string ("3000", "-0.25", "1.5e3") into an integer scaled
/// by 10^digits. Digits past the scale are rounded half-to-even.
/// Throws std::invalid_argument on malformed input.
Int parse_scaled(std::string_view text, int digits);

/// Inverse of parse_scaled. Trailing fractional zeros are trimmed.
std::string format_scaled(const Int& raw, int digits);

/// Shortest round-trip decimal for a double, so that 0.001 parses as
/// exactly 1e-3 rather than its binary approximation.
std::string shortest_decimal(double value);

template <int Digits>
class Fixed {
 public:
  static constexpr int kDigits = Digits;

  constexpr Fixed() = default;

  static Fixed from_raw(Int raw) {
    Fixed f;
    f.raw_ = std::move(raw);
    return f;
  }
  static Fixed from_int(long long units) { return from_raw(Int(units) * one_raw()); }
  static Fixed from_decimal(std::string_view text) {
    return from_raw(parse_scaled(text, Digits));
  }
  static Fixed from_double(double value) { return from_decimal(shortest_decimal(value)); }
  static Fixed one() { return from_raw(one_raw()); }
  static Fixed zero() { return Fixed{}; }

  static const Int& one_raw() { return pow10(Digits); }

  const Int& raw() const { return raw_; }
  bool is_zero() const { return raw_ == 0; }
  bool is_negative() const { return raw_ < 0; }

  double to_double() const {
    // Split into integer and fraction to keep full double precision for
    // values whose raw form is far beyond 2^53.
    Int whole = raw_ / one_raw();
    Int frac = raw_ % one_raw();
    return whole.template convert_to<double>() +
           frac.template convert_to<double>() / one_raw().template convert_to<double>();
  }
  std::string to_string() const { return format_scaled(raw_, Digits); }

  Fixed& operator+=(const Fixed& o) {
    raw_ += o.raw_;
    return *this;
  }
  Fixed& operator-=(const Fixed& o) {
    raw_ -= o.raw_;
    return *this;
  }
  friend Fixed operator+(Fixed a, const Fixed& b) { return a += b; }
  friend Fixed operator-(Fixed a, const Fixed& b) { return a -= b; }
  Fixed operator-() const { return from_raw(-raw_); }

  /// Scalar multiple by a plain integer count.
  friend Fixed operator*(Fixed a, long long k) {
    a.raw_ *= k;
    return a;
  }

  friend bool operator==(const Fixed& a, const Fixed& b) { return a.raw_ == b.raw_; }
  friend std::strong_ordering operator<=>(const Fixed& a, const Fixed& b) {
    if (a.raw_ < b.raw_) return std::strong_ordering::less;
    if (a.raw_ > b.raw_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Int raw_{0};
};

using Wad = Fixed<18>;
using Ray = Fixed<27>;
using Rad = Fixed<45>;

template <int D>
Fixed<D> min(const Fixed<D>& a, const Fixed<D>& b) {
  return b < a ? b : a;
}
template <int D>
Fixed<D> max(const Fixed<D>& a, const Fixed<D>& b) {
  return a < b ? b : a;
}

// --- cross-scale arithmetic ------------------------------------------------
// All divisions truncate toward zero unless the name says otherwise.

/// wad * ray = rad, exact.
inline Rad operator*(const Wad& w, const Ray& r) { return Rad::from_raw(w.raw() * r.raw()); }
inline Rad operator*(const Ray& r, const Wad& w) { return w * r; }

/// Scales a rad by a ray fraction (e.g. chip * tab).
inline Rad rmul(const Rad& x, const Ray& y) {
  return Rad::from_raw(x.raw() * y.raw() / Ray::one_raw());
}
inline Ray rmul(const Ray& x, const Ray& y) {
  return Ray::from_raw(x.raw() * y.raw() / Ray::one_raw());
}
inline Ray rdiv(const Ray& x, const Ray& y) {
  return Ray::from_raw(x.raw() * Ray::one_raw() / y.raw());
}

/// rad / ray = wad (e.g. tab / price = collateral amount).
inline Wad div_to_wad(const Rad& x, const Ray& y) { return Wad::from_raw(x.raw() / y.raw()); }

/// Lossless widening.
inline Ray to_ray(const Wad& w) { return Ray::from_raw(w.raw() * Int(1000000000)); }
inline Rad to_rad(const Wad& w) { return w * Ray::one(); }

/// Truncating narrowing.
inline Wad to_wad(const Rad& r) { return Wad::from_raw(r.raw() / Ray::one_raw()); }

/// x^n in ray precision by binary exponentiation, rounding each product
/// half-up (ds-math rpow).
Ray rpow(const Ray& x, std::uint64_t n);

}  // namespace liqsim
