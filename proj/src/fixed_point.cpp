#include "liqsim/fixed_point.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <system_error>

namespace liqsim {

namespace {

Int compute_pow10(int digits) {
  Int r = 1;
  for (int i = 0; i < digits; ++i) r *= 10;
  return r;
}

// Divides by 10^shift rounding half to even.
Int shift_down_half_even(const Int& value, int shift) {
  const Int& d = pow10(shift);
  bool negative = value < 0;
  Int mag = negative ? Int(-value) : value;
  Int q = mag / d;
  Int r = mag % d;
  Int twice = r * 2;
  if (twice > d || (twice == d && (q % 2) == 1)) q += 1;
  return negative ? Int(-q) : q;
}

}  // namespace

const Int& pow10(int digits) {
  static const Int p18 = compute_pow10(18);
  static const Int p27 = compute_pow10(27);
  static const Int p45 = compute_pow10(45);
  switch (digits) {
    case 18: return p18;
    case 27: return p27;
    case 45: return p45;
    default: break;
  }
  // Uncached scales are rare (parser shifts); keep a small table.
  static const auto table = [] {
    std::array<Int, 128> t;
    for (int i = 0; i < 128; ++i) t[i] = compute_pow10(i);
    return t;
  }();
  if (digits < 0 || digits >= 128) throw std::out_of_range("pow10: exponent out of range");
  return table[digits];
}

Int parse_scaled(std::string_view text, int digits) {
  auto fail = [&] { throw std::invalid_argument("malformed decimal '" + std::string(text) + "'"); };

  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t end = text.size();
  while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (i == end) fail();

  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }

  Int mantissa = 0;
  int frac_digits = 0;
  int n_digits = 0;
  bool seen_point = false;
  for (; i < end; ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      ++n_digits;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (n_digits == 0) fail();

  long exponent = 0;
  if (i < end) {
    if (text[i] != 'e' && text[i] != 'E') fail();
    ++i;
    if (i < end && text[i] == '+') ++i;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + end, exponent);
    if (ec != std::errc{} || ptr != text.data() + end) fail();
    i = end;
  }

  long shift = exponent - frac_digits + digits;
  Int scaled;
  if (shift >= 0) {
    if (shift >= 128) throw std::out_of_range("decimal exponent out of range");
    scaled = mantissa * pow10(static_cast<int>(shift));
  } else {
    if (-shift >= 128) return Int(0);
    scaled = shift_down_half_even(mantissa, static_cast<int>(-shift));
  }
  return negative ? Int(-scaled) : scaled;
}

std::string format_scaled(const Int& raw, int digits) {
  bool negative = raw < 0;
  Int mag = negative ? Int(-raw) : raw;
  const Int& one = pow10(digits);
  std::string whole = (mag / one).str();
  std::string frac = (mag % one).str();
  std::string out = negative ? "-" : "";
  out += whole;
  if (frac != "0") {
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out += '.';
    out += frac;
  }
  return out;
}

std::string shortest_decimal(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::invalid_argument("unrepresentable double");
  return std::string(buf.data(), ptr);
}

Ray rpow(const Ray& x, std::uint64_t n) {
  const Int& base = Ray::one_raw();
  if (x.is_zero()) return n == 0 ? Ray::one() : Ray::zero();
  const Int half = base / 2;
  Int xv = x.raw();
  Int z = (n % 2) ? xv : base;
  for (n /= 2; n; n /= 2) {
    xv = (xv * xv + half) / base;
    if (n % 2) z = (z * xv + half) / base;
  }
  return Ray::from_raw(z);
}

}  // namespace liqsim
