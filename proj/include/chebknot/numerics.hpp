#pragma once

// Exact dyadic numbers, outward-rounded dyadic intervals and certified
// enclosures of 2cos(k*pi/n).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace chebknot {

/// mantissa * 2^exponent.  Canonical form: odd mantissa, or zero mantissa with
/// exponent 0.  Addition, subtraction and multiplication are exact.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long value);  // NOLINT(google-explicit-constructor)
  Dyadic(mpz_class mantissa, std::int64_t exponent);

  static Dyadic from_mpz(const mpz_class& value) { return Dyadic(value, 0); }

  const mpz_class& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }

  int sign() const { return sgn(mantissa_); }
  bool is_zero() const { return sign() == 0; }

  Dyadic operator-() const;
  Dyadic abs() const;
  Dyadic mul_pow2(std::int64_t k) const;

  Dyadic& operator+=(const Dyadic& other);
  Dyadic& operator-=(const Dyadic& other);
  Dyadic& operator*=(const Dyadic& other);

  friend Dyadic operator+(Dyadic x, const Dyadic& y) { return x += y; }
  friend Dyadic operator-(Dyadic x, const Dyadic& y) { return x -= y; }
  friend Dyadic operator*(Dyadic x, const Dyadic& y) { return x *= y; }

  friend bool operator==(const Dyadic& x, const Dyadic& y) {
    return x.exponent_ == y.exponent_ && x.mantissa_ == y.mantissa_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y);

  // Rounding onto the grid 2^-bits.
  Dyadic floor_to(std::int64_t bits) const;
  Dyadic ceil_to(std::int64_t bits) const;
  Dyadic round_to(std::int64_t bits) const;

  mpz_class floor() const;
  mpz_class ceil() const;
  /// Nearest integer, ties rounded up.
  mpz_class round() const;

  mpq_class to_mpq() const;
  double to_double() const;

  /// Bits of the mantissa plus |exponent|: the size tau of the dyadic.
  std::int64_t bitsize() const;

  /// "m*2^e" for debugging.
  std::string to_string() const;
  /// Decimal expansion truncated toward zero after `digits` fractional digits.
  std::string to_decimal(int digits) const;

 private:
  void canonicalize();

  mpz_class mantissa_{0};
  std::int64_t exponent_ = 0;
};

int compare(const Dyadic& x, const mpq_class& q);

/// floor(q * 2^bits) / 2^bits and the matching ceiling.
Dyadic dyadic_floor(const mpq_class& q, std::int64_t bits);
Dyadic dyadic_ceil(const mpq_class& q, std::int64_t bits);

/// Closed interval [lo, hi] of dyadics; all operations are outward-conservative.
class DyadicInterval {
 public:
  DyadicInterval() = default;
  explicit DyadicInterval(Dyadic point) : lo_(point), hi_(std::move(point)) {}
  DyadicInterval(Dyadic lo, Dyadic hi);

  /// [center - 2^-bits, center + 2^-bits]
  static DyadicInterval around(const Dyadic& center, std::int64_t bits);

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  Dyadic width() const { return hi_ - lo_; }
  Dyadic midpoint() const { return (lo_ + hi_).mul_pow2(-1); }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Dyadic& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const mpq_class& q) const;
  bool contains(const DyadicInterval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool overlaps(const DyadicInterval& other) const {
    return lo_ <= other.hi_ && other.lo_ <= hi_;
  }

  /// Sign of every point in the interval, if it is the same for all of them.
  std::optional<int> sign() const;

  /// True when the width is at most 2^-bits.
  bool width_at_most(std::int64_t bits) const;

  DyadicInterval hull(const DyadicInterval& other) const;
  /// Round lo down and hi up onto the grid 2^-bits.
  DyadicInterval round_out(std::int64_t bits) const;

  DyadicInterval operator-() const { return {-hi_, -lo_}; }
  DyadicInterval abs() const;
  DyadicInterval sqr() const;
  DyadicInterval mul_pow2(std::int64_t k) const {
    return {lo_.mul_pow2(k), hi_.mul_pow2(k)};
  }

  DyadicInterval& operator+=(const DyadicInterval& y);
  DyadicInterval& operator-=(const DyadicInterval& y);
  DyadicInterval& operator*=(const DyadicInterval& y);

  friend DyadicInterval operator+(DyadicInterval x, const DyadicInterval& y) { return x += y; }
  friend DyadicInterval operator-(DyadicInterval x, const DyadicInterval& y) { return x -= y; }
  friend DyadicInterval operator*(DyadicInterval x, const DyadicInterval& y) { return x *= y; }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;

  std::string to_string() const;

 private:
  Dyadic lo_;
  Dyadic hi_;
};

enum class ArithOp { add, sub, mul };

DyadicInterval interval_arith(const DyadicInterval& x, const DyadicInterval& y, ArithOp op);

/// x / y rounded outward onto the grid 2^-bits.  Throws BadArgs if y contains 0.
DyadicInterval divide(const DyadicInterval& x, const DyadicInterval& y, std::int64_t bits);
DyadicInterval divide(const DyadicInterval& x, long divisor, std::int64_t bits);

/// Enclosure of sqrt over x; width at most max(input-driven width, 2^-ell).
/// Throws NegativeOperand when x.hi < 0; a negative lo is clamped to zero.
DyadicInterval interval_sqrt(const DyadicInterval& x, std::int64_t ell);

/// Enclosure of pi of width at most 2^-bits (Machin's formula).
DyadicInterval pi_interval(std::int64_t bits);

/// Enclosure of 2cos(k*pi/n) of width at most 2^-bits; a point interval when
/// the value is rational (0, +-1, +-2).  Results are memoized process-wide.
DyadicInterval cos_pi_frac_interval(long k, long n, std::int64_t bits);

/// c with |c - 2cos(k*pi/n)| <= 2^-ell and bitsize O(ell + log n).
Dyadic cos_pi_frac(long k, long n, std::int64_t ell);

}  // namespace chebknot
