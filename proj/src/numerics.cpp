#include "chebknot/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

#include "chebknot/error.hpp"

namespace chebknot {

// ---------------------------------------------------------------- Dyadic

Dyadic::Dyadic(long value) : mantissa_(value), exponent_(0) { canonicalize(); }

Dyadic::Dyadic(mpz_class mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  canonicalize();
}

void Dyadic::canonicalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  mp_bitcnt_t tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
    exponent_ += static_cast<std::int64_t>(tz);
  }
}

Dyadic Dyadic::operator-() const {
  Dyadic r = *this;
  mpz_neg(r.mantissa_.get_mpz_t(), r.mantissa_.get_mpz_t());
  return r;
}

Dyadic Dyadic::abs() const { return sign() < 0 ? -*this : *this; }

Dyadic Dyadic::mul_pow2(std::int64_t k) const {
  Dyadic r = *this;
  if (!r.is_zero()) r.exponent_ += k;
  return r;
}

namespace {

// x*2^ex + y*2^ey written over the smaller exponent.
void aligned_add(mpz_class& out, std::int64_t& eout, const mpz_class& x, std::int64_t ex,
                 const mpz_class& y, std::int64_t ey, bool subtract) {
  if (ex <= ey) {
    mpz_class t;
    mpz_mul_2exp(t.get_mpz_t(), y.get_mpz_t(), static_cast<mp_bitcnt_t>(ey - ex));
    if (subtract) {
      mpz_sub(out.get_mpz_t(), x.get_mpz_t(), t.get_mpz_t());
    } else {
      mpz_add(out.get_mpz_t(), x.get_mpz_t(), t.get_mpz_t());
    }
    eout = ex;
  } else {
    mpz_class t;
    mpz_mul_2exp(t.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(ex - ey));
    if (subtract) {
      mpz_sub(out.get_mpz_t(), t.get_mpz_t(), y.get_mpz_t());
    } else {
      mpz_add(out.get_mpz_t(), t.get_mpz_t(), y.get_mpz_t());
    }
    eout = ey;
  }
}

}  // namespace

Dyadic& Dyadic::operator+=(const Dyadic& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  aligned_add(mantissa_, exponent_, mantissa_, exponent_, other.mantissa_, other.exponent_, false);
  canonicalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = -other;
  aligned_add(mantissa_, exponent_, mantissa_, exponent_, other.mantissa_, other.exponent_, true);
  canonicalize();
  return *this;
}

Dyadic& Dyadic::operator*=(const Dyadic& other) {
  if (is_zero() || other.is_zero()) {
    mantissa_ = 0;
    exponent_ = 0;
    return *this;
  }
  mantissa_ *= other.mantissa_;
  exponent_ += other.exponent_;
  return *this;  // product of odd mantissas stays odd
}

std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y) {
  int sx = x.sign(), sy = y.sign();
  if (sx != sy) return sx <=> sy;
  if (sx == 0) return std::strong_ordering::equal;
  if (x.exponent_ == y.exponent_) {
    int c = cmp(x.mantissa_, y.mantissa_);
    return c <=> 0;
  }
  mpz_class d;
  std::int64_t e;
  aligned_add(d, e, x.mantissa_, x.exponent_, y.mantissa_, y.exponent_, true);
  return sgn(d) <=> 0;
}

Dyadic Dyadic::floor_to(std::int64_t bits) const {
  if (exponent_ >= -bits) return *this;
  mpz_class q;
  mpz_fdiv_q_2exp(q.get_mpz_t(), mantissa_.get_mpz_t(),
                  static_cast<mp_bitcnt_t>(-bits - exponent_));
  return {q, -bits};
}

Dyadic Dyadic::ceil_to(std::int64_t bits) const {
  if (exponent_ >= -bits) return *this;
  mpz_class q;
  mpz_cdiv_q_2exp(q.get_mpz_t(), mantissa_.get_mpz_t(),
                  static_cast<mp_bitcnt_t>(-bits - exponent_));
  return {q, -bits};
}

Dyadic Dyadic::round_to(std::int64_t bits) const {
  if (exponent_ >= -bits) return *this;
  return (*this + Dyadic(1, -bits - 1)).floor_to(bits);
}

mpz_class Dyadic::floor() const {
  Dyadic f = floor_to(0);
  mpz_class r;
  mpz_mul_2exp(r.get_mpz_t(), f.mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(f.exponent_));
  return r;
}

mpz_class Dyadic::ceil() const { return -((-*this).floor()); }

mpz_class Dyadic::round() const { return (*this + Dyadic(1, -1)).floor(); }

mpq_class Dyadic::to_mpq() const {
  mpq_class q(mantissa_);
  if (exponent_ >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent_));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent_));
  }
  return q;
}

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  long e = 0;
  double d = mpz_get_d_2exp(&e, mantissa_.get_mpz_t());
  return std::ldexp(d, static_cast<int>(std::clamp<std::int64_t>(e + exponent_, -100000, 100000)));
}

std::int64_t Dyadic::bitsize() const {
  return static_cast<std::int64_t>(mpz_sizeinbase(mantissa_.get_mpz_t(), 2)) +
         (exponent_ < 0 ? -exponent_ : exponent_);
}

std::string Dyadic::to_string() const {
  return mantissa_.get_str() + "*2^" + std::to_string(exponent_);
}

std::string Dyadic::to_decimal(int digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpq_class v = abs().to_mpq() * scale;
  mpz_class t = v.get_num() / v.get_den();
  std::string s = t.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  if (sign() < 0) s.insert(0, "-");
  return s;
}

int compare(const Dyadic& x, const mpq_class& q) { return cmp(x.to_mpq(), q); }

Dyadic dyadic_floor(const mpq_class& q, std::int64_t bits) {
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (bits >= 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  } else {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-bits));
  }
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return {r, -bits};
}

Dyadic dyadic_ceil(const mpq_class& q, std::int64_t bits) {
  return -dyadic_floor(-q, bits);
}

// ------------------------------------------------------- DyadicInterval

DyadicInterval::DyadicInterval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw Error(ErrorCode::BadArgs, "interval with lo > hi");
}

DyadicInterval DyadicInterval::around(const Dyadic& center, std::int64_t bits) {
  Dyadic r(1, -bits);
  return {center - r, center + r};
}

bool DyadicInterval::contains(const mpq_class& q) const {
  return compare(lo_, q) <= 0 && compare(hi_, q) >= 0;
}

std::optional<int> DyadicInterval::sign() const {
  if (lo_.sign() > 0) return 1;
  if (hi_.sign() < 0) return -1;
  if (lo_.is_zero() && hi_.is_zero()) return 0;
  return std::nullopt;
}

bool DyadicInterval::width_at_most(std::int64_t bits) const {
  return width() <= Dyadic(1, -bits);
}

DyadicInterval DyadicInterval::hull(const DyadicInterval& other) const {
  return {std::min(lo_, other.lo_), std::max(hi_, other.hi_)};
}

DyadicInterval DyadicInterval::round_out(std::int64_t bits) const {
  return {lo_.floor_to(bits), hi_.ceil_to(bits)};
}

DyadicInterval DyadicInterval::abs() const {
  if (lo_.sign() >= 0) return *this;
  if (hi_.sign() <= 0) return -*this;
  return {Dyadic(0), std::max(-lo_, hi_)};
}

DyadicInterval DyadicInterval::sqr() const {
  if (lo_.sign() >= 0) return {lo_ * lo_, hi_ * hi_};
  if (hi_.sign() <= 0) return {hi_ * hi_, lo_ * lo_};
  Dyadic m = std::max(-lo_, hi_);
  return {Dyadic(0), m * m};
}

DyadicInterval& DyadicInterval::operator+=(const DyadicInterval& y) {
  lo_ += y.lo_;
  hi_ += y.hi_;
  return *this;
}

DyadicInterval& DyadicInterval::operator-=(const DyadicInterval& y) {
  Dyadic lo = lo_ - y.hi_;
  hi_ -= y.lo_;
  lo_ = std::move(lo);
  return *this;
}

DyadicInterval& DyadicInterval::operator*=(const DyadicInterval& y) {
  if (lo_.sign() >= 0 && y.lo_.sign() >= 0) {
    lo_ *= y.lo_;
    hi_ *= y.hi_;
    return *this;
  }
  Dyadic p[4] = {lo_ * y.lo_, lo_ * y.hi_, hi_ * y.lo_, hi_ * y.hi_};
  lo_ = *std::min_element(p, p + 4);
  hi_ = *std::max_element(p, p + 4);
  return *this;
}

std::string DyadicInterval::to_string() const {
  return "[" + lo_.to_string() + ", " + hi_.to_string() + "]";
}

DyadicInterval interval_arith(const DyadicInterval& x, const DyadicInterval& y, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return x + y;
    case ArithOp::sub:
      return x - y;
    case ArithOp::mul:
      return x * y;
  }
  return x;
}

DyadicInterval divide(const DyadicInterval& x, const DyadicInterval& y, std::int64_t bits) {
  if (y.contains_zero()) throw Error(ErrorCode::BadArgs, "division by an interval containing 0");
  mpq_class xl = x.lo().to_mpq(), xh = x.hi().to_mpq();
  mpq_class yl = y.lo().to_mpq(), yh = y.hi().to_mpq();
  mpq_class q[4] = {xl / yl, xl / yh, xh / yl, xh / yh};
  mpq_class lo = *std::min_element(q, q + 4, [](auto& a, auto& b) { return a < b; });
  mpq_class hi = *std::max_element(q, q + 4, [](auto& a, auto& b) { return a < b; });
  return {dyadic_floor(lo, bits), dyadic_ceil(hi, bits)};
}

namespace {

// floor(x / d) and ceil(x / d) on the grid 2^-bits, for integer d != 0.
Dyadic div_floor(const Dyadic& x, long d, std::int64_t bits) {
  // x = m 2^e; want floor(m 2^(e+bits) / d) 2^-bits
  mpz_class num = x.mantissa();
  mpz_class den(d);
  std::int64_t shift = x.exponent() + bits;
  if (shift >= 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return {q, -bits};
}

}  // namespace

DyadicInterval divide(const DyadicInterval& x, long divisor, std::int64_t bits) {
  if (divisor == 0) throw Error(ErrorCode::BadArgs, "division by zero");
  if (divisor > 0) return {div_floor(x.lo(), divisor, bits), -div_floor(-x.hi(), divisor, bits)};
  return {div_floor(x.hi(), divisor, bits), -div_floor(-x.lo(), divisor, bits)};
}

DyadicInterval interval_sqrt(const DyadicInterval& x, std::int64_t ell) {
  if (x.hi().sign() < 0) throw Error(ErrorCode::NegativeOperand, "sqrt of a negative interval");
  const std::int64_t p = ell + 1;
  auto scaled = [p](const Dyadic& d, bool up) {
    Dyadic s = d.mul_pow2(2 * p);
    return up ? s.ceil() : s.floor();
  };
  Dyadic lo(0);
  if (x.lo().sign() > 0) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), mpz_class(scaled(x.lo(), false)).get_mpz_t());
    lo = Dyadic(r, -p);
  }
  mpz_class h = scaled(x.hi(), true);
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), h.get_mpz_t());
  if (r * r != h) r += 1;
  return {lo, Dyadic(r, -p)};
}

// ------------------------------------------------------------------- pi

namespace {

// Enclosure [lo, hi] of 2^P * atan(1/x) as integers.
std::pair<mpz_class, mpz_class> atan_inv_fixed(unsigned long x, std::int64_t P) {
  mpz_class one;
  mpz_ui_pow_ui(one.get_mpz_t(), 2, static_cast<unsigned long>(P));
  mpz_class x2(x * x);
  mpz_class pf, pc;  // floor / ceil of 2^P / x^(2k+1)
  mpz_fdiv_q_ui(pf.get_mpz_t(), one.get_mpz_t(), x);
  mpz_cdiv_q_ui(pc.get_mpz_t(), one.get_mpz_t(), x);
  mpz_class lo = 0, hi = 0;
  for (unsigned long k = 0;; ++k) {
    mpz_class tf, tc;
    mpz_fdiv_q_ui(tf.get_mpz_t(), pf.get_mpz_t(), 2 * k + 1);
    mpz_cdiv_q_ui(tc.get_mpz_t(), pc.get_mpz_t(), 2 * k + 1);
    if (k % 2 == 0) {
      lo += tf;
      hi += tc;
    } else {
      lo -= tc;
      hi -= tf;
    }
    if (tc <= 1) break;
    mpz_fdiv_q(pf.get_mpz_t(), pf.get_mpz_t(), x2.get_mpz_t());
    mpz_cdiv_q(pc.get_mpz_t(), pc.get_mpz_t(), x2.get_mpz_t());
  }
  // tail of an alternating series is bounded by the first omitted term (< 1)
  lo -= 1;
  hi += 1;
  return {lo, hi};
}

std::mutex g_pi_mutex;
DyadicInterval g_pi_best;
std::int64_t g_pi_bits = -1;

}  // namespace

DyadicInterval pi_interval(std::int64_t bits) {
  {
    std::lock_guard<std::mutex> lock(g_pi_mutex);
    if (g_pi_bits >= bits) return g_pi_best;
  }
  std::int64_t guard = 16 + static_cast<std::int64_t>(std::log2(static_cast<double>(bits) + 2));
  for (;;) {
    std::int64_t P = bits + guard;
    auto [l5, h5] = atan_inv_fixed(5, P);
    auto [l239, h239] = atan_inv_fixed(239, P);
    DyadicInterval pi(Dyadic(16 * l5 - 4 * h239, -P), Dyadic(16 * h5 - 4 * l239, -P));
    if (pi.width_at_most(bits)) {
      std::lock_guard<std::mutex> lock(g_pi_mutex);
      if (bits > g_pi_bits) {
        g_pi_bits = bits;
        g_pi_best = pi;
      }
      return pi;
    }
    guard *= 2;
  }
}

// ------------------------------------------------------------ 2cos(k pi/n)

namespace {

// 2cos(y) for y in [0, 1/2], by Taylor series, every step rounded outward
// onto the grid 2^-q.
DyadicInterval two_cos_taylor(const DyadicInterval& y, std::int64_t q) {
  DyadicInterval y2 = y.sqr().round_out(q);
  DyadicInterval term(Dyadic(2));
  DyadicInterval sum(Dyadic(2));
  const Dyadic tiny(1, -q);
  for (long k = 1;; ++k) {
    term = divide(term * y2, (2 * k - 1) * (2 * k), q);
    if (k % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
    if (term.hi() <= tiny) {
      // remainder bounded by the next term, which is smaller than this one
      Dyadic r = term.hi();
      sum = DyadicInterval(sum.lo() - r, sum.hi() + r);
      break;
    }
  }
  return sum.round_out(q);
}

// 2cos(r pi / n) for 0 < r/n < 1/2 with r/n in lowest terms.
DyadicInterval two_cos_first_quadrant(long r, long n, std::int64_t bits) {
  std::int64_t s = std::max<std::int64_t>(
      2, static_cast<std::int64_t>(std::sqrt(static_cast<double>(bits)) / 2));
  std::int64_t guard = 2 * s + 24;
  for (;;) {
    std::int64_t q = bits + guard;
    DyadicInterval x = divide(pi_interval(q + 8) * DyadicInterval(Dyadic(r)), n, q + 4);
    DyadicInterval c = two_cos_taylor(x.mul_pow2(-s), q);
    for (std::int64_t i = 0; i < s; ++i) {
      c = (c.sqr() - DyadicInterval(Dyadic(2))).round_out(q);
    }
    Dyadic lo = std::max(c.lo(), Dyadic(-2));
    Dyadic hi = std::min(c.hi(), Dyadic(2));
    DyadicInterval out(lo, hi);
    if (out.width_at_most(bits)) return out;
    guard *= 2;
  }
}

struct CosCache {
  std::mutex mutex;
  std::map<std::pair<long, long>, std::pair<std::int64_t, DyadicInterval>> table;
};

CosCache& cos_cache() {
  static CosCache cache;
  return cache;
}

}  // namespace

DyadicInterval cos_pi_frac_interval(long k, long n, std::int64_t bits) {
  if (n < 1) throw Error(ErrorCode::BadArgs, "cos_pi_frac: n must be positive");
  long two_n = 2 * n;
  long r = k % two_n;
  if (r < 0) r += two_n;
  if (r > n) r = two_n - r;  // cos(2pi - x) = cos x
  int sign = 1;
  if (2 * r > n) {  // cos(pi - x) = -cos x
    r = n - r;
    sign = -1;
  }
  long g = std::gcd(r, n);
  long rr = r / g, nn = n / g;
  if (rr == 0) return DyadicInterval(Dyadic(2 * sign));
  if (2 * rr == nn) return DyadicInterval(Dyadic(0));
  if (3 * rr == nn) return DyadicInterval(Dyadic(sign));

  auto& cache = cos_cache();
  DyadicInterval v;
  bool hit = false;
  {
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.table.find({rr, nn});
    if (it != cache.table.end() && it->second.first >= bits) {
      // trim an over-precise cached value so callers keep small operands
      v = it->second.first > bits + 4 ? it->second.second.round_out(bits + 2)
                                      : it->second.second;
      hit = true;
    }
  }
  if (!hit) {
    v = two_cos_first_quadrant(rr, nn, bits);
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto& slot = cache.table[{rr, nn}];
    if (slot.first < bits) slot = {bits, v};
  }
  return sign > 0 ? v : -v;
}

Dyadic cos_pi_frac(long k, long n, std::int64_t ell) {
  if (ell < 1) throw Error(ErrorCode::BadArgs, "cos_pi_frac: ell must be positive");
  DyadicInterval v = cos_pi_frac_interval(k, n, ell + 2);
  return v.midpoint().round_to(ell + 2);
}

}  // namespace chebknot
