#include "chebknot/curves.hpp"

#include <numeric>
#include <random>

#include "chebknot/error.hpp"

namespace chebknot {

void check_ab(long a, long b) {
  if (a < 1 || b < 1) throw Error(ErrorCode::BadArgs, "a and b must be positive");
  if (a % 2 == 0) throw Error(ErrorCode::BadArgs, "a must be odd");
  if (std::gcd(a, b) != 1) throw Error(ErrorCode::BadArgs, "a and b must be coprime");
}

std::vector<DoublePoint> double_points(long a, long b, std::int64_t ell) {
  check_ab(a, b);
  std::vector<DoublePoint> out;
  for (long i = 1; i <= (a - 1) / 2; ++i) {
    for (long j = 1; j <= b - 1; ++j) {
      DoublePoint p;
      p.i = static_cast<int>(i);
      p.j = static_cast<int>(j);
      p.t_param = cos_pi_frac_interval(j * a + i * b, a * b, ell);
      p.s_param = cos_pi_frac_interval(j * a - i * b, a * b, ell);
      out.push_back(std::move(p));
    }
  }
  return out;
}

DyadicInterval cheb_T_interval(long m, const DyadicInterval& x) {
  DyadicInterval prev(Dyadic(2));
  if (m == 0) return prev;
  DyadicInterval cur = x;
  for (long k = 1; k < m; ++k) {
    DyadicInterval next = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

DyadicInterval ellipse_eval(const DyadicInterval& cos_mu, const DyadicInterval& x,
                            const DyadicInterval& y) {
  DyadicInterval four_sin2 = (DyadicInterval(Dyadic(1)) - cos_mu.sqr()).mul_pow2(2);
  return x.sqr() + y.sqr() - (cos_mu * x * y).mul_pow2(1) - four_sin2;
}

DyadicInterval lissajous_implicit_eval(long a, long b, const DyadicInterval& cos_a_phi,
                                       const DyadicInterval& x, const DyadicInterval& y) {
  return ellipse_eval(cos_a_phi, cheb_T_interval(b, x), cheb_T_interval(a, y));
}

long singular_count_implicit(long n, long m) {
  return ((n - 1) / 2) * ((m - 1) / 2) + (n / 2) * (m / 2);
}

long singular_count_lissajous(long a, long b) { return 2 * a * b - a - b; }

namespace {

DyadicInterval random_point(std::mt19937_64& rng) {
  // dyadics in [-2, 2] with 12 fractional bits
  std::uniform_int_distribution<long> d(-(2L << 12), 2L << 12);
  return DyadicInterval(Dyadic(mpz_class(d(rng)), -12));
}

// E_{2k pi/d}, with the two degenerate angles reduced to linear factors.
DyadicInterval ellipse_factor(long k, long d, const DyadicInterval& x, const DyadicInterval& y,
                              std::int64_t p) {
  if (k == 0) return x - y;
  if (2 * k == d) return x + y;
  DyadicInterval c = cos_pi_frac_interval(2 * k, d, p).mul_pow2(-1);
  return ellipse_eval(c, x, y);
}

bool agree(const DyadicInterval& lhs, const DyadicInterval& rhs, std::int64_t ell) {
  return lhs.overlaps(rhs) && rhs.width_at_most(ell) && lhs.width_at_most(ell);
}

}  // namespace

bool check_Tdiff_factorization(long n, int sample_count, std::int64_t ell, unsigned long seed) {
  if (n < 2) throw Error(ErrorCode::BadArgs, "check_Tdiff_factorization needs n >= 2");
  std::mt19937_64 rng(seed);
  for (int it = 0; it < sample_count; ++it) {
    DyadicInterval t = random_point(rng), s = random_point(rng);
    if (t == s) continue;
    DyadicInterval lhs = cheb_T_interval(n, t) - cheb_T_interval(n, s);
    bool ok = false;
    for (std::int64_t p = ell + 8 * n + 32; !ok && p < 64 * (ell + 8 * n + 32); p *= 2) {
      DyadicInterval rhs = t - s;
      for (long k = 1; k <= n / 2; ++k) rhs = rhs * ellipse_factor(k, n, s, t, p);
      if (!lhs.overlaps(rhs)) return false;
      ok = agree(lhs, rhs, ell);
    }
    if (!ok) return false;
  }
  return true;
}

bool check_composed_factorization(long a, long b, long d, int sample_count, std::int64_t ell,
                                  unsigned long seed) {
  if (a < 1 || b < 1 || d < 1) throw Error(ErrorCode::BadArgs, "a, b, d must be positive");
  std::mt19937_64 rng(seed);
  for (int it = 0; it < sample_count; ++it) {
    DyadicInterval x = random_point(rng), y = random_point(rng);
    DyadicInterval lhs = cheb_T_interval(b * d, x) - cheb_T_interval(a * d, y);
    DyadicInterval X = cheb_T_interval(b, x), Y = cheb_T_interval(a, y);
    bool ok = false;
    for (std::int64_t p = ell + 16 * d * (a + b) + 32; !ok && p < 1 << 20; p *= 2) {
      DyadicInterval rhs(Dyadic(1));
      for (long k = 0; k <= d / 2; ++k) rhs = rhs * ellipse_factor(k, d, X, Y, p);
      if (!lhs.overlaps(rhs)) return false;
      ok = agree(lhs, rhs, ell);
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace chebknot
