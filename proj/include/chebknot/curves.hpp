#pragma once

// Plane Chebyshev and Lissajous curves: double points, implicit equations,
// singular-point counts and the T_n(x) - T_n(y) factorization.

#include <cstdint>
#include <vector>

#include "chebknot/numerics.hpp"

namespace chebknot {

/// Crossing of x = T_a(t), y = T_b(t) reached at parameters t and s.
struct DoublePoint {
  int i = 0;
  int j = 0;
  DyadicInterval t_param;  // 2cos(j pi/b + i pi/a)
  DyadicInterval s_param;  // 2cos(j pi/b - i pi/a)
};

/// Validates gcd(a,b) = 1 and a odd; throws BadArgs otherwise.
void check_ab(long a, long b);

/// (a-1)(b-1)/2 double points ordered by (i, j).
std::vector<DoublePoint> double_points(long a, long b, std::int64_t ell);

/// T_m over an interval by the three-term recurrence.
DyadicInterval cheb_T_interval(long m, const DyadicInterval& x);

/// E_mu(x, y) = x^2 + y^2 - 2 cos(mu) xy - 4 sin^2(mu), given cos(mu).
DyadicInterval ellipse_eval(const DyadicInterval& cos_mu, const DyadicInterval& x,
                            const DyadicInterval& y);

/// T_b(x)^2 + T_a(y)^2 - 2cos(a phi) T_b(x) T_a(y) - 4 sin^2(a phi).
DyadicInterval lissajous_implicit_eval(long a, long b, const DyadicInterval& cos_a_phi,
                                       const DyadicInterval& x, const DyadicInterval& y);

long singular_count_implicit(long n, long m);
long singular_count_lissajous(long a, long b);

/// Checks (T_n(t) - T_n(s)) / (t - s) = prod_{k=1}^{n/2} E_{2k pi/n}(s, t) at
/// random dyadic points (E_pi taken as x + y).
bool check_Tdiff_factorization(long n, int sample_count, std::int64_t ell,
                               unsigned long seed = 1);

/// Checks T_{bd}(x) - T_{ad}(y) = prod_{k=0}^{d/2} E_{2k pi/d}(T_b(x), T_a(y))
/// with E_0 = x - y and E_pi = x + y.
bool check_composed_factorization(long a, long b, long d, int sample_count, std::int64_t ell,
                                  unsigned long seed = 1);

}  // namespace chebknot
