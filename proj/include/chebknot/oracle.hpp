#pragma once

// Slow independent checks: R_{a,b,c}^2 by nested resultants, and the sign of
// Q_c at a crossing by direct interval evaluation.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "chebknot/chebyshev.hpp"
#include "chebknot/discriminant.hpp"

namespace chebknot {

/// Dense polynomial in (u, v): coeff(p, q) multiplies u^p v^q.
class BiPoly {
 public:
  BiPoly() = default;
  BiPoly(int du, int dv) : du_(du), dv_(dv), c_((du + 1) * (dv + 1)) {}

  static BiPoly constant(const mpq_class& c);
  static BiPoly monomial(int p, int q, const mpq_class& c = 1);

  int deg_u() const { return du_; }
  int deg_v() const { return dv_; }
  const mpq_class& coeff(int p, int q) const { return c_[p * (dv_ + 1) + q]; }
  mpq_class& coeff(int p, int q) { return c_[p * (dv_ + 1) + q]; }

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator*(const mpq_class& s) const;

  /// Substitute u = u0, giving a polynomial in v.
  MonomialPoly at_u(const mpq_class& u0) const;
  /// Substitute v = v0, giving a polynomial in u.
  MonomialPoly at_v(const mpq_class& v0) const;

 private:
  int du_ = 0, dv_ = 0;
  std::vector<mpq_class> c_{mpq_class(0)};
};

/// R_c(u, v, phi0): Q_c(s, t, phi0) rewritten with s + t = uv, st = u^2 + v^2 - 4.
BiPoly rc_at_phi(long c, const mpq_class& phi0);

/// Resultant of two univariate polynomials over Q.
mpq_class resultant(const MonomialPoly& f, const MonomialPoly& g);

struct ResultantPair {
  IntPoly v_first;  // Res_u(Res_v(R_c, V_b), V_a)
  IntPoly u_first;  // Res_v(Res_u(R_c, V_a), V_b)
};

/// Both elimination orders; throws TooLarge past N = 30 and
/// InternalInconsistency if the orders disagree beyond a sign.
ResultantPair resultant_R_squared_both(long a, long b, long c);
IntPoly resultant_R_squared(long a, long b, long c);

/// Sign of Q_c(t, s, u/v) at the crossing (i, j), by direct evaluation.
int direct_Qc_sign(long a, long b, long c, long i, long j, const mpz_class& u, const mpz_class& v,
                   std::int64_t ell = 64);

}  // namespace chebknot
