#pragma once

// High-precision reference values used only by the tests.

#include <mpfr.h>

#include "chebknot/numerics.hpp"

namespace oracle {

class Real {
 public:
  explicit Real(long prec) { mpfr_init2(v_, prec); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// 2cos(k pi / n)
inline void two_cos_pi_frac(Real& out, long k, long n, long prec) {
  Real t(prec + 32);
  mpfr_const_pi(t.get(), MPFR_RNDN);
  mpfr_mul_si(t.get(), t.get(), k, MPFR_RNDN);
  mpfr_div_si(t.get(), t.get(), n, MPFR_RNDN);
  mpfr_cos(t.get(), t.get(), MPFR_RNDN);
  mpfr_mul_2ui(out.get(), t.get(), 1, MPFR_RNDN);
}

inline void set_dyadic(Real& out, const chebknot::Dyadic& d) {
  mpfr_set_z_2exp(out.get(), d.mantissa().get_mpz_t(), d.exponent(), MPFR_RNDN);
}

// |d - ref| <= 2^-ell, evaluated with enough working precision to be exact
inline bool within(const chebknot::Dyadic& d, const Real& ref, long ell, long prec) {
  Real x(prec), diff(prec), bound(prec);
  set_dyadic(x, d);
  mpfr_sub(diff.get(), x.get(), ref.get(), MPFR_RNDN);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
  mpfr_set_ui_2exp(bound.get(), 1, -ell, MPFR_RNDN);
  return mpfr_cmp(diff.get(), bound.get()) <= 0;
}

inline bool contains(const chebknot::DyadicInterval& iv, const Real& ref, long prec) {
  Real lo(prec), hi(prec);
  set_dyadic(lo, iv.lo());
  set_dyadic(hi, iv.hi());
  return mpfr_cmp(lo.get(), ref.get()) <= 0 && mpfr_cmp(ref.get(), hi.get()) <= 0;
}

}  // namespace oracle
