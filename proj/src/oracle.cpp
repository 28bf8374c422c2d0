#include "chebknot/oracle.hpp"

#include "chebknot/curves.hpp"
#include "chebknot/error.hpp"
#include "chebknot/factors.hpp"

namespace chebknot {

// ---------------------------------------------------------------- BiPoly

BiPoly BiPoly::constant(const mpq_class& c) {
  BiPoly r(0, 0);
  r.coeff(0, 0) = c;
  return r;
}

BiPoly BiPoly::monomial(int p, int q, const mpq_class& c) {
  BiPoly r(p, q);
  r.coeff(p, q) = c;
  return r;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  BiPoly r(std::max(du_, o.du_), std::max(dv_, o.dv_));
  for (int p = 0; p <= du_; ++p)
    for (int q = 0; q <= dv_; ++q) r.coeff(p, q) += coeff(p, q);
  for (int p = 0; p <= o.du_; ++p)
    for (int q = 0; q <= o.dv_; ++q) r.coeff(p, q) += o.coeff(p, q);
  return r;
}

BiPoly BiPoly::operator*(const mpq_class& s) const {
  BiPoly r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + o * mpq_class(-1); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
  BiPoly r(du_ + o.du_, dv_ + o.dv_);
  for (int p = 0; p <= du_; ++p) {
    for (int q = 0; q <= dv_; ++q) {
      if (coeff(p, q) == 0) continue;
      for (int s = 0; s <= o.du_; ++s)
        for (int t = 0; t <= o.dv_; ++t) r.coeff(p + s, q + t) += coeff(p, q) * o.coeff(s, t);
    }
  }
  return r;
}

MonomialPoly BiPoly::at_u(const mpq_class& u0) const {
  std::vector<mpq_class> out(dv_ + 1);
  mpq_class pw = 1;
  for (int p = 0; p <= du_; ++p, pw *= u0)
    for (int q = 0; q <= dv_; ++q) out[q] += coeff(p, q) * pw;
  return MonomialPoly(std::move(out));
}

MonomialPoly BiPoly::at_v(const mpq_class& v0) const {
  std::vector<mpq_class> out(du_ + 1);
  mpq_class pw = 1;
  for (int q = 0; q <= dv_; ++q, pw *= v0)
    for (int p = 0; p <= du_; ++p) out[p] += coeff(p, q) * pw;
  return MonomialPoly(std::move(out));
}

BiPoly rc_at_phi(long c, const mpq_class& phi0) {
  // (t^l - s^l)/(t - s) = h_{l-1}, h_l = e1 h_{l-1} - e2 h_{l-2}
  const BiPoly e1 = BiPoly::monomial(1, 1);
  const BiPoly e2 = BiPoly::monomial(2, 0) + BiPoly::monomial(0, 2) - BiPoly::constant(4);
  std::vector<BiPoly> h{BiPoly::constant(1)};
  BiPoly prev = BiPoly::constant(0);
  for (long l = 1; l < c; ++l) {
    BiPoly next = e1 * h.back() - e2 * prev;
    prev = h.back();
    h.push_back(std::move(next));
  }
  MonomialPoly Tc = cheb_poly_T(static_cast<int>(c));
  BiPoly out = BiPoly::constant(0);
  for (long m = 1; m <= c; ++m) {
    mpq_class tau = Tc.coeff(static_cast<int>(m));
    if (tau == 0) continue;
    mpz_class binom = 1;
    for (long l = 1; l <= m; ++l) {
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(l));
      mpq_class pw = 1;
      for (long e = 0; e < m - l; ++e) pw *= phi0;
      out = out + h[l - 1] * (tau * mpq_class(binom) * pw);
    }
  }
  return out;
}

mpq_class resultant(const MonomialPoly& f, const MonomialPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  int m = f.degree(), n = g.degree();
  if (n == 0) {
    mpq_class r = 1;
    for (int k = 0; k < m; ++k) r *= g.leading();
    return r;
  }
  if (m == 0) {
    mpq_class r = 1;
    for (int k = 0; k < n; ++k) r *= f.leading();
    return r;
  }
  MonomialPoly rem = f.divmod(g).second;
  if (rem.is_zero()) return 0;
  // Res(f,g) = (-1)^{mn} lc(g)^{m - deg rem} Res(g, rem)
  mpq_class scale = ((m * n) % 2) ? -1 : 1;
  for (int k = 0; k < m - rem.degree(); ++k) scale *= g.leading();
  return scale * resultant(g, rem);
}

namespace {

// Newton interpolation through (x_k, y_k) over Q.
MonomialPoly interpolate(const std::vector<mpq_class>& xs, std::vector<mpq_class> ys) {
  const size_t n = xs.size();
  for (size_t j = 1; j < n; ++j) {
    for (size_t k = n - 1; k >= j; --k) {
      ys[k] = (ys[k] - ys[k - 1]) / (xs[k] - xs[k - j]);
      if (k == j) break;
    }
  }
  MonomialPoly p = MonomialPoly::constant(ys[n - 1]);
  for (size_t k = n - 1; k-- > 0;) {
    p = p * MonomialPoly({-xs[k], mpq_class(1)}) + MonomialPoly::constant(ys[k]);
  }
  return p;
}

// Res_x(Res_y(R_c, V_inner(y)), V_outer(x)) at one phi, with R_c symmetric in
// its two variables so either may play y.
mpq_class nested_at(const BiPoly& rc, long c, long inner, long outer) {
  const MonomialPoly vi = cheb_poly_V(static_cast<int>(inner));
  const MonomialPoly vo = cheb_poly_V(static_cast<int>(outer));
  const int points = static_cast<int>((c - 1) * (inner - 1) + 1);
  std::vector<mpq_class> xs, ys;
  for (int k = 0; k < points; ++k) {
    mpq_class x0(k - points / 2);
    xs.push_back(x0);
    // V monic first: the value is then prod f(roots of V), whatever deg f is
    ys.push_back(resultant(vi, rc.at_u(x0)));
  }
  return resultant(vo, interpolate(xs, ys));
}

IntPoly nested(long a, long b, long c, bool v_first) {
  const long N = discriminant_degree(a, b, c);
  std::vector<mpq_class> xs, ys;
  for (long k = 0; k <= 2 * N + 1; ++k) {
    mpq_class phi0(k - N);
    BiPoly rc = rc_at_phi(c, phi0);
    xs.push_back(phi0);
    ys.push_back(v_first ? nested_at(rc, c, b, a) : nested_at(rc, c, a, b));
  }
  // 2N + 2 samples of a degree-2N polynomial: the top coefficient must vanish
  MonomialPoly p = interpolate(xs, ys);
  if (p.degree() > 2 * N) throw Error(ErrorCode::InternalInconsistency, "resultant degree too high");
  std::vector<mpz_class> out;
  for (auto& q : p.coeffs()) {
    if (q.get_den() != 1) throw Error(ErrorCode::InternalInconsistency, "non-integer resultant");
    out.push_back(q.get_num());
  }
  return IntPoly(std::move(out));
}

}  // namespace

ResultantPair resultant_R_squared_both(long a, long b, long c) {
  check_abc(a, b, c);
  if (discriminant_degree(a, b, c) > 30) throw Error(ErrorCode::TooLarge, "instance too large for the resultant oracle");
  if (a == 1 || b == 1 || c == 1) return {IntPoly({1}), IntPoly({1})};
  ResultantPair r{nested(a, b, c, true), nested(a, b, c, false)};
  if (!(r.v_first == r.u_first) && !(r.v_first == -r.u_first)) {
    throw Error(ErrorCode::InternalInconsistency, "elimination orders disagree");
  }
  return r;
}

IntPoly resultant_R_squared(long a, long b, long c) { return resultant_R_squared_both(a, b, c).v_first; }

int direct_Qc_sign(long a, long b, long c, long i, long j, const mpz_class& u, const mpz_class& v,
                   std::int64_t ell) {
  check_abc(a, b, c);
  if (v <= 0) throw Error(ErrorCode::BadArgs, "denominator must be positive");
  if (i < 1 || 2 * i > a - 1 || j < 1 || j > b - 1) throw Error(ErrorCode::BadArgs, "crossing index out of range");
  const long ab = a * b;
  bool exact_checked = false;
  for (std::int64_t p = std::max<std::int64_t>(ell, 32);; p *= 2) {
    DyadicInterval t = cos_pi_frac_interval(j * a + i * b, ab, p);
    DyadicInterval s = cos_pi_frac_interval(j * a - i * b, ab, p);
    mpq_class phi(u, v);
    phi.canonicalize();
    DyadicInterval ph(dyadic_floor(phi, p), dyadic_ceil(phi, p));
    DyadicInterval diff = cheb_T_interval(c, t + ph) - cheb_T_interval(c, s + ph);
    DyadicInterval ts = t - s;
    auto sd = diff.sign();
    auto st = ts.sign();
    if (sd && st && *sd != 0 && *st != 0) return *sd * *st;
    if (!exact_checked && p >= 256) {
      exact_checked = true;
      int prod = 1;
      for (long k = 1; 2 * k <= c; ++k) prod *= factor_sign_at_rational({a, b, c, i, j, k}, u, v);
      if (prod == 0) return 0;
    }
  }
}

}  // namespace chebknot
