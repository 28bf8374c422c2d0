#include "chebknot/factors.hpp"

#include <numeric>

#include "chebknot/curves.hpp"
#include "chebknot/error.hpp"

namespace chebknot {

std::string FactorIndex::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")[" +
         std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "]";
}

void check_abc(long a, long b, long c) {
  check_ab(a, b);
  if (c < 1) throw Error(ErrorCode::BadArgs, "c must be positive");
}

void check_index(const FactorIndex& idx) {
  check_abc(idx.a, idx.b, idx.c);
  if (idx.i < 1 || 2 * idx.i > idx.a - 1 || idx.j < 1 || idx.j > idx.b - 1 || idx.k < 1 ||
      2 * idx.k > idx.c) {
    throw Error(ErrorCode::BadArgs, "factor index out of range: " + idx.to_string());
  }
}

std::vector<FactorIndex> all_factors(long a, long b, long c) {
  check_abc(a, b, c);
  std::vector<FactorIndex> out;
  for (long i = 1; 2 * i <= a - 1; ++i) {
    for (long j = 1; j <= b - 1; ++j) {
      for (long k = 1; 2 * k <= c; ++k) out.push_back({a, b, c, i, j, k});
    }
  }
  return out;
}

std::vector<ChebyshevForm> FactorPoly::coeffs() const {
  if (kind == FactorKind::linear) return {f0, f1};
  return {f0, f1, f2};
}

FactorPoly build_factor(const FactorIndex& idx) {
  check_index(idx);
  const long n = idx.n();
  // angles as multiples of pi/n
  const long al = idx.i * idx.b * idx.c;
  const long be = idx.j * idx.a * idx.c;
  const long ga = idx.k * idx.a * idx.b;
  FactorPoly p;
  p.index = idx;
  p.f0 = ChebyshevForm(n);
  p.f1 = ChebyshevForm(n);
  p.f2 = ChebyshevForm(n);
  if (idx.is_linear()) {
    p.kind = FactorKind::linear;
    p.f1.add_constant(2);
    p.f0.add_T(be - al, 1);
    p.f0.add_T(be + al, 1);
    return p;
  }
  p.kind = FactorKind::quadratic;
  p.f2.add_constant(2);
  p.f2.add_T(2 * ga, -1);

  p.f1.add_T(be - al, 2);
  p.f1.add_T(be + al, 2);
  p.f1.add_T(2 * ga + be - al, -1);
  p.f1.add_T(2 * ga - be + al, -1);
  p.f1.add_T(2 * ga - be - al, -1);
  p.f1.add_T(2 * ga + be + al, -1);

  p.f0.add_constant(2);
  p.f0.add_T(2 * be - 2 * al, 1);
  p.f0.add_T(2 * be + 2 * al, 1);
  p.f0.add_T(4 * ga, 1);
  p.f0.add_T(2 * ga - 2 * al, -1);
  p.f0.add_T(2 * ga + 2 * al, -1);
  p.f0.add_T(2 * ga - 2 * be, -1);
  p.f0.add_T(2 * ga + 2 * be, -1);
  return p;
}

ChebyshevForm discriminant_form(const FactorIndex& idx) {
  check_index(idx);
  const long al = idx.i * idx.b * idx.c;
  const long be = idx.j * idx.a * idx.c;
  const long ga = idx.k * idx.a * idx.b;
  ChebyshevForm d(idx.n());
  d.add_constant(4);
  d.add_T(2 * ga, -4);
  d.add_T(2 * al, 2);
  d.add_T(2 * be, 2);
  d.add_T(2 * be + 2 * al, -1);
  d.add_T(2 * be - 2 * al, -1);
  return d;
}

bool has_double_root(const FactorIndex& idx) {
  return 2 * idx.j == idx.b && idx.i * idx.c == idx.k * idx.a;
}

int discriminant_sign(const FactorIndex& idx) {
  if (idx.is_linear()) throw Error(ErrorCode::NotQuadratic, "linear factor " + idx.to_string());
  int s = sign_at_cyclotomic(discriminant_form(idx));
  if ((s == 0) != has_double_root(idx)) {
    throw Error(ErrorCode::InternalInconsistency,
                "discriminant zero test disagrees with the double-root criterion at " +
                    idx.to_string());
  }
  return s;
}

bool has_zero_root(const FactorIndex& idx) {
  if (idx.is_linear()) return 2 * idx.j == idx.b;
  return idx.i * idx.c == idx.k * idx.a || idx.j * idx.c == idx.k * idx.b ||
         (idx.b - idx.j) * idx.c == idx.k * idx.b;
}

namespace {

struct Angles {
  DyadicInterval ca, cb;  // 2cos(alpha), 2cos(beta)
  DyadicInterval A, B, G;  // 2cos(2 alpha), 2cos(2 beta), 2cos(2 gamma)
};

Angles angles(const FactorIndex& idx, std::int64_t p) {
  return {cos_pi_frac_interval(idx.i, idx.a, p), cos_pi_frac_interval(idx.j, idx.b, p),
          cos_pi_frac_interval(2 * idx.i, idx.a, p), cos_pi_frac_interval(2 * idx.j, idx.b, p),
          cos_pi_frac_interval(2 * idx.k, idx.c, p)};
}

}  // namespace

std::vector<FactorRoot> factor_roots(const FactorIndex& idx, std::int64_t ell) {
  check_index(idx);
  const DyadicInterval zero(Dyadic(0));
  if (idx.is_linear()) {
    if (2 * idx.j == idx.b) return {{zero, 1, 0}};
    for (std::int64_t p = ell + 4;; p += 32) {
      Angles an = angles(idx, p);
      DyadicInterval r = -(an.ca * an.cb).mul_pow2(-1);
      if (r.width_at_most(ell + 1)) return {{r.round_out(ell + 2), 1, 0}};
    }
  }
  if (has_double_root(idx)) return {{zero, 2, 0}};
  int ds = discriminant_sign(idx);
  if (ds < 0) return {};
  const bool zero_root = has_zero_root(idx);
  for (std::int64_t extra = 8;; extra *= 2) {
    std::int64_t p = ell + extra;
    Angles an = angles(idx, p);
    DyadicInterval L = an.ca * an.cb;  // 4 cos(alpha) cos(beta)
    if (zero_root) {
      // roots 0 and -L
      DyadicInterval other = -L;
      if (!other.width_at_most(ell + 1)) continue;
      other = other.round_out(ell + 2);
      if (2 * idx.j < idx.b) return {{other, 1, -1}, {zero, 1, 1}};
      return {{zero, 1, -1}, {other, 1, 1}};
    }
    const DyadicInterval two(Dyadic(2));
    DyadicInterval F = DyadicInterval(Dyadic(4)) + an.A.mul_pow2(1) + an.B.mul_pow2(1) -
                       an.A * an.B - an.G.mul_pow2(2);
    DyadicInterval disc = divide((two + an.G) * F, two - an.G, p);
    if (disc.hi().sign() <= 0) continue;  // not yet resolved; more precision
    DyadicInterval sq = interval_sqrt(disc, p);
    DyadicInterval lo = (-L - sq).mul_pow2(-1), hi = (-L + sq).mul_pow2(-1);
    if (!lo.width_at_most(ell + 1) || !hi.width_at_most(ell + 1) || lo.overlaps(hi)) continue;
    return {{lo.round_out(ell + 2), 1, -1}, {hi.round_out(ell + 2), 1, 1}};
  }
}

int factor_sign_at_rational(const FactorIndex& idx, const mpz_class& u, const mpz_class& v) {
  check_index(idx);
  if (v <= 0) throw Error(ErrorCode::BadArgs, "denominator must be positive");
  if (idx.is_linear()) {
    // v (2 phi + 4 cos a cos b) over the smaller ring of index ab
    const long m = idx.a * idx.b;
    ChebyshevForm f(m);
    f.add_constant(2 * u);
    f.add_T(idx.i * idx.b - idx.j * idx.a, v);
    f.add_T(idx.i * idx.b + idx.j * idx.a, v);
    return sign_at_cyclotomic(f);
  }
  FactorPoly p = build_factor(idx);
  ChebyshevForm g = p.f2 * (u * u) + p.f1 * (u * v) + p.f0 * (v * v);
  return sign_at_cyclotomic(g);
}

std::string to_string(ShareKind k) {
  switch (k) {
    case ShareKind::no:
      return "no";
    case ShareKind::yes_equal_factors:
      return "yes_equal_factors";
    case ShareKind::yes_case1:
      return "yes_case1";
    case ShareKind::yes_case2:
      return "yes_case2";
    case ShareKind::yes_other:
      return "yes_other";
  }
  return "?";
}

ChebyshevForm factor_resultant(const FactorPoly& p, const FactorPoly& q) {
  if (p.index.n() != q.index.n()) throw Error(ErrorCode::AmbientMismatch, "factors of different R");
  if (p.kind == FactorKind::quadratic && q.kind == FactorKind::quadratic) {
    const ChebyshevForm &a = p.f2, &b = p.f1, &c = p.f0;
    const ChebyshevForm &a2 = q.f2, &b2 = q.f1, &c2 = q.f0;
    ChebyshevForm x = mul_mod(a, c2) - mul_mod(a2, c);
    ChebyshevForm y = mul_mod(a, b2) - mul_mod(a2, b);
    ChebyshevForm z = mul_mod(b, c2) - mul_mod(b2, c);
    return mul_mod(x, x) - mul_mod(y, z);
  }
  if (p.kind == FactorKind::linear && q.kind == FactorKind::linear) {
    return mul_mod(p.f1, q.f0) - mul_mod(p.f0, q.f1);
  }
  const FactorPoly& quad = p.kind == FactorKind::quadratic ? p : q;
  const FactorPoly& lin = p.kind == FactorKind::quadratic ? q : p;
  const ChebyshevForm &g1 = lin.f1, &g0 = lin.f0;
  return mul_mod(quad.f2, mul_mod(g0, g0)) - mul_mod(quad.f1, mul_mod(g0, g1)) +
         mul_mod(quad.f0, mul_mod(g1, g1));
}

namespace {

bool same_angle_beta_gamma(const FactorIndex& x, long k) {
  return x.j * x.c == k * x.b || (x.b - x.j) * x.c == k * x.b;
}

bool case1(const FactorIndex& x, long k1, long k2) {
  return x.i * x.c == k1 * x.a && same_angle_beta_gamma(x, k2);
}

bool case2(const FactorIndex& x, long k1, long k2) {
  return 6 * x.j == x.b && 2 * k1 * x.a == x.i * x.c && 2 * k2 * x.a == x.a * x.c - 2 * x.i * x.c;
}

}  // namespace

ShareKind factors_share_root(const FactorIndex& idx1, const FactorIndex& idx2) {
  if (idx1.a != idx2.a || idx1.b != idx2.b || idx1.c != idx2.c) {
    throw Error(ErrorCode::AmbientMismatch, "factors of different R");
  }
  check_index(idx1);
  check_index(idx2);
  if (idx1 == idx2) return ShareKind::yes_equal_factors;
  if (idx1.i == idx2.i && idx1.j == idx2.j) {
    if (case1(idx1, idx1.k, idx2.k) || case1(idx1, idx2.k, idx1.k)) return ShareKind::yes_case1;
    if (case2(idx1, idx1.k, idx2.k) || case2(idx1, idx2.k, idx1.k)) return ShareKind::yes_case2;
  }
  FactorPoly p = build_factor(idx1), q = build_factor(idx2);
  if (p.kind == q.kind) {
    // proportional coefficient vectors mean the same monic factor
    bool prop = true;
    auto pc = p.coeffs(), qc = q.coeffs();
    for (size_t s = 0; s < pc.size() && prop; ++s) {
      for (size_t t = s + 1; t < pc.size() && prop; ++t) {
        prop = sign_at_cyclotomic(mul_mod(pc[s], qc[t]) - mul_mod(pc[t], qc[s])) == 0;
      }
    }
    if (prop) return ShareKind::yes_equal_factors;
  }
  if (sign_at_cyclotomic(factor_resultant(p, q)) == 0) return ShareKind::yes_other;
  return ShareKind::no;
}

}  // namespace chebknot
