#include <cmath>
#include <random>

#include "chebknot/error.hpp"
#include "chebknot/factors.hpp"
#include "doctest.h"
#include "mpfr_oracle.hpp"

using namespace chebknot;

namespace {

// P = phi^2 + L phi + C straight from the trigonometric definition, in long
// double; the tests only use it where 1e-12 separation is plenty.
struct TrigFactor {
  long double L, C, s2g, disc;
  bool linear;
};

TrigFactor trig(const FactorIndex& x) {
  const long double pi = 3.14159265358979323846264338327950288L;
  long double al = pi * x.i / x.a, be = pi * x.j / x.b, ga = pi * x.k / x.c;
  long double ca = std::cos(al), cb = std::cos(be), cg = std::cos(ga), sg = std::sin(ga);
  TrigFactor t;
  t.linear = x.is_linear();
  t.L = 4 * ca * cb;
  t.s2g = sg * sg;
  t.C = t.linear ? 0 : 4 * (ca * ca - cg * cg) * (cb * cb - cg * cg) / (sg * sg);
  t.disc = t.L * t.L - 4 * t.C;
  if (t.linear) t.L /= 2;  // linear factor is phi + 2 cos a cos b
  return t;
}

std::vector<long double> trig_roots(const FactorIndex& x) {
  TrigFactor t = trig(x);
  if (t.linear) return {-t.L};
  if (t.disc < -1e-15L) return {};
  if (std::fabs(t.disc) <= 1e-15L) return {-t.L / 2};
  long double s = std::sqrt(t.disc);
  return {(-t.L - s) / 2, (-t.L + s) / 2};
}

long double value(const DyadicInterval& iv) { return iv.midpoint().to_double(); }

std::vector<FactorIndex> grid() {
  std::vector<FactorIndex> out;
  for (long a : {3L, 5L}) {
    for (long b = 2; b <= 8; ++b) {
      if (std::gcd(a, b) != 1) continue;
      for (long c = 2; c <= 10; ++c) {
        for (auto& f : all_factors(a, b, c)) out.push_back(f);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("all_factors sizes and argument checks") {
  CHECK(all_factors(3, 4, 5).size() == 6);
  CHECK(all_factors(3, 4, 6).size() == 9);
  CHECK(all_factors(1, 4, 6).empty());
  CHECK_THROWS_AS(all_factors(2, 3, 5), Error);
  CHECK_THROWS_AS(all_factors(3, 6, 5), Error);
}

TEST_CASE("build_factor examples") {
  FactorPoly lin = build_factor({3, 4, 6, 1, 1, 3});
  CHECK(lin.kind == FactorKind::linear);
  auto r = factor_roots({3, 4, 6, 1, 1, 3}, 40);
  REQUIRE(r.size() == 1);
  CHECK(std::fabs(value(r[0].interval) + std::sqrt(2.0) / 2) < 1e-11);

  FactorPoly q = build_factor({3, 4, 5, 1, 1, 2});
  CHECK(q.kind == FactorKind::quadratic);
  DyadicInterval f2 = eval_at_cyclotomic(q.f2, 60), f1 = eval_at_cyclotomic(q.f1, 60),
                 f0 = eval_at_cyclotomic(q.f0, 60);
  CHECK(std::fabs(value(f1) / value(f2) - 1.41421356237) < 1e-9);
  CHECK(std::fabs(value(f0) / value(f2) - 0.27639320225) < 1e-9);
}

TEST_CASE("factor forms match the trigonometric definition") {
  std::mt19937_64 rng(1);
  auto g = grid();
  std::shuffle(g.begin(), g.end(), rng);
  g.resize(150);
  for (auto& x : g) {
    INFO(x.to_string());
    FactorPoly p = build_factor(x);
    TrigFactor t = trig(x);
    long double f2 = value(eval_at_cyclotomic(p.f2, 60)), f1 = value(eval_at_cyclotomic(p.f1, 60)),
                f0 = value(eval_at_cyclotomic(p.f0, 60));
    if (t.linear) {
      CHECK(p.f2.is_zero());
      CHECK(f1 == doctest::Approx(2.0));
      CHECK(std::fabs(f0 - 2 * t.L) < 1e-12);
    } else {
      CHECK(std::fabs(f2 - 4 * t.s2g) < 1e-12);
      CHECK(std::fabs(f1 - 4 * t.s2g * t.L) < 1e-12);
      CHECK(std::fabs(f0 - 4 * t.s2g * t.C) < 1e-12);
      CHECK(sign_at_cyclotomic(p.f2) == 1);
    }
  }
}

TEST_CASE("f2 evaluates to 4 sin^2 gamma") {
  oracle::Real ref(128), t(128);
  for (auto& x : grid()) {
    if (x.is_linear()) continue;
    DyadicInterval f2 = eval_at_cyclotomic(build_factor(x).f2, 40);
    // 4 sin^2 g = 2 - 2cos 2g
    oracle::two_cos_pi_frac(t, 2 * x.k, x.c, 128);
    mpfr_ui_sub(ref.get(), 2, t.get(), MPFR_RNDN);
    CHECK(oracle::within(f2.midpoint(), ref, 40, 256));
  }
}

TEST_CASE("discriminant_sign examples") {
  CHECK(discriminant_sign({3, 4, 6, 1, 2, 2}) == 0);
  CHECK(discriminant_sign({3, 4, 5, 1, 1, 1}) == -1);
  CHECK(discriminant_sign({3, 4, 5, 1, 1, 2}) == 1);
  CHECK_THROWS_AS(discriminant_sign({3, 4, 6, 1, 1, 3}), Error);
}

TEST_CASE("discriminant sign agrees with the trigonometric discriminant") {
  for (auto& x : grid()) {
    if (x.is_linear()) continue;
    TrigFactor t = trig(x);
    int s = discriminant_sign(x);
    if (std::fabs(t.disc) > 1e-12L) CHECK(s == (t.disc > 0 ? 1 : -1));
    else CHECK(s == 0);
    CHECK((s == 0) == has_double_root(x));
  }
}

TEST_CASE("has_double_root examples") {
  CHECK(has_double_root({3, 4, 6, 1, 2, 2}));
  CHECK_FALSE(has_double_root({3, 4, 5, 1, 2, 1}));
  CHECK_FALSE(has_double_root({3, 4, 5, 1, 2, 2}));
  CHECK_FALSE(has_double_root({3, 4, 6, 1, 1, 2}));
}

TEST_CASE("factor_roots examples") {
  auto d = factor_roots({3, 4, 6, 1, 2, 2}, 50);
  REQUIRE(d.size() == 1);
  CHECK(d[0].multiplicity == 2);
  CHECK(d[0].interval == DyadicInterval(Dyadic(0)));

  auto r = factor_roots({3, 4, 5, 1, 1, 2}, 50);
  REQUIRE(r.size() == 2);
  CHECK(std::fabs(value(r[0].interval) + 1.18000) < 1e-4);
  CHECK(std::fabs(value(r[1].interval) + 0.23430) < 1e-4);
  auto s = factor_roots({3, 4, 5, 1, 2, 2}, 50);
  REQUIRE(s.size() == 2);
  CHECK(std::fabs(value(s[0].interval) + 0.25540) < 1e-4);
  CHECK(std::fabs(value(s[1].interval) - 0.25540) < 1e-4);
  CHECK(factor_roots({3, 4, 5, 1, 1, 1}, 50).empty());
}

TEST_CASE("factor_roots agree with the quadratic formula") {
  for (auto& x : grid()) {
    INFO(x.to_string());
    auto roots = factor_roots(x, 60);
    auto ref = trig_roots(x);
    REQUIRE(roots.size() == ref.size());
    for (size_t t = 0; t < roots.size(); ++t) {
      CHECK(roots[t].interval.width_at_most(60));
      CHECK(std::fabs(value(roots[t].interval) - ref[t]) < 1e-12);
      CHECK(roots[t].multiplicity == (has_double_root(x) ? 2 : 1));
    }
  }
}

TEST_CASE("factor_sign_at_rational examples") {
  CHECK(factor_sign_at_rational({3, 4, 6, 1, 2, 3}, 0, 1) == 0);
  CHECK(factor_sign_at_rational({3, 4, 5, 1, 1, 2}, 0, 1) == 1);
  CHECK(factor_sign_at_rational({3, 4, 5, 1, 1, 2}, -1, 2) == -1);
}

TEST_CASE("factor signs bracket the certified roots") {
  for (auto& x : grid()) {
    auto roots = factor_roots(x, 40);
    for (auto& r : roots) {
      mpq_class lo = (r.interval.lo() - Dyadic(1, -38)).to_mpq();
      mpq_class hi = (r.interval.hi() + Dyadic(1, -38)).to_mpq();
      int sl = factor_sign_at_rational(x, lo.get_num(), lo.get_den());
      int sh = factor_sign_at_rational(x, hi.get_num(), hi.get_den());
      INFO(x.to_string());
      if (r.multiplicity == 2) {
        CHECK(sl == 1);
        CHECK(sh == 1);
      } else {
        CHECK(sl * sh == -1);
      }
      if (r.interval.is_point()) {
        mpq_class z = r.interval.lo().to_mpq();
        CHECK(factor_sign_at_rational(x, z.get_num(), z.get_den()) == 0);
      }
    }
  }
}

TEST_CASE("factors_share_root examples") {
  CHECK(factors_share_root({5, 4, 7, 1, 1, 1}, {5, 4, 7, 2, 3, 1}) == ShareKind::no);
  CHECK(factors_share_root({3, 4, 5, 1, 1, 1}, {3, 4, 5, 1, 1, 2}) == ShareKind::no);
  // alpha = gamma_1 = pi/3 and beta = gamma_2 = pi/4
  CHECK(factors_share_root({3, 4, 12, 1, 1, 4}, {3, 4, 12, 1, 1, 3}) == ShareKind::yes_case1);
  // two linear factors with beta = pi/2 are both just phi
  CHECK(factors_share_root({5, 4, 6, 1, 2, 3}, {5, 4, 6, 2, 2, 3}) == ShareKind::yes_equal_factors);
  CHECK_THROWS_AS(factors_share_root({3, 4, 5, 1, 1, 1}, {3, 4, 6, 1, 1, 1}), Error);
}

TEST_CASE("factors_share_root matches numeric root coincidences") {
  for (long a : {3L, 5L}) {
    for (long b : {2L, 4L, 6L}) {
      if (std::gcd(a, b) != 1) continue;
      for (long c : {4L, 6L, 12L}) {
        auto fs = all_factors(a, b, c);
        for (size_t p = 0; p < fs.size(); ++p) {
          for (size_t q = p + 1; q < fs.size(); ++q) {
            bool numeric = false;
            for (long double x : trig_roots(fs[p])) {
              for (long double y : trig_roots(fs[q])) numeric |= std::fabs(x - y) < 1e-12L;
            }
            ShareKind k = factors_share_root(fs[p], fs[q]);
            INFO(fs[p].to_string() << " " << fs[q].to_string() << " " << to_string(k));
            CHECK((k != ShareKind::no) == numeric);
          }
        }
      }
    }
  }
}
