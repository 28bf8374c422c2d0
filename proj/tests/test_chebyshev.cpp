#include <map>
#include <random>

#include "chebknot/chebyshev.hpp"
#include "chebknot/error.hpp"
#include "doctest.h"
#include "mpfr_oracle.hpp"

using namespace chebknot;

namespace {

MonomialPoly mono(std::vector<long> c) {
  std::vector<mpq_class> q;
  for (long x : c) q.emplace_back(x);
  return MonomialPoly(std::move(q));
}

// Phi_N by iterated exact division of z^N - 1 by Phi_d, d | N, d < N.
MonomialPoly cyclotomic_by_division(long N, std::map<long, MonomialPoly>& memo) {
  if (auto it = memo.find(N); it != memo.end()) return it->second;
  std::vector<mpq_class> c(N + 1);
  c[0] = -1;
  c[N] = 1;
  MonomialPoly p(std::move(c));
  for (long d = 1; d < N; ++d) {
    if (N % d) continue;
    auto [q, r] = p.divmod(cyclotomic_by_division(d, memo));
    REQUIRE(r.is_zero());
    p = q;
  }
  memo[N] = p;
  return p;
}

long totient_by_gcd(long n) {
  long c = 0;
  for (long k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

ChebyshevForm random_form(std::mt19937_64& rng, long n, int maxc) {
  std::uniform_int_distribution<int> cd(-maxc, maxc);
  std::uniform_int_distribution<long> nz(0, n - 1);
  std::vector<mpz_class> c(n);
  int terms = std::uniform_int_distribution<int>(1, 6)(rng);
  for (int t = 0; t < terms; ++t) c[nz(rng)] = cd(rng);
  return ChebyshevForm(n, std::move(c));
}

}  // namespace

TEST_CASE("cheb_poly_T and cheb_poly_V") {
  CHECK(cheb_poly_T(0) == mono({2}));
  CHECK(cheb_poly_T(2) == mono({-2, 0, 1}));
  CHECK(cheb_poly_T(3) == mono({0, -3, 0, 1}));
  CHECK(cheb_poly_V(1) == mono({1}));
  CHECK(cheb_poly_V(2) == mono({0, 1}));
  CHECK(cheb_poly_V(3) == mono({-1, 0, 1}));
  for (int m = 1; m < 25; ++m) {
    CHECK(cheb_poly_T(m).derivative() == cheb_poly_V(m) * mpq_class(m));
    CHECK(cheb_poly_T(m).leading() == 1);
  }
}

TEST_CASE("fold_index examples") {
  CHECK(fold_index(10, 10) == FoldedIndex{-1, 0});
  CHECK(fold_index(13, 10) == FoldedIndex{-1, 3});
  CHECK(fold_index(25, 10) == FoldedIndex{1, 5});
  CHECK(fold_index(4, 10) == FoldedIndex{1, 4});
}

TEST_CASE("minimal_poly examples") {
  CHECK(minimal_poly(4) == ChebyshevForm(4, {0, 0, 1}));
  CHECK(minimal_poly(5) == ChebyshevForm(5, {1, -1, 1}));
  CHECK(minimal_poly(6) == ChebyshevForm(6, {-1, 0, 1}));
  CHECK(minimal_poly(4).to_monomial() == mono({-2, 0, 1}));
  CHECK(minimal_poly(5).to_monomial() == mono({-1, -1, 1}));
  CHECK(minimal_poly(6).to_monomial() == mono({-3, 0, 1}));
}

TEST_CASE("cyclotomic construction matches iterated division") {
  std::map<long, MonomialPoly> memo;
  for (long N = 1; N <= 120; ++N) {
    INFO("N=" << N);
    CHECK(cyclotomic_poly(N) == cyclotomic_by_division(N, memo));
  }
}

TEST_CASE("minimal_poly degree and divisibility of T_n + 2") {
  for (long n = 1; n <= 200; ++n) {
    INFO("n=" << n);
    MonomialPoly M = minimal_poly(n).to_monomial();
    if (n >= 2) CHECK(M.degree() == totient_by_gcd(2 * n) / 2);
    CHECK(M.leading() == 1);
    if (n <= 120) {
      MonomialPoly t = cheb_poly_T(static_cast<int>(n)) + MonomialPoly::constant(2);
      CHECK(t.divmod(M).second.is_zero());
    }
  }
}

TEST_CASE("mul_mod examples") {
  ChebyshevForm t1 = ChebyshevForm::T(10, 1);
  CHECK(mul_mod(t1, t1) == ChebyshevForm(10, {2, 0, 1}));
  // T_12 + T_2 with T_12 == -T_2
  CHECK(mul_mod(ChebyshevForm::T(10, 7), ChebyshevForm::T(10, 5)).is_zero());
  ChebyshevForm f(10, {3, -1, 0, 4, 0, 0, 0, 0, 0, 7});
  CHECK(mul_mod(f, ChebyshevForm::constant(10, 1)) == f);
  CHECK_THROWS_AS(mul_mod(t1, ChebyshevForm::T(11, 1)), Error);
}

TEST_CASE("product rule with folding") {
  for (long n : {1L, 2L, 5L, 10L, 17L}) {
    for (long i = 0; i < n; ++i) {
      for (long j = 0; j < n; ++j) {
        // T_0 as a form is the constant 2
        ChebyshevForm ti = ChebyshevForm::T(n, i), tj = ChebyshevForm::T(n, j);
        ChebyshevForm expect = ChebyshevForm::T(n, i + j) + ChebyshevForm::T(n, i > j ? i - j : j - i);
        CHECK(mul_mod(ti, tj) == expect);
      }
    }
  }
}

TEST_CASE("reduce_canonical examples") {
  for (long n : {3L, 5L, 12L, 30L}) CHECK(reduce_canonical(minimal_poly(n)).is_zero());
  CHECK(reduce_canonical(ChebyshevForm(7)).is_zero());
  CHECK(reduce_canonical(ChebyshevForm(5, {1, -1, 1})).is_zero());
  CHECK(reduce_canonical(ChebyshevForm::T(10, 5)).is_zero());
}

TEST_CASE("reduce_canonical agrees with monomial products") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 120; ++it) {
    long n = std::uniform_int_distribution<long>(2, 24)(rng);
    ChebyshevForm f = random_form(rng, n, 9), g = random_form(rng, n, 9);
    MonomialPoly p = f.to_monomial() * g.to_monomial();
    MonomialPoly r = p.divmod(minimal_poly(n).to_monomial()).second;
    ChebyshevForm h = reduce_canonical(mul_mod(f, g));
    CHECK(h.degree() < minimal_poly(n).degree());
    CHECK(h.to_monomial() == r);
  }
}

TEST_CASE("eval_at_cyclotomic examples") {
  DyadicInterval z = eval_at_cyclotomic(ChebyshevForm::T(4, 2), 20);
  CHECK(z.contains_zero());
  CHECK(z.width_at_most(20));
  CHECK(eval_at_cyclotomic(ChebyshevForm::constant(9, 1), 20) == DyadicInterval(Dyadic(1)));
  DyadicInterval g = eval_at_cyclotomic(ChebyshevForm::T(5, 1), 30);
  CHECK(g.width_at_most(30));
  CHECK(g.contains(mpq_class(1618033988, 1000000000)) == false);
  CHECK(std::abs(g.midpoint().to_double() - 1.6180339887498949) < 1e-9);
}

TEST_CASE("sign_at_cyclotomic examples") {
  CHECK(sign_at_cyclotomic(minimal_poly(5)) == 0);
  CHECK(sign_at_cyclotomic(ChebyshevForm(3, {-1, 1})) == 0);
  CHECK(sign_at_cyclotomic(ChebyshevForm(5, {-1, 1})) == 1);
}

TEST_CASE("sign_at_cyclotomic against 256-bit MPFR evaluation") {
  std::mt19937_64 rng(5);
  int decided = 0;
  for (int it = 0; it < 500; ++it) {
    long n = std::uniform_int_distribution<long>(1, 50)(rng);
    ChebyshevForm f = random_form(rng, n, 20);
    oracle::Real acc(256), t(256);
    mpfr_set_z(acc.get(), f.const_term().get_mpz_t(), MPFR_RNDN);
    for (long i = 1; i <= f.degree(); ++i) {
      oracle::two_cos_pi_frac(t, i, n, 256);
      mpfr_mul_z(t.get(), t.get(), f.coeff(i).get_mpz_t(), MPFR_RNDN);
      mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
    }
    int s = sign_at_cyclotomic(f);
    // 2^-200 leaves ample room for the accumulated 256-bit rounding
    oracle::Real eps(256);
    mpfr_abs(eps.get(), acc.get(), MPFR_RNDN);
    if (mpfr_cmp_ui_2exp(eps.get(), 1, -200) > 0) {
      ++decided;
      CHECK(s == mpfr_sgn(acc.get()));
    } else {
      CHECK(s == 0);
      CHECK(reduce_canonical(f).is_zero());
    }
  }
  CHECK(decided > 300);
}

TEST_CASE("norm lower bound on random nonzero forms") {
  std::mt19937_64 rng(9);
  int tested = 0;
  for (int it = 0; it < 300; ++it) {
    long n = std::uniform_int_distribution<long>(2, 60)(rng);
    ChebyshevForm f = random_form(rng, n, 50);
    if (reduce_canonical(f).is_zero()) continue;
    long m = minimal_poly(n).degree();
    // |f| >= ||f||_T^(1-m)  <=>  |f| * ||f||^(m-1) >= 1
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), f.norm_T().get_mpz_t(), static_cast<unsigned long>(m - 1));
    const Dyadic scale = Dyadic::from_mpz(pw);
    int verdict = 0;
    for (std::int64_t q = 64 + static_cast<std::int64_t>(mpz_sizeinbase(pw.get_mpz_t(), 2)); verdict == 0 && q < 1 << 16; q *= 2) {
      DyadicInterval v = eval_at_cyclotomic(f, q).abs();
      if (v.lo() * scale >= Dyadic(1)) verdict = 1;
      else if (v.hi() * scale < Dyadic(1)) verdict = -1;
    }
    CHECK(verdict == 1);
    ++tested;
  }
  CHECK(tested > 200);
}

TEST_CASE("compact preserves the value") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 100; ++it) {
    long n = std::uniform_int_distribution<long>(2, 40)(rng);
    ChebyshevForm f = random_form(rng, n, 9);
    ChebyshevForm c = f.compact();
    CHECK(c.degree() <= n / 2);
    CHECK(reduce_canonical(c) == reduce_canonical(f));
  }
}

TEST_CASE("monomial round trip") {
  ChebyshevForm f(30, {4, 0, -3, 2, 0, 1});
  CHECK(ChebyshevForm::from_monomial(f.to_monomial(), 30) == f);
}
