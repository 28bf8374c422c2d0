#pragma once

// The linear and quadratic factors P_{alpha,beta,gamma} of R_{a,b,c}.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "chebknot/chebyshev.hpp"
#include "chebknot/numerics.hpp"

namespace chebknot {

/// alpha = i pi/a, beta = j pi/b, gamma = k pi/c.
struct FactorIndex {
  long a = 0, b = 0, c = 0;
  long i = 0, j = 0, k = 0;

  long n() const { return a * b * c; }
  bool is_linear() const { return 2 * k == c; }
  bool operator==(const FactorIndex&) const = default;
  auto operator<=>(const FactorIndex&) const = default;
  std::string to_string() const;
};

/// Throws BadArgs unless a, b, c >= 1, a odd and gcd(a, b) = 1.
void check_abc(long a, long b, long c);
void check_index(const FactorIndex& idx);

/// Every (i, j, k) with 1 <= i <= (a-1)/2, 1 <= j < b, 1 <= k <= c/2.
std::vector<FactorIndex> all_factors(long a, long b, long c);

enum class FactorKind { linear, quadratic };

/// Quadratic: f2 phi^2 + f1 phi + f0 = 4 sin^2(gamma) P.
/// Linear:    f1 phi + f0 = 2 phi + 4 cos(alpha) cos(beta) = 2 P, f2 = 0.
/// All forms live over n = abc.
struct FactorPoly {
  FactorIndex index;
  FactorKind kind = FactorKind::quadratic;
  ChebyshevForm f0, f1, f2;

  int degree() const { return kind == FactorKind::linear ? 1 : 2; }
  /// Coefficient forms, constant term first.
  std::vector<ChebyshevForm> coeffs() const;
};

FactorPoly build_factor(const FactorIndex& idx);

/// Form over n whose value is 16(sin^2 gamma - sin^2 alpha sin^2 beta); it has
/// the sign of the discriminant of a quadratic factor.
ChebyshevForm discriminant_form(const FactorIndex& idx);

/// b = 2j and ic = ka.
bool has_double_root(const FactorIndex& idx);

/// Exact sign of the discriminant; throws NotQuadratic for linear factors.
int discriminant_sign(const FactorIndex& idx);

/// True when P(0) = 0 for a quadratic factor: ic = ka, jc = kb or (b-j)c = kb.
bool has_zero_root(const FactorIndex& idx);

struct FactorRoot {
  DyadicInterval interval;
  int multiplicity = 1;
  /// +1 larger root of a quadratic, -1 smaller root, 0 linear or double root.
  int branch = 0;
};

/// Real roots of the factor, ascending, each of width <= 2^-ell.
std::vector<FactorRoot> factor_roots(const FactorIndex& idx, std::int64_t ell);

/// Exact sign of P(u/v), v > 0.
int factor_sign_at_rational(const FactorIndex& idx, const mpz_class& u, const mpz_class& v);

enum class ShareKind { no, yes_equal_factors, yes_case1, yes_case2, yes_other };

std::string to_string(ShareKind k);

/// Whether two factors of the same R_{a,b,c} have a common root.
ShareKind factors_share_root(const FactorIndex& idx1, const FactorIndex& idx2);

/// Resultant of the two factor polynomials as a form over n (zero exactly when
/// they have a common complex root).
ChebyshevForm factor_resultant(const FactorPoly& p, const FactorPoly& q);

}  // namespace chebknot
