#pragma once

// R_{a,b,c} as an integer polynomial in phi, computed exactly over
// Z[2cos(pi/n)] or by a certified dyadic product.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "chebknot/chebyshev.hpp"
#include "chebknot/numerics.hpp"

namespace chebknot {

/// Integer coefficients, constant term first, no trailing zeros.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(int i) const;
  mpz_class leading() const { return c_.empty() ? mpz_class(0) : c_.back(); }

  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator-() const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  mpq_class eval(const mpq_class& x) const;
  DyadicInterval eval(const DyadicInterval& x) const;
  mpz_class l1_norm() const;
  /// Multiplicity of phi = 0 as a root, by repeated exact division by phi.
  int zero_multiplicity() const;

  /// "deg, c0, c1, ..."
  std::string to_text() const;
  std::string to_string() const;

 private:
  std::vector<mpz_class> c_;
};

/// Polynomial in phi with coefficients in Z[2cos(pi/n)].
struct CycloPoly {
  long n = 1;
  std::vector<ChebyshevForm> coeffs;
};

/// N = (a-1)(b-1)(c-1)/2.
long discriminant_degree(long a, long b, long c);

IntPoly compute_R_exact(long a, long b, long c);
IntPoly compute_R_numeric(long a, long b, long c);

/// Dyadic polynomial, constant term first.
using DyadicPoly = std::vector<Dyadic>;

DyadicPoly poly_mul(const DyadicPoly& p, const DyadicPoly& q);
/// Exact product by a balanced tree over the list padded to a power of two.
DyadicPoly product_tree(std::vector<DyadicPoly> factors);

struct NormReport {
  int degree = 0;
  mpz_class l1_norm;
  mpz_class leading;
  bool bound_ok = false;
};

NormReport norm_and_degree_report(const IntPoly& R, long a, long b, long c);

}  // namespace chebknot
