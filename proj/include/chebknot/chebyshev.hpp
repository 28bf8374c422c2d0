#pragma once

// Chebyshev polynomials and integer Chebyshev forms over Z[2cos(pi/n)].

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chebknot/numerics.hpp"

namespace chebknot {

/// Univariate polynomial in the monomial basis, constant term first.
class MonomialPoly {
 public:
  MonomialPoly() = default;
  explicit MonomialPoly(std::vector<mpq_class> coeffs);

  static MonomialPoly constant(const mpq_class& c) { return MonomialPoly({c}); }
  static MonomialPoly x() { return MonomialPoly({mpq_class(0), mpq_class(1)}); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  mpq_class coeff(int i) const;
  const mpq_class& leading() const { return coeffs_.back(); }

  MonomialPoly operator+(const MonomialPoly& o) const;
  MonomialPoly operator-(const MonomialPoly& o) const;
  MonomialPoly operator*(const MonomialPoly& o) const;
  MonomialPoly operator*(const mpq_class& s) const;
  MonomialPoly operator-() const;
  bool operator==(const MonomialPoly& o) const { return coeffs_ == o.coeffs_; }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<MonomialPoly, MonomialPoly> divmod(const MonomialPoly& d) const;
  MonomialPoly derivative() const;
  mpq_class eval(const mpq_class& x) const;
  DyadicInterval eval(const DyadicInterval& x) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

/// T_m with T_0 = 2, T_1 = t, T_{m+1} = t T_m - T_{m-1}.
MonomialPoly cheb_poly_T(int m);
/// V_m with V_1 = 1, V_2 = t, same recurrence; m V_m = T_m'.
MonomialPoly cheb_poly_V(int m);

struct FoldedIndex {
  int sign;
  long idx;
  bool operator==(const FoldedIndex&) const = default;
};

/// T_m == sign * T_idx modulo M_n, idx in [0, n-1].
FoldedIndex fold_index(long m, long n);

/// f_0 + sum_{i>=1} f_i T_i, read at t = 2cos(pi/n).  coeffs()[0] is f_0, the
/// plain constant (not a multiple of T_0 = 2).
class ChebyshevForm {
 public:
  ChebyshevForm() = default;
  explicit ChebyshevForm(long n) : n_(n) {}
  ChebyshevForm(long n, std::vector<mpz_class> coeffs);

  static ChebyshevForm constant(long n, const mpz_class& c);
  /// coeff * T_m, folded into [0, n-1].
  static ChebyshevForm T(long n, long m, const mpz_class& coeff = 1);

  long n() const { return n_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class const_term() const { return c_.empty() ? mpz_class(0) : c_[0]; }
  mpz_class coeff(long i) const;
  /// -1 for the zero form.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  long nonzero_count() const;

  /// += coeff * T_m, with m folded modulo M_n.
  void add_T(long m, const mpz_class& coeff);
  void add_constant(const mpz_class& c);

  ChebyshevForm operator+(const ChebyshevForm& o) const;
  ChebyshevForm operator-(const ChebyshevForm& o) const;
  ChebyshevForm operator-() const;
  ChebyshevForm operator*(const mpz_class& s) const;
  ChebyshevForm& operator+=(const ChebyshevForm& o);
  bool operator==(const ChebyshevForm& o) const { return n_ == o.n_ && c_ == o.c_; }

  /// |f_0| + 2 sum |f_i|
  mpz_class norm_T() const;
  /// Largest coefficient bit length.
  std::int64_t bitsize() const;

  /// Same value, with every index folded into [0, n/2] using T_{n-i} == -T_i.
  ChebyshevForm compact() const;

  MonomialPoly to_monomial() const;
  /// Inverse of to_monomial; the input must have integer coefficients.
  static ChebyshevForm from_monomial(const MonomialPoly& p, long n);

  std::string to_string() const;

 private:
  void trim();
  friend void mul_mod_accumulate(ChebyshevForm&, const ChebyshevForm&, const ChebyshevForm&);

  long n_ = 1;
  std::vector<mpz_class> c_;
};

/// f * g reduced with the index folding rules; throws AmbientMismatch.
ChebyshevForm mul_mod(const ChebyshevForm& f, const ChebyshevForm& g);
/// acc += f * g, same rules as mul_mod.
void mul_mod_accumulate(ChebyshevForm& acc, const ChebyshevForm& f, const ChebyshevForm& g);

long euler_phi(long n);

/// Phi_N as a monomial polynomial with integer coefficients.
MonomialPoly cyclotomic_poly(long N);

/// M_n in the Chebyshev basis; memoized.
const ChebyshevForm& minimal_poly(long n);

/// Remainder of f by M_n, degree < deg M_n.  Zero exactly when f vanishes at
/// 2cos(pi/n).
ChebyshevForm reduce_canonical(const ChebyshevForm& f);

/// Enclosure of f(2cos(pi/n)) of width <= 2^-ell.
DyadicInterval eval_at_cyclotomic(const ChebyshevForm& f, std::int64_t ell);

/// Exact sign of f(2cos(pi/n)).
int sign_at_cyclotomic(const ChebyshevForm& f);

}  // namespace chebknot
