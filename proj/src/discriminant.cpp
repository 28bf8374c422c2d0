#include "chebknot/discriminant.hpp"

#include <sstream>

#include "chebknot/error.hpp"
#include "chebknot/factors.hpp"

namespace chebknot {

// --------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class IntPoly::coeff(int i) const {
  return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : mpz_class(0);
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpz_class> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), c_[i].get_mpz_t(), o.c_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + mpq_class(*it);
  return acc;
}

DyadicInterval IntPoly::eval(const DyadicInterval& x) const {
  DyadicInterval acc(Dyadic(0));
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * x + DyadicInterval(Dyadic::from_mpz(*it));
  }
  return acc;
}

mpz_class IntPoly::l1_norm() const {
  mpz_class s = 0;
  for (auto& x : c_) s += abs(x);
  return s;
}

int IntPoly::zero_multiplicity() const {
  if (is_zero()) throw Error(ErrorCode::BadArgs, "zero polynomial has no root multiplicity");
  std::vector<mpz_class> p = c_;
  int m = 0;
  while (p.front() == 0) {
    p.erase(p.begin());  // exact division by phi
    ++m;
  }
  return m;
}

std::string IntPoly::to_text() const {
  std::ostringstream os;
  os << degree();
  for (auto& x : c_) os << ", " << x.get_str();
  return os.str();
}

std::string IntPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!first) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0) os << "-";
    mpz_class a = abs(c_[i]);
    if (a != 1 || i == 0) os << a.get_str();
    if (i > 0) os << "phi" << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  return os.str();
}

long discriminant_degree(long a, long b, long c) { return (a - 1) * (b - 1) * (c - 1) / 2; }

// ------------------------------------------------------------ exact path

IntPoly compute_R_exact(long a, long b, long c) {
  check_abc(a, b, c);
  const long n = a * b * c;
  std::vector<ChebyshevForm> acc{ChebyshevForm::constant(n, 1)};
  for (const FactorIndex& idx : all_factors(a, b, c)) {
    FactorPoly f = build_factor(idx);
    std::vector<ChebyshevForm> fc = f.coeffs();
    for (auto& x : fc) x = x.compact();
    std::vector<ChebyshevForm> next(acc.size() + fc.size() - 1, ChebyshevForm(n));
    for (size_t d = 0; d < acc.size(); ++d) {
      for (size_t e = 0; e < fc.size(); ++e) mul_mod_accumulate(next[d + e], acc[d], fc[e]);
    }
    for (auto& x : next) x = x.compact();
    acc = std::move(next);
  }
  std::vector<mpz_class> out;
  out.reserve(acc.size());
  for (size_t d = 0; d < acc.size(); ++d) {
    ChebyshevForm r = reduce_canonical(acc[d]);
    if (!r.is_constant()) {
      throw Error(ErrorCode::InternalInconsistency,
                  "coefficient of phi^" + std::to_string(d) + " is not rational");
    }
    out.push_back(r.const_term());
  }
  return IntPoly(std::move(out));
}

// ---------------------------------------------------------- numeric path

DyadicPoly poly_mul(const DyadicPoly& p, const DyadicPoly& q) {
  if (p.empty() || q.empty()) return {};
  // shift both to integer polynomials over a common exponent
  auto lift = [](const DyadicPoly& x, std::int64_t& e) {
    e = 0;
    bool any = false;
    for (auto& d : x) {
      if (d.is_zero()) continue;
      e = any ? std::min(e, d.exponent()) : d.exponent();
      any = true;
    }
    std::vector<mpz_class> m(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      mpz_mul_2exp(m[i].get_mpz_t(), x[i].mantissa().get_mpz_t(),
                   static_cast<mp_bitcnt_t>(x[i].exponent() - e));
    }
    return m;
  };
  std::int64_t ep, eq;
  auto mp = lift(p, ep), mq = lift(q, eq);
  std::vector<mpz_class> r(p.size() + q.size() - 1);
  for (size_t i = 0; i < mp.size(); ++i) {
    if (mp[i] == 0) continue;
    for (size_t j = 0; j < mq.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), mp[i].get_mpz_t(), mq[j].get_mpz_t());
    }
  }
  DyadicPoly out(r.size());
  for (size_t i = 0; i < r.size(); ++i) out[i] = Dyadic(r[i], ep + eq);
  return out;
}

DyadicPoly product_tree(std::vector<DyadicPoly> factors) {
  if (factors.empty()) return {Dyadic(1)};
  size_t size = 1;
  while (size < factors.size()) size *= 2;
  factors.resize(size, DyadicPoly{Dyadic(1)});
  while (factors.size() > 1) {
    std::vector<DyadicPoly> next(factors.size() / 2);
    for (size_t i = 0; i < next.size(); ++i) next[i] = poly_mul(factors[2 * i], factors[2 * i + 1]);
    factors = std::move(next);
  }
  return factors.front();
}

namespace {

// Midpoint of an enclosure, on the grid 2^-bits; error <= 2^-bits when the
// enclosure is narrower than 2^-bits.
Dyadic approx(const DyadicInterval& v, std::int64_t bits) { return v.midpoint().round_to(bits + 1); }

}  // namespace

IntPoly compute_R_numeric(long a, long b, long c) {
  check_abc(a, b, c);
  std::vector<FactorIndex> idx = all_factors(a, b, c);
  const long F = static_cast<long>(idx.size());
  const long N = discriminant_degree(a, b, c);
  // Each coefficient has modulus <= M = 16, so every factor has l1 norm <= 48.
  // With per-coefficient error delta, the product error is at most
  // E = (48 + 3 delta)^F - 48^F; delta starts at 2^(-6N+1) and shrinks until E <= 1/4.
  std::int64_t dbits = std::max<long>(6 * N - 1, 1);
  Dyadic E;
  for (;; dbits += 4) {
    Dyadic delta(1, -dbits);
    Dyadic hi(1), lo(1);
    Dyadic base(48), pert = Dyadic(48) + Dyadic(3) * delta;
    for (long t = 0; t < F; ++t) {
      hi *= pert;
      lo *= base;
    }
    E = hi - lo;
    if (E <= Dyadic(1, -2)) break;
  }
  std::vector<DyadicPoly> polys;
  polys.reserve(F);
  const std::int64_t p = dbits + 10;
  for (const FactorIndex& x : idx) {
    DyadicInterval ca = cos_pi_frac_interval(x.i, x.a, p), cb = cos_pi_frac_interval(x.j, x.b, p);
    if (x.is_linear()) {
      polys.push_back({approx(ca * cb, dbits), Dyadic(2)});
      continue;
    }
    DyadicInterval A = cos_pi_frac_interval(2 * x.i, x.a, p);
    DyadicInterval B = cos_pi_frac_interval(2 * x.j, x.b, p);
    DyadicInterval G = cos_pi_frac_interval(2 * x.k, x.c, p);
    DyadicInterval f2 = DyadicInterval(Dyadic(2)) - G;
    DyadicInterval f1 = f2 * ca * cb;
    DyadicInterval f0 = (A - G) * (B - G);
    for (auto* v : {&f2, &f1, &f0}) {
      if (!v->width_at_most(dbits)) {
        throw Error(ErrorCode::InternalInconsistency, "factor coefficient enclosure too wide");
      }
    }
    polys.push_back({approx(f0, dbits), approx(f1, dbits), approx(f2, dbits)});
  }
  DyadicPoly prod = product_tree(std::move(polys));
  std::vector<mpz_class> out(prod.size());
  const Dyadic limit(7, -4);  // 7/16
  for (size_t d = 0; d < prod.size(); ++d) {
    mpz_class r = prod[d].round();
    Dyadic dist = (prod[d] - Dyadic::from_mpz(r)).abs();
    if (dist + E > limit) {
      throw Error(ErrorCode::RoundingAmbiguous,
                  "coefficient of phi^" + std::to_string(d) + " is too close to a half-integer");
    }
    out[d] = r;
  }
  return IntPoly(std::move(out));
}

NormReport norm_and_degree_report(const IntPoly& R, long a, long b, long c) {
  NormReport rep;
  rep.degree = R.degree();
  rep.l1_norm = R.l1_norm();
  rep.leading = R.leading();
  long N = discriminant_degree(a, b, c);
  mpz_class bound, lead;
  mpz_ui_pow_ui(bound.get_mpz_t(), 6, static_cast<unsigned long>(N));
  mpz_ui_pow_ui(lead.get_mpz_t(), static_cast<unsigned long>(c),
                static_cast<unsigned long>((a - 1) * (b - 1) / 2));
  rep.bound_ok = rep.l1_norm <= bound && rep.degree == N && rep.leading == lead;
  return rep;
}

}  // namespace chebknot
