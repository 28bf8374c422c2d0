#include "chebknot/chebyshev.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "chebknot/error.hpp"

namespace chebknot {

// ---------------------------------------------------------- MonomialPoly

MonomialPoly::MonomialPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

void MonomialPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpq_class MonomialPoly::coeff(int i) const {
  return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : mpq_class(0);
}

MonomialPoly MonomialPoly::operator+(const MonomialPoly& o) const {
  std::vector<mpq_class> r(std::max(coeffs_.size(), o.coeffs_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return MonomialPoly(std::move(r));
}

MonomialPoly MonomialPoly::operator-(const MonomialPoly& o) const { return *this + (-o); }

MonomialPoly MonomialPoly::operator-() const {
  MonomialPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

MonomialPoly MonomialPoly::operator*(const MonomialPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpq_class> r(coeffs_.size() + o.coeffs_.size() - 1);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return MonomialPoly(std::move(r));
}

MonomialPoly MonomialPoly::operator*(const mpq_class& s) const {
  MonomialPoly r = *this;
  for (auto& c : r.coeffs_) c *= s;
  r.trim();
  return r;
}

std::pair<MonomialPoly, MonomialPoly> MonomialPoly::divmod(const MonomialPoly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::BadArgs, "polynomial division by zero");
  std::vector<mpq_class> r = coeffs_;
  int dd = d.degree();
  std::vector<mpq_class> q(std::max(0, degree() - dd + 1));
  for (int k = degree(); k >= dd; --k) {
    if (r[k] == 0) continue;
    mpq_class f = r[k] / d.leading();
    q[k - dd] = f;
    for (int i = 0; i <= dd; ++i) r[k - dd + i] -= f * d.coeffs_[i];
  }
  return {MonomialPoly(std::move(q)), MonomialPoly(std::move(r))};
}

MonomialPoly MonomialPoly::derivative() const {
  std::vector<mpq_class> r;
  for (size_t i = 1; i < coeffs_.size(); ++i) r.push_back(coeffs_[i] * static_cast<long>(i));
  return MonomialPoly(std::move(r));
}

mpq_class MonomialPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

DyadicInterval MonomialPoly::eval(const DyadicInterval& x) const {
  // Coefficients here are always integers (T_m, V_m and friends).
  DyadicInterval acc(Dyadic(0));
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    if (it->get_den() != 1) throw Error(ErrorCode::BadArgs, "interval eval needs integer coefficients");
    acc = acc * x + DyadicInterval(Dyadic::from_mpz(it->get_num()));
  }
  return acc;
}

std::string MonomialPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << (coeffs_[i] > 0 ? " + " : " - ");
    else if (coeffs_[i] < 0) os << "-";
    mpq_class a = abs(coeffs_[i]);
    if (a != 1 || i == 0) os << a.get_str();
    if (i > 0) os << "t" << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  return os.str();
}

MonomialPoly cheb_poly_T(int m) {
  if (m < 0) throw Error(ErrorCode::BadArgs, "cheb_poly_T: negative degree");
  MonomialPoly prev = MonomialPoly::constant(2), cur = MonomialPoly::x();
  if (m == 0) return prev;
  for (int k = 1; k < m; ++k) {
    MonomialPoly next = MonomialPoly::x() * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

MonomialPoly cheb_poly_V(int m) {
  if (m < 0) throw Error(ErrorCode::BadArgs, "cheb_poly_V: negative degree");
  MonomialPoly prev, cur = MonomialPoly::constant(1);
  if (m == 0) return prev;
  for (int k = 1; k < m; ++k) {
    MonomialPoly next = MonomialPoly::x() * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

FoldedIndex fold_index(long m, long n) {
  if (n < 1) throw Error(ErrorCode::BadArgs, "fold_index: n must be positive");
  if (m < 0) m = -m;  // T_{-m} = T_m
  long r = m % (2 * n);
  if (r < n) return {1, r};
  if (r == n) return {-1, 0};
  return {-1, r - n};
}

// --------------------------------------------------------- ChebyshevForm

ChebyshevForm::ChebyshevForm(long n, std::vector<mpz_class> coeffs) : n_(n), c_(std::move(coeffs)) {
  if (static_cast<long>(c_.size()) > n_ && n_ > 1) {
    std::vector<mpz_class> raw = std::move(c_);
    c_.clear();
    add_constant(raw[0]);
    for (size_t i = 1; i < raw.size(); ++i) add_T(static_cast<long>(i), raw[i]);
  }
  trim();
}

void ChebyshevForm::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ChebyshevForm ChebyshevForm::constant(long n, const mpz_class& c) {
  ChebyshevForm f(n);
  f.add_constant(c);
  return f;
}

ChebyshevForm ChebyshevForm::T(long n, long m, const mpz_class& coeff) {
  ChebyshevForm f(n);
  f.add_T(m, coeff);
  return f;
}

mpz_class ChebyshevForm::coeff(long i) const {
  return i >= 0 && i < static_cast<long>(c_.size()) ? c_[i] : mpz_class(0);
}

long ChebyshevForm::nonzero_count() const {
  return std::count_if(c_.begin(), c_.end(), [](const mpz_class& x) { return x != 0; });
}

void ChebyshevForm::add_constant(const mpz_class& c) {
  if (c == 0) return;
  if (c_.empty()) c_.resize(1);
  c_[0] += c;
  trim();
}

void ChebyshevForm::add_T(long m, const mpz_class& coeff) {
  if (coeff == 0) return;
  FoldedIndex f = fold_index(m, n_);
  if (f.idx == 0) {
    add_constant(coeff * (2 * f.sign));
    return;
  }
  if (static_cast<long>(c_.size()) <= f.idx) c_.resize(f.idx + 1);
  if (f.sign > 0) {
    c_[f.idx] += coeff;
  } else {
    c_[f.idx] -= coeff;
  }
  trim();
}

ChebyshevForm ChebyshevForm::operator+(const ChebyshevForm& o) const {
  ChebyshevForm r = *this;
  r += o;
  return r;
}

ChebyshevForm& ChebyshevForm::operator+=(const ChebyshevForm& o) {
  if (o.n_ != n_) throw Error(ErrorCode::AmbientMismatch, "forms over different rings");
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

ChebyshevForm ChebyshevForm::operator-() const {
  ChebyshevForm r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

ChebyshevForm ChebyshevForm::operator-(const ChebyshevForm& o) const { return *this + (-o); }

ChebyshevForm ChebyshevForm::operator*(const mpz_class& s) const {
  ChebyshevForm r = *this;
  for (auto& c : r.c_) c *= s;
  r.trim();
  return r;
}

mpz_class ChebyshevForm::norm_T() const {
  mpz_class s = 0;
  for (size_t i = 0; i < c_.size(); ++i) s += (i == 0 ? 1 : 2) * abs(c_[i]);
  return s;
}

std::int64_t ChebyshevForm::bitsize() const {
  std::int64_t b = 0;
  for (auto& c : c_) {
    if (c != 0) b = std::max<std::int64_t>(b, static_cast<std::int64_t>(mpz_sizeinbase(c.get_mpz_t(), 2)));
  }
  return b;
}

ChebyshevForm ChebyshevForm::compact() const {
  ChebyshevForm r(n_);
  long half = n_ / 2;
  r.c_.assign(std::min<size_t>(c_.size(), half + 1), mpz_class(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    long k = static_cast<long>(i);
    if (2 * k == n_) continue;  // T_{n/2} vanishes at 2cos(pi/n)
    if (k <= half) {
      r.c_[k] += c_[i];
    } else {
      r.c_[n_ - k] -= c_[i];
    }
  }
  r.trim();
  return r;
}

MonomialPoly ChebyshevForm::to_monomial() const {
  MonomialPoly p;
  if (c_.empty()) return p;
  p = MonomialPoly::constant(mpq_class(c_[0]));
  for (size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) p = p + cheb_poly_T(static_cast<int>(i)) * mpq_class(c_[i]);
  }
  return p;
}

ChebyshevForm ChebyshevForm::from_monomial(const MonomialPoly& p, long n) {
  MonomialPoly rest = p;
  std::vector<mpz_class> raw(std::max(1, p.degree() + 1));
  while (!rest.is_zero()) {
    int d = rest.degree();
    mpq_class lc = rest.leading();
    if (lc.get_den() != 1) throw Error(ErrorCode::BadArgs, "from_monomial: non-integer coefficient");
    if (d == 0) {
      raw[0] += lc.get_num();
      break;
    }
    raw[d] += lc.get_num();
    rest = rest - cheb_poly_T(d) * lc;
  }
  ChebyshevForm f(n);
  f.add_constant(raw[0]);
  for (size_t i = 1; i < raw.size(); ++i) f.add_T(static_cast<long>(i), raw[i]);
  return f;
}

std::string ChebyshevForm::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0) os << "-";
    mpz_class a = abs(c_[i]);
    if (i == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "T" << i;
    }
    first = false;
  }
  return os.str();
}

void mul_mod_accumulate(ChebyshevForm& acc, const ChebyshevForm& f, const ChebyshevForm& g) {
  if (f.n_ != g.n_ || acc.n_ != f.n_) throw Error(ErrorCode::AmbientMismatch, "forms over different rings");
  const long n = f.n_;
  // iterate over the sparser operand in the outer loop
  const ChebyshevForm& s = f.nonzero_count() <= g.nonzero_count() ? f : g;
  const ChebyshevForm& d = &s == &f ? g : f;
  if (s.c_.empty() || d.c_.empty()) return;
  std::vector<mpz_class>& out = acc.c_;
  if (static_cast<long>(out.size()) < n) out.resize(n);
  auto add_folded = [&](long m, const mpz_class& x, const mpz_class& y) {
    // out += x*y*T_m, m in [0, 2n); T_{n+i} == -T_i
    int sign = 1;
    long idx = m;
    if (m >= n) {
      sign = -1;
      idx = m - n;
    }
    if (idx == 0) {
      // T_0 = 2
      if (sign > 0) {
        mpz_addmul(out[0].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        mpz_addmul(out[0].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      } else {
        mpz_submul(out[0].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        mpz_submul(out[0].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      }
      return;
    }
    if (sign > 0) {
      mpz_addmul(out[idx].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    } else {
      mpz_submul(out[idx].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    }
  };
  for (size_t ii = 0; ii < s.c_.size(); ++ii) {
    const mpz_class& x = s.c_[ii];
    if (x == 0) continue;
    long i = static_cast<long>(ii);
    for (size_t jj = 0; jj < d.c_.size(); ++jj) {
      const mpz_class& y = d.c_[jj];
      if (y == 0) continue;
      long j = static_cast<long>(jj);
      if (i == 0 || j == 0) {
        // a plain constant times T_k is just T_k
        long k = i + j;
        mpz_addmul(out[k].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        continue;
      }
      add_folded(i + j, x, y);
      add_folded(i > j ? i - j : j - i, x, y);
    }
  }
  acc.trim();
}

ChebyshevForm mul_mod(const ChebyshevForm& f, const ChebyshevForm& g) {
  ChebyshevForm r(f.n());
  mul_mod_accumulate(r, f, g);
  return r;
}

// ------------------------------------------------------ minimal polynomial

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

namespace {

int mobius(long n) {
  int m = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  if (n > 1) m = -m;
  return m;
}

}  // namespace

MonomialPoly cyclotomic_poly(long N) {
  if (N < 1) throw Error(ErrorCode::BadArgs, "cyclotomic_poly: N must be positive");
  if (N == 1) return MonomialPoly({mpq_class(-1), mpq_class(1)});
  // Phi_N = prod_{d | N} (1 - z^d)^{mu(N/d)} as a power series cut at phi(N)
  const long deg = euler_phi(N);
  std::vector<mpz_class> c(deg + 1);
  c[0] = 1;
  std::vector<long> divs;
  for (long d = 1; d <= N; ++d) {
    if (N % d == 0) divs.push_back(d);
  }
  for (long d : divs) {
    if (mobius(N / d) != 1) continue;
    for (long k = deg; k >= d; --k) c[k] -= c[k - d];
  }
  for (long d : divs) {
    if (mobius(N / d) != -1) continue;
    for (long k = d; k <= deg; ++k) c[k] += c[k - d];
  }
  std::vector<mpq_class> q(c.begin(), c.end());
  return MonomialPoly(std::move(q));
}

namespace {

struct MinPolyCache {
  std::mutex mutex;
  std::map<long, std::shared_ptr<const ChebyshevForm>> table;
};

MinPolyCache& minpoly_cache() {
  static MinPolyCache cache;
  return cache;
}

ChebyshevForm build_minimal_poly(long n) {
  if (n == 1) return ChebyshevForm(1, {mpz_class(2), mpz_class(1)});
  MonomialPoly phi = cyclotomic_poly(2 * n);
  long m = phi.degree() / 2;
  ChebyshevForm f(n);
  // assigned directly: deg M_n <= n/2 needs no folding
  std::vector<mpz_class> raw(m + 1);
  for (long k = 0; k <= m; ++k) raw[k] = phi.coeffs()[m + k].get_num();
  return ChebyshevForm(n, std::move(raw));
}

}  // namespace

const ChebyshevForm& minimal_poly(long n) {
  if (n < 1) throw Error(ErrorCode::BadArgs, "minimal_poly: n must be positive");
  auto& cache = minpoly_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.table.find(n);
    if (it != cache.table.end()) return *it->second;
  }
  auto built = std::make_shared<const ChebyshevForm>(build_minimal_poly(n));
  std::lock_guard<std::mutex> lock(cache.mutex);
  auto [it, inserted] = cache.table.emplace(n, std::move(built));
  return *it->second;
}

ChebyshevForm reduce_canonical(const ChebyshevForm& f) {
  const long n = f.n();
  const ChebyshevForm& M = minimal_poly(n);
  const long m = M.degree();
  std::vector<mpz_class> r = f.coeffs();
  const auto& mu = M.coeffs();
  if (n == 1) {
    // every T_k folds to a constant already
    return ChebyshevForm::constant(1, f.const_term());
  }
  for (long d = static_cast<long>(r.size()) - 1; d >= m; --d) {
    if (r[d] == 0) continue;
    mpz_class q = r[d];
    if (d == m) {
      for (long l = 0; l <= m; ++l) mpz_submul(r[l].get_mpz_t(), q.get_mpz_t(), mu[l].get_mpz_t());
      continue;
    }
    // subtract q * T_e * M_n, e = d - m >= 1
    long e = d - m;
    mpz_submul(r[e].get_mpz_t(), q.get_mpz_t(), mu[0].get_mpz_t());
    for (long l = 1; l <= m; ++l) {
      if (mu[l] == 0) continue;
      mpz_submul(r[e + l].get_mpz_t(), q.get_mpz_t(), mu[l].get_mpz_t());
      long diff = e > l ? e - l : l - e;
      if (diff == 0) {
        mpz_class t = 2 * q;
        mpz_submul(r[0].get_mpz_t(), t.get_mpz_t(), mu[l].get_mpz_t());
      } else {
        mpz_submul(r[diff].get_mpz_t(), q.get_mpz_t(), mu[l].get_mpz_t());
      }
    }
  }
  if (static_cast<long>(r.size()) > m) r.resize(m);
  return ChebyshevForm(n, std::move(r));
}

// ------------------------------------------------------------ evaluation

DyadicInterval eval_at_cyclotomic(const ChebyshevForm& f, std::int64_t ell) {
  const auto& c = f.coeffs();
  if (f.is_constant()) return DyadicInterval(Dyadic::from_mpz(f.const_term()));
  std::int64_t extra = static_cast<std::int64_t>(mpz_sizeinbase(f.norm_T().get_mpz_t(), 2)) + 2;
  for (;;) {
    std::int64_t p = ell + extra;
    DyadicInterval acc(Dyadic::from_mpz(c[0]));
    for (size_t i = 1; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      acc += cos_pi_frac_interval(static_cast<long>(i), f.n(), p) *
             DyadicInterval(Dyadic::from_mpz(c[i]));
    }
    if (acc.width_at_most(ell)) return acc;
    extra += 16;
  }
}

int sign_at_cyclotomic(const ChebyshevForm& f) {
  if (f.is_zero()) return 0;
  if (f.is_constant()) return sgn(f.const_term());
  const long m = minimal_poly(f.n()).degree();
  const std::int64_t normbits = static_cast<std::int64_t>(mpz_sizeinbase(f.norm_T().get_mpz_t(), 2));
  // |f(2cos pi/n)| >= ||f||_T^(1 - deg M_n) unless it is zero
  const std::int64_t zero_bits = (m - 1) * normbits + 1;
  for (std::int64_t p = 64;; p *= 2) {
    std::int64_t q = std::min(p, zero_bits);
    DyadicInterval v = eval_at_cyclotomic(f, q);
    if (auto s = v.sign(); s && *s != 0) return *s;
    if (q >= zero_bits) return 0;
  }
}

}  // namespace chebknot
