#include "chebknot/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "chebknot/curves.hpp"
#include "chebknot/error.hpp"
#include "chebknot/parallel.hpp"

namespace chebknot {

int crossing_parity(long a, long b, long i, long j) {
  long e = i + j + (i * b) / a + (j * a) / b;
  return e % 2 == 0 ? 1 : -1;
}

namespace {

// m pi/ab reduced into [0, pi], in units of pi/ab; the parameter 2cos of it
// decreases as this grows.
long reduced_angle(long m, long ab) {
  m %= 2 * ab;
  if (m < 0) m += 2 * ab;
  return m > ab ? 2 * ab - m : m;
}

struct Visit {
  std::size_t crossing;
  long angle;
  bool larger;  // the s visit
};

}  // namespace

std::vector<GaussEntry> gauss_code(const KnotDiagram& d) {
  const long ab = d.a * d.b;
  std::vector<Visit> visits;
  for (std::size_t x = 0; x < d.crossings.size(); ++x) {
    const Crossing& cr = d.crossings[x];
    long at = reduced_angle(cr.j * d.a + cr.i * d.b, ab);
    long as = reduced_angle(cr.j * d.a - cr.i * d.b, ab);
    if (at <= as) throw Error(ErrorCode::InternalInconsistency, "crossing parameters out of order");
    visits.push_back({x, at, false});
    visits.push_back({x, as, true});
  }
  std::sort(visits.begin(), visits.end(), [](const Visit& u, const Visit& v) { return u.angle > v.angle; });
  for (std::size_t x = 1; x < visits.size(); ++x) {
    if (visits[x].angle == visits[x - 1].angle) {
      throw Error(ErrorCode::InternalInconsistency, "two crossings share a parameter");
    }
  }
  std::vector<GaussEntry> out;
  for (const Visit& v : visits) {
    const Crossing& cr = d.crossings[v.crossing];
    bool over = v.larger == (cr.qc_sign > 0);
    out.push_back({v.crossing, over ? Strand::over : Strand::under, cr.sign});
  }
  return out;
}

KnotTest is_knot(const RootDatabase& db, const mpz_class& u, const mpz_class& v) {
  PhiLocation loc = locate_phi(db, u, v);
  return {!loc.on_root, loc.interval_index};
}

KnotTest is_knot(long a, long b, long c, const mpz_class& u, const mpz_class& v) {
  return is_knot(isolate_roots(a, b, c), u, v);
}

KnotDiagram compute_diagram(const RootDatabase& db, const mpz_class& u, const mpz_class& v) {
  PhiLocation loc = locate_phi(db, u, v);
  if (loc.on_root) throw Error(ErrorCode::SingularCurve, "phi is a root of the discriminant");
  KnotDiagram d;
  d.a = db.a;
  d.b = db.b;
  d.c = db.c;
  d.phi = mpq_class(u, v);
  d.phi.canonicalize();
  for (const DoublePoint& p : double_points(db.a, db.b, 64)) {
    Crossing cr;
    cr.i = p.i;
    cr.j = p.j;
    cr.parity = crossing_parity(db.a, db.b, p.i, p.j);
    int above = 0;
    for (const SliceEntry& e : db.slice(p.i, p.j))
      if (e.cluster >= loc.interval_index) above += e.multiplicity;
    cr.qc_sign = above % 2 == 0 ? 1 : -1;
    cr.sign = cr.parity * cr.qc_sign;
    cr.t_param = p.t_param;
    cr.s_param = p.s_param;
    d.crossings.push_back(std::move(cr));
  }
  d.gauss = gauss_code(d);
  return d;
}

KnotDiagram compute_diagram(long a, long b, long c, const mpz_class& u, const mpz_class& v) {
  return compute_diagram(isolate_roots(a, b, c), u, v);
}

Dyadic simplest_dyadic_between(const Dyadic& lo, const Dyadic& hi) {
  if (!(lo < hi)) throw Error(ErrorCode::BadArgs, "empty interval");
  if (lo.sign() < 0 && hi.sign() > 0) return Dyadic(0);
  for (std::int64_t e = 0;; ++e) {
    // the candidate closest to zero on this grid
    Dyadic x = lo.sign() >= 0 ? Dyadic(lo.mul_pow2(e).floor() + 1, -e) : Dyadic(hi.mul_pow2(e).ceil() - 1, -e);
    if (lo < x && x < hi) return x;
  }
}

std::vector<KnotDiagram> enumerate_diagrams(const RootDatabase& db, unsigned threads) {
  const std::size_t s = db.clusters.size();
  std::vector<KnotDiagram> out(s + 1);
  parallel_for(s + 1, threads, [&](std::size_t k) {
    Dyadic lo = k == 0 ? Dyadic(-4) : db.clusters[k - 1].interval.hi();
    Dyadic hi = k == s ? Dyadic(4) : db.clusters[k].interval.lo();
    mpq_class r = simplest_dyadic_between(lo, hi).to_mpq();
    KnotDiagram d = compute_diagram(db, r.get_num(), r.get_den());
    if (locate_phi(db, r.get_num(), r.get_den()).interval_index != k) {
      throw Error(ErrorCode::InternalInconsistency, "representative outside its gap");
    }
    d.gap_index = k;
    out[k] = std::move(d);
  });
  return out;
}

std::vector<KnotDiagram> enumerate_diagrams(long a, long b, long c, unsigned threads) {
  return enumerate_diagrams(isolate_roots(a, b, c, IsolationMode::adaptive, threads), threads);
}

std::string render_svg(const KnotDiagram& d, int size) {
  const double pi = std::numbers::pi;
  const double margin = 16, scale = (size - 2 * margin) / 4.0;
  auto X = [&](double x) { return margin + (x + 2) * scale; };
  auto Y = [&](double y) { return margin + (2 - y) * scale; };
  std::vector<double> under;
  const long ab = d.a * d.b;
  for (const Crossing& cr : d.crossings) {
    long m = cr.qc_sign > 0 ? cr.j * d.a + cr.i * d.b : cr.j * d.a - cr.i * d.b;
    under.push_back(pi * static_cast<double>(reduced_angle(m, ab)) / static_cast<double>(ab));
  }
  const double gap = 0.12 / std::hypot(static_cast<double>(d.a), static_cast<double>(d.b));
  const int samples = 400 * static_cast<int>(std::max(d.a, d.b));
  std::ostringstream os;
  char buf[128];
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  os << "<title>C(" << d.a << ',' << d.b << ',' << d.c << ',' << d.phi.get_str() << ")</title>\n";
  std::snprintf(buf, sizeof buf, "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\"", margin, margin,
                4 * scale, 4 * scale);
  os << buf << " fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  bool open = false;
  for (int k = 0; k <= samples; ++k) {
    double th = pi * (samples - k) / samples;  // increasing parameter 2cos(th)
    bool hidden = std::any_of(under.begin(), under.end(), [&](double u) { return std::fabs(th - u) < gap; });
    if (hidden) {
      if (open) os << "\"/>\n";
      open = false;
      continue;
    }
    if (!open) os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
    std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", open ? " " : "", X(2 * std::cos(d.a * th)), Y(2 * std::cos(d.b * th)));
    os << buf;
    open = true;
  }
  if (open) os << "\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace chebknot
