#include <cmath>
#include <tuple>

#include "chebknot/discriminant.hpp"
#include "chebknot/error.hpp"
#include "chebknot/roots.hpp"
#include "doctest.h"

using namespace chebknot;

namespace {

const std::vector<std::tuple<long, long, long>>& small_grid() {
  static const std::vector<std::tuple<long, long, long>> g{
      {3, 2, 5}, {3, 4, 5}, {3, 4, 6}, {3, 5, 4}, {3, 5, 7}, {3, 8, 10}, {5, 2, 6},
      {5, 4, 7}, {5, 6, 7}, {5, 6, 8}, {5, 8, 10}, {3, 4, 12}, {7, 4, 6}, {5, 3, 9}};
  return g;
}

int negative_discriminants(long a, long b, long c) {
  int t = 0;
  for (auto& x : all_factors(a, b, c))
    if (!x.is_linear() && !has_double_root(x) && discriminant_sign(x) < 0) ++t;
  return t;
}

}  // namespace

TEST_CASE("isolate_roots (3,4,5)") {
  RootDatabase db = isolate_roots(3, 4, 5);
  REQUIRE(db.clusters.size() == 6);
  const double expect[] = {-1.18000, -0.25540, -0.23430, 0.23430, 0.25540, 1.18000};
  for (int t = 0; t < 6; ++t) {
    CHECK(db.clusters[t].multiplicity == 1);
    CHECK(std::fabs(db.clusters[t].interval.midpoint().to_double() - expect[t]) < 1e-4);
    CHECK(db.clusters[t].interval.midpoint() == -db.clusters[5 - t].interval.midpoint());
  }
}

TEST_CASE("isolate_roots (3,4,6) has a multiple root at 0") {
  for (auto mode : {IsolationMode::adaptive, IsolationMode::certified}) {
    RootDatabase db = isolate_roots(3, 4, 6, mode);
    auto it = std::find_if(db.clusters.begin(), db.clusters.end(),
                           [](const RootCluster& c) { return c.interval.contains(Dyadic(0)); });
    REQUIRE(it != db.clusters.end());
    CHECK(it->exact());
    CHECK(it->multiplicity >= 3);
    bool lin = false, dbl = false;
    for (auto& v : it->vanishing) {
      lin |= v.index == FactorIndex{3, 4, 6, 1, 2, 3};
      dbl |= v.index == FactorIndex{3, 4, 6, 1, 2, 2} && v.multiplicity == 2;
    }
    CHECK(lin);
    CHECK(dbl);
  }
}

TEST_CASE("isolate_roots trivial instance") {
  RootDatabase db = isolate_roots(1, 4, 5);
  CHECK(db.clusters.empty());
  CHECK(db.slices.empty());
}

TEST_CASE("root clusters bracket the zeros of the expanded R") {
  for (auto [a, b, c] : small_grid()) {
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(c);
    IntPoly R = compute_R_exact(a, b, c);
    RootDatabase db = isolate_roots(a, b, c);
    const long N = discriminant_degree(a, b, c);
    CHECK(db.total_multiplicity() == N - 2 * negative_discriminants(a, b, c));
    for (std::size_t t = 0; t < db.clusters.size(); ++t) {
      const RootCluster& cl = db.clusters[t];
      CHECK(R.eval(cl.interval).contains_zero());
      CHECK(cl.interval.lo() > Dyadic(-4));
      CHECK(cl.interval.hi() < Dyadic(4));
      int m = 0;
      for (auto& v : cl.vanishing) m += v.multiplicity;
      CHECK(m == cl.multiplicity);
      // exact multiplicity of the zero of R at an exact root
      if (cl.exact()) CHECK(R.zero_multiplicity() == (cl.interval.lo().is_zero() ? cl.multiplicity : 0));
      if (t + 1 < db.clusters.size()) {
        const RootCluster& nx = db.clusters[t + 1];
        REQUIRE(cl.interval.hi() < nx.interval.lo());
        Dyadic mid = (cl.interval.hi() + nx.interval.lo()).mul_pow2(-1);
        CHECK(R.eval(mid.to_mpq()) != 0);
      }
    }
  }
}

TEST_CASE("adaptive and certified modes agree") {
  for (auto [a, b, c] : small_grid()) {
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(c);
    RootDatabase ad = isolate_roots(a, b, c, IsolationMode::adaptive);
    RootDatabase ce = isolate_roots(a, b, c, IsolationMode::certified);
    REQUIRE(ad.clusters.size() == ce.clusters.size());
    const std::int64_t w = 8 * a * b * c + 1;
    for (std::size_t t = 0; t < ad.clusters.size(); ++t) {
      CHECK(ad.clusters[t].multiplicity == ce.clusters[t].multiplicity);
      CHECK(ad.clusters[t].vanishing == ce.clusters[t].vanishing);
      CHECK(ad.clusters[t].interval.overlaps(ce.clusters[t].interval));
      CHECK(ce.clusters[t].interval.width_at_most(w));
    }
    CHECK(ad.slices == ce.slices);
  }
}

TEST_CASE("slices match the vanishing lists") {
  RootDatabase db = isolate_roots(5, 8, 10);
  CHECK(db.slices.size() == 2 * 7);
  int total = 0;
  for (auto& [ij, entries] : db.slices) {
    for (std::size_t t = 0; t < entries.size(); ++t) {
      if (t) CHECK(entries[t - 1].cluster < entries[t].cluster);
      int m = 0;
      for (auto& v : db.clusters[entries[t].cluster].vanishing)
        if (v.index.i == ij.first && v.index.j == ij.second) m += v.multiplicity;
      CHECK(m == entries[t].multiplicity);
      total += m;
    }
  }
  CHECK(total == db.total_multiplicity());
}

TEST_CASE("locate_phi examples") {
  RootDatabase d5 = isolate_roots(3, 4, 5);
  CHECK(locate_phi(d5, 0, 1) == PhiLocation{false, 3});
  CHECK(locate_phi(d5, 2, 1) == PhiLocation{false, 6});
  CHECK(locate_phi(d5, -2, 1) == PhiLocation{false, 0});
  CHECK(locate_phi(isolate_roots(3, 4, 6), 0, 1).on_root);
  CHECK_THROWS_AS(locate_phi(d5, 1, 0), Error);
}

TEST_CASE("locate_phi inside a cluster uses the exact side") {
  // Rationals straddling each root at distance 2^-80 fall in the cluster
  // interval at 64-bit isolation, so the exact path decides them.
  for (auto [a, b, c] : small_grid()) {
    RootDatabase db = isolate_roots(a, b, c);
    IntPoly R = compute_R_exact(a, b, c);
    for (std::size_t t = 0; t < db.clusters.size(); ++t) {
      const RootCluster& cl = db.clusters[t];
      if (cl.exact()) {
        mpq_class p = cl.interval.lo().to_mpq();
        CHECK(locate_phi(db, p.get_num(), p.get_den()) == PhiLocation{true, t});
        continue;
      }
      Dyadic m = cl.interval.midpoint();
      mpq_class q = m.to_mpq();
      PhiLocation loc = locate_phi(db, q.get_num(), q.get_den());
      CHECK(!loc.on_root);
      CHECK((loc.interval_index == t || loc.interval_index == t + 1));
      for (Dyadic probe : {cl.interval.lo(), cl.interval.hi()}) {
        mpq_class pq = probe.to_mpq();
        PhiLocation pl = locate_phi(db, pq.get_num(), pq.get_den());
        CHECK(pl.interval_index == (probe == cl.interval.lo() ? t : t + 1));
      }
      if (cl.multiplicity % 2 == 1) {
        // odd multiplicity: R changes sign at the root
        int s_lo = sgn(R.eval(cl.interval.lo().to_mpq())), s_m = sgn(R.eval(q));
        CHECK(loc.interval_index == (s_m == s_lo ? t : t + 1));
      }
    }
  }
}

TEST_CASE("separation_audit") {
  Dyadic g = separation_audit(isolate_roots(3, 4, 5));
  CHECK(std::fabs(g.to_double() - 0.0211) < 1e-3);
  Dyadic g7 = separation_audit(isolate_roots(3, 5, 7, IsolationMode::certified));
  CHECK(g7 >= Dyadic(1, -8 * 105));
  RootDatabase one;
  one.clusters.push_back({DyadicInterval(Dyadic(0)), 1, {}});
  CHECK_THROWS_AS(separation_audit(one), Error);
  try {
    separation_audit(one);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyAudit);
  }
}
