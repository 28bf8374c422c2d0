#include "chebknot/roots.hpp"

#include <algorithm>
#include <numeric>

#include "chebknot/error.hpp"
#include "chebknot/parallel.hpp"

namespace chebknot {

int RootDatabase::total_multiplicity() const {
  int t = 0;
  for (const auto& c : clusters) t += c.multiplicity;
  return t;
}

const std::vector<SliceEntry>& RootDatabase::slice(long i, long j) const {
  static const std::vector<SliceEntry> empty;
  auto it = slices.find({i, j});
  return it == slices.end() ? empty : it->second;
}

namespace {

struct Member {
  FactorIndex idx;
  int branch = 0;
  int mult = 1;
  DyadicInterval iv;
  std::int64_t ell = 0;
};

std::vector<Member> roots_of(const FactorIndex& x, std::int64_t ell) {
  std::vector<Member> out;
  for (const FactorRoot& r : factor_roots(x, ell)) out.push_back({x, r.branch, r.multiplicity, r.interval, ell});
  return out;
}

std::vector<Member> all_members(long a, long b, long c, std::int64_t ell, unsigned threads) {
  std::vector<FactorIndex> idx = all_factors(a, b, c);
  std::vector<std::vector<Member>> per(idx.size());
  parallel_for(idx.size(), threads, [&](std::size_t k) { per[k] = roots_of(idx[k], ell); });
  std::vector<Member> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end(), [](const Member& x, const Member& y) { return x.iv.lo() < y.iv.lo(); });
  return out;
}

void refine(Member& m, std::int64_t ell) {
  for (const FactorRoot& r : factor_roots(m.idx, ell)) {
    if (r.branch != m.branch) continue;
    // both enclose the same root
    m.iv = DyadicInterval(std::max(m.iv.lo(), r.interval.lo()), std::min(m.iv.hi(), r.interval.hi()));
    m.ell = ell;
    return;
  }
  throw Error(ErrorCode::InternalInconsistency, "factor root vanished on refinement: " + m.idx.to_string());
}

int sign_of(const ChebyshevForm& f) { return sign_at_cyclotomic(f); }

// Which root of the quadratic q is r = -g0/g1 (g1 = 2): sign of q'(r).
int branch_at_linear_root(const FactorPoly& q, const FactorPoly& lin) {
  // 2 q2 r + q1 with r = -g0/2
  int s = sign_of(q.f1 - mul_mod(q.f2, lin.f0));
  if (s == 0) throw Error(ErrorCode::InternalInconsistency, "shared root at a double root");
  return s;
}

// Two members are the same root of R, decided exactly.
bool same_root(const Member& x, const Member& y) {
  if (x.idx == y.idx) return x.branch == y.branch;
  if (x.iv.is_point() || y.iv.is_point()) {
    return x.iv.is_point() && y.iv.is_point() && x.iv.lo() == y.iv.lo();
  }
  ShareKind share = factors_share_root(x.idx, y.idx);
  if (share == ShareKind::no) return false;
  if (share == ShareKind::yes_equal_factors) return x.branch == y.branch;
  const bool lx = x.idx.is_linear(), ly = y.idx.is_linear();
  if (lx && ly) return true;
  FactorPoly p = build_factor(x.idx), q = build_factor(y.idx);
  if (lx) return y.branch == branch_at_linear_root(q, p);
  if (ly) return x.branch == branch_at_linear_root(p, q);
  // p2 q - q2 p = Y phi + X vanishes at the common root
  ChebyshevForm Y = mul_mod(p.f2, q.f1) - mul_mod(q.f2, p.f1);
  ChebyshevForm X = mul_mod(p.f2, q.f0) - mul_mod(q.f2, p.f0);
  int sy = sign_of(Y);
  if (sy == 0) return x.branch == y.branch;  // proportional
  // branch of phi* = -X/Y for a quadratic f: sign of 2 f2 phi* + f1 = (f1 Y - 2 f2 X) / Y
  auto branch = [&](const FactorPoly& f) {
    int s = sign_of(mul_mod(f.f1, Y) - mul_mod(f.f2, X) * mpz_class(2)) * sy;
    if (s == 0) throw Error(ErrorCode::InternalInconsistency, "shared root at a double root");
    return s;
  };
  return x.branch == branch(p) && y.branch == branch(q);
}

RootCluster make_cluster(const std::vector<const Member*>& ms) {
  RootCluster c;
  const Member* point = nullptr;
  c.interval = ms.front()->iv;
  for (const Member* m : ms) {
    c.interval = c.interval.hull(m->iv);
    c.multiplicity += m->mult;
    c.vanishing.push_back({m->idx, m->mult, m->branch});
    if (m->iv.is_point()) point = m;
  }
  if (point) {
    for (const Member* m : ms) {
      if (!m->iv.contains(point->iv.lo())) throw Error(ErrorCode::InternalInconsistency, "cluster misses its exact root");
    }
    c.interval = point->iv;
  }
  std::sort(c.vanishing.begin(), c.vanishing.end(),
            [](const Vanishing& u, const Vanishing& v) { return u.index < v.index; });
  return c;
}

// Consecutive runs of overlapping intervals.
std::vector<std::vector<Member>> overlap_groups(std::vector<Member> ms) {
  std::vector<std::vector<Member>> groups;
  Dyadic reach;
  for (Member& m : ms) {
    if (groups.empty() || m.iv.lo() > reach) {
      groups.emplace_back();
      reach = m.iv.hi();
    } else {
      reach = std::max(reach, m.iv.hi());
    }
    groups.back().push_back(std::move(m));
  }
  return groups;
}

std::vector<RootCluster> resolve_group(std::vector<Member>& g, std::int64_t cap) {
  const std::size_t m = g.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = x + 1; y < m; ++y)
      if (find(x) != find(y) && same_root(g[x], g[y])) parent[find(x)] = find(y);
  for (;;) {
    std::map<std::size_t, std::vector<const Member*>> classes;
    for (std::size_t x = 0; x < m; ++x) classes[find(x)].push_back(&g[x]);
    std::vector<std::pair<RootCluster, std::size_t>> cl;
    for (auto& [root, ms] : classes) cl.emplace_back(make_cluster(ms), root);
    std::sort(cl.begin(), cl.end(),
              [](const auto& u, const auto& v) { return u.first.interval.lo() < v.first.interval.lo(); });
    std::vector<bool> clash(cl.size(), false);
    bool any = false;
    for (std::size_t t = 0; t + 1 < cl.size(); ++t) {
      for (std::size_t s = t + 1; s < cl.size(); ++s) {
        if (cl[s].first.interval.lo() > cl[t].first.interval.hi()) break;
        clash[t] = clash[s] = true;
        any = true;
      }
    }
    if (!any) {
      std::vector<RootCluster> out;
      for (auto& [c, r] : cl) out.push_back(std::move(c));
      return out;
    }
    bool progressed = false;
    for (std::size_t t = 0; t < cl.size(); ++t) {
      if (!clash[t] || cl[t].first.exact()) continue;
      for (std::size_t x = 0; x < m; ++x) {
        if (find(x) != cl[t].second || g[x].iv.is_point() || g[x].ell >= cap) continue;
        refine(g[x], std::min(cap, 2 * g[x].ell));
        progressed = true;
      }
    }
    if (!progressed) throw Error(ErrorCode::InternalInconsistency, "distinct roots closer than the separation bound");
  }
}

std::vector<RootCluster> certified_clusters(long a, long b, long c, unsigned threads) {
  const std::int64_t ell = 8 * a * b * c + 2;
  std::vector<RootCluster> out;
  for (auto& g : overlap_groups(all_members(a, b, c, ell, threads))) {
    std::vector<const Member*> ms;
    for (auto& m : g) {
      for (const Member* o : ms) {
        if (o->idx == m.idx) throw Error(ErrorCode::InternalInconsistency, "two roots of one factor merged");
      }
      ms.push_back(&m);
    }
    out.push_back(make_cluster(ms));
  }
  return out;
}

std::vector<RootCluster> adaptive_clusters(long a, long b, long c, unsigned threads, std::int64_t start) {
  const std::int64_t cap = 8 * a * b * c + 2;
  std::vector<RootCluster> out;
  for (auto& g : overlap_groups(all_members(a, b, c, std::clamp<std::int64_t>(start, 8, cap), threads))) {
    if (g.size() == 1) {
      out.push_back(make_cluster({&g.front()}));
      continue;
    }
    for (auto& cl : resolve_group(g, cap)) out.push_back(std::move(cl));
  }
  return out;
}

}  // namespace

RootDatabase isolate_roots(long a, long b, long c, IsolationMode mode, unsigned threads,
                           std::int64_t start_bits) {
  check_abc(a, b, c);
  RootDatabase db;
  db.a = a;
  db.b = b;
  db.c = c;
  db.clusters = mode == IsolationMode::certified ? certified_clusters(a, b, c, threads)
                                                 : adaptive_clusters(a, b, c, threads, start_bits);
  for (long i = 1; 2 * i <= a - 1; ++i)
    for (long j = 1; j <= b - 1; ++j) db.slices[{i, j}];
  for (std::size_t ci = 0; ci < db.clusters.size(); ++ci) {
    for (const Vanishing& v : db.clusters[ci].vanishing) {
      auto& s = db.slices[{v.index.i, v.index.j}];
      if (!s.empty() && s.back().cluster == ci) {
        s.back().multiplicity += v.multiplicity;
      } else {
        s.push_back({ci, v.multiplicity});
      }
    }
  }
  return db;
}

PhiLocation locate_phi(const RootDatabase& db, const mpz_class& u, const mpz_class& v) {
  if (v <= 0) throw Error(ErrorCode::BadArgs, "denominator must be positive");
  mpq_class phi(u, v);
  phi.canonicalize();
  auto it = std::partition_point(db.clusters.begin(), db.clusters.end(),
                                 [&](const RootCluster& c) { return compare(c.interval.hi(), phi) < 0; });
  const std::size_t ci = static_cast<std::size_t>(it - db.clusters.begin());
  if (it == db.clusters.end() || compare(it->interval.lo(), phi) > 0) return {false, ci};
  if (it->exact()) return {true, ci};
  const Vanishing* pick = nullptr;
  for (const Vanishing& w : it->vanishing) {
    if (w.multiplicity != 1) continue;
    if (!pick || (w.index.is_linear() && !pick->index.is_linear())) pick = &w;
  }
  if (!pick) throw Error(ErrorCode::InternalInconsistency, "cluster without a simple factor root");
  int s = factor_sign_at_rational(pick->index, u, v);
  if (s == 0) return {true, ci};
  // inside the cluster the other root of the same factor is out of reach, so
  // the sign of P tells the side
  bool above = pick->branch >= 0 ? s > 0 : s < 0;
  return {false, ci + (above ? 1 : 0)};
}

Dyadic separation_audit(const RootDatabase& db) {
  if (db.clusters.size() < 2) throw Error(ErrorCode::EmptyAudit, "fewer than two clusters");
  Dyadic best = db.clusters[1].interval.lo() - db.clusters[0].interval.hi();
  for (std::size_t t = 1; t + 1 < db.clusters.size(); ++t) {
    best = std::min(best, db.clusters[t + 1].interval.lo() - db.clusters[t].interval.hi());
  }
  return best;
}

}  // namespace chebknot
