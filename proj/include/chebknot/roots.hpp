#pragma once

// Real roots of R_{a,b,c} with multiplicities, found factor by factor.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "chebknot/factors.hpp"
#include "chebknot/numerics.hpp"

namespace chebknot {

/// One factor vanishing on a cluster.
struct Vanishing {
  FactorIndex index;
  int multiplicity = 1;  // 2 only for a double root
  int branch = 0;        // as in FactorRoot
  bool operator==(const Vanishing&) const = default;
};

struct RootCluster {
  DyadicInterval interval;
  int multiplicity = 0;
  std::vector<Vanishing> vanishing;
  /// The root is known exactly and interval is that point.
  bool exact() const { return interval.is_point(); }
  bool operator==(const RootCluster&) const = default;
};

/// Cluster index and the multiplicity contributed by that (i, j).
struct SliceEntry {
  std::size_t cluster;
  int multiplicity;
  bool operator==(const SliceEntry&) const = default;
};

struct RootDatabase {
  long a = 0, b = 0, c = 0;
  std::vector<RootCluster> clusters;
  /// Keyed by crossing (i, j); entries ascending by cluster.
  std::map<std::pair<long, long>, std::vector<SliceEntry>> slices;

  long n() const { return a * b * c; }
  int total_multiplicity() const;
  const std::vector<SliceEntry>& slice(long i, long j) const;
  bool operator==(const RootDatabase&) const = default;
};

enum class IsolationMode { adaptive, certified };

/// Every real root of R_{a,b,c}.  Certified mode brings each factor root to
/// width 2^(-8n-2) and merges overlapping intervals; adaptive mode starts at
/// start_bits and decides coincidences exactly, refining only where roots are close.
RootDatabase isolate_roots(long a, long b, long c, IsolationMode mode = IsolationMode::adaptive,
                           unsigned threads = 1, std::int64_t start_bits = 64);

struct PhiLocation {
  bool on_root = false;
  /// Number of clusters strictly below phi.
  std::size_t interval_index = 0;
  bool operator==(const PhiLocation&) const = default;
};

/// Exact position of u/v (v > 0) among the clusters.
PhiLocation locate_phi(const RootDatabase& db, const mpz_class& u, const mpz_class& v);

/// Lower bound on the smallest gap between consecutive clusters; throws
/// EmptyAudit with fewer than two clusters.
Dyadic separation_audit(const RootDatabase& db);

}  // namespace chebknot
