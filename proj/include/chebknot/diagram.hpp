#pragma once

// Diagrams of the Chebyshev curves x = T_a(t), y = T_b(t), z = T_c(t + phi).

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "chebknot/numerics.hpp"
#include "chebknot/roots.hpp"

namespace chebknot {

struct Crossing {
  long i = 0, j = 0;
  int parity = 1;   // (-1)^(i + j + floor(ib/a) + floor(ja/b))
  int qc_sign = 1;  // sign of Q_c(s, t, phi)
  int sign = 1;     // parity * qc_sign
  DyadicInterval t_param, s_param;
  bool operator==(const Crossing&) const = default;
};

enum class Strand { over, under };

struct GaussEntry {
  std::size_t crossing;  // index into KnotDiagram::crossings
  Strand strand;
  int sign;
  bool operator==(const GaussEntry&) const = default;
};

struct KnotDiagram {
  long a = 0, b = 0, c = 0;
  mpq_class phi;
  std::optional<std::size_t> gap_index;  // set by enumerate_diagrams
  std::vector<Crossing> crossings;       // ordered by (i, j)
  std::vector<GaussEntry> gauss;
  bool operator==(const KnotDiagram&) const = default;
};

/// (-1)^(i + j + floor(ib/a) + floor(ja/b))
int crossing_parity(long a, long b, long i, long j);

struct KnotTest {
  bool knot = false;
  std::size_t interval_index = 0;
  bool operator==(const KnotTest&) const = default;
};

KnotTest is_knot(const RootDatabase& db, const mpz_class& u, const mpz_class& v);
KnotTest is_knot(long a, long b, long c, const mpz_class& u, const mpz_class& v);

/// Throws SingularCurve when u/v is a root of R_{a,b,c}.
KnotDiagram compute_diagram(const RootDatabase& db, const mpz_class& u, const mpz_class& v);
KnotDiagram compute_diagram(long a, long b, long c, const mpz_class& u, const mpz_class& v);

/// Shortest dyadic in the open interval (lo, hi).
Dyadic simplest_dyadic_between(const Dyadic& lo, const Dyadic& hi);

/// One diagram per root-free interval of (-4, 4), at the shortest dyadic inside it.
std::vector<KnotDiagram> enumerate_diagrams(const RootDatabase& db, unsigned threads = 1);
std::vector<KnotDiagram> enumerate_diagrams(long a, long b, long c, unsigned threads = 1);

/// Over/under visits ordered by increasing curve parameter; the visit at the
/// larger parameter s is over iff qc_sign = +1.
std::vector<GaussEntry> gauss_code(const KnotDiagram& d);

/// Plane projection with gaps in the under strands, as an SVG 1.1 document.
std::string render_svg(const KnotDiagram& d, int size = 480);

}  // namespace chebknot
