// chebknot: discriminants, roots and diagrams of Chebyshev curves.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "chebknot/diagram.hpp"
#include "chebknot/discriminant.hpp"
#include "chebknot/error.hpp"
#include "chebknot/json_io.hpp"
#include "chebknot/oracle.hpp"
#include "chebknot/roots.hpp"

using namespace chebknot;

namespace {

struct Options {
  long a = 0, b = 0, c = 0;
  std::string phi;
  std::string mode = "adaptive";
  std::int64_t precision = 64;
  std::string cache_dir;
  std::string format = "json";
  std::string method = "exact";
  unsigned threads = 1;
  std::string output;
};

mpq_class parse_phi(const std::string& s) {
  if (s.empty()) throw Error(ErrorCode::BadArgs, "--phi is required");
  mpq_class q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw Error(ErrorCode::BadArgs, "bad rational: " + s);
  if (q.get_den() < 0) throw Error(ErrorCode::BadArgs, "denominator must be positive: " + s);
  mpq_class r = q;
  r.canonicalize();
  if (r.get_num() != q.get_num() || r.get_den() != q.get_den()) {
    throw Error(ErrorCode::BadArgs, "rational not in lowest terms: " + s);
  }
  return q;
}

IsolationMode parse_mode(const std::string& m) {
  return m == "certified" ? IsolationMode::certified : IsolationMode::adaptive;
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadArgs, "cannot write " + o.output);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

RootDatabase roots_for(const Options& o) {
  return cached_roots(o.a, o.b, o.c, parse_mode(o.mode), o.precision, o.threads, o.cache_dir);
}

std::string diagram_text(const KnotDiagram& d) {
  std::ostringstream os;
  os << "C(" << d.a << ',' << d.b << ',' << d.c << ',' << d.phi.get_str() << ')';
  if (d.gap_index) os << " gap " << *d.gap_index;
  os << "\n";
  for (const Crossing& c : d.crossings) {
    os << "  (" << c.i << ',' << c.j << ") parity " << c.parity << " qc " << c.qc_sign << " sign " << c.sign << "\n";
  }
  os << "  gauss";
  for (const GaussEntry& g : d.gauss) {
    os << ' ' << g.crossing << (g.strand == Strand::over ? 'O' : 'U') << (g.sign > 0 ? '+' : '-');
  }
  os << "\n";
  return os.str();
}

void cmd_discriminant(const Options& o) {
  IntPoly R = o.method == "numeric" ? compute_R_numeric(o.a, o.b, o.c) : compute_R_exact(o.a, o.b, o.c);
  if (o.format == "text") {
    emit(o, R.to_text() + "\n");
    return;
  }
  emit(o, dump({{"a", o.a}, {"b", o.b}, {"c", o.c}, {"degree", R.degree()}, {"coefficients", to_json(R)}}));
}

void cmd_roots(const Options& o) {
  RootDatabase db = roots_for(o);
  if (o.format == "text") {
    std::ostringstream os;
    for (const RootCluster& c : db.clusters) {
      os << c.interval.midpoint().to_decimal(20) << " mult " << c.multiplicity << (c.exact() ? " exact" : "") << "\n";
    }
    emit(o, os.str());
    return;
  }
  emit(o, dump(to_json(db)));
}

void cmd_isknot(const Options& o) {
  mpq_class phi = parse_phi(o.phi);
  KnotTest t = is_knot(roots_for(o), phi.get_num(), phi.get_den());
  if (o.format == "text") {
    emit(o, std::string(t.knot ? "knot" : "singular") + " " + std::to_string(t.interval_index) + "\n");
    return;
  }
  emit(o, dump({{"knot", t.knot}, {"interval_index", t.interval_index}}));
}

void cmd_diagram(const Options& o, bool svg) {
  mpq_class phi = parse_phi(o.phi);
  KnotDiagram d = compute_diagram(roots_for(o), phi.get_num(), phi.get_den());
  if (svg || o.format == "svg") {
    emit(o, render_svg(d));
  } else if (o.format == "text") {
    emit(o, diagram_text(d));
  } else {
    emit(o, dump(to_json(d)));
  }
}

void cmd_enumerate(const Options& o) {
  auto ds = enumerate_diagrams(roots_for(o), o.threads);
  if (o.format == "text") {
    std::string s;
    for (const auto& d : ds) s += diagram_text(d);
    emit(o, s);
    return;
  }
  Json arr = Json::array();
  for (const auto& d : ds) arr.push_back(to_json(d));
  emit(o, dump(arr));
}

struct Check {
  std::string name, status, detail;
};

int cmd_verify(const Options& o) {
  std::vector<Check> checks;
  auto run = [&](const std::string& name, auto&& fn) {
    Check c{name, "pass", ""};
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.status = "fail";
      c.detail = e.what();
    }
    checks.push_back(std::move(c));
  };
  IntPoly R = compute_R_exact(o.a, o.b, o.c);
  run("exact_vs_numeric", [&](Check& c) {
    if (!(compute_R_numeric(o.a, o.b, o.c) == R)) c.status = "fail";
  });
  run("structure", [&](Check& c) {
    NormReport rep = norm_and_degree_report(R, o.a, o.b, o.c);
    if (!rep.bound_ok) c.status = "fail";
    c.detail = "degree " + std::to_string(rep.degree);
  });
  run("resultant", [&](Check& c) {
    if (discriminant_degree(o.a, o.b, o.c) > 30) {
      c.status = "skip";
      c.detail = "instance too large";
      return;
    }
    IntPoly sq = R * R, res = resultant_R_squared(o.a, o.b, o.c);
    if (!(res == sq) && !(res == -sq)) c.status = "fail";
  });
  RootDatabase db = roots_for(o);
  run("root_brackets", [&](Check& c) {
    for (const RootCluster& cl : db.clusters)
      if (!R.eval(cl.interval).contains_zero()) c.status = "fail";
    c.detail = std::to_string(db.clusters.size()) + " clusters";
  });
  run("factor_signs", [&](Check& c) {
    long n = 0;
    for (const KnotDiagram& d : enumerate_diagrams(db, o.threads)) {
      if (R.eval(d.phi) == 0) c.status = "fail";
      for (const Crossing& cr : d.crossings) {
        ++n;
        if (cr.qc_sign != direct_Qc_sign(d.a, d.b, d.c, cr.i, cr.j, d.phi.get_num(), d.phi.get_den())) {
          c.status = "fail";
        }
      }
    }
    c.detail = std::to_string(n) + " crossings";
  });
  bool ok = std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == "fail"; });
  if (o.format == "text") {
    std::string s;
    for (const Check& c : checks) s += (c.status == "pass" ? "PASS " : c.status == "skip" ? "SKIP " : "FAIL ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")") + "\n";
    emit(o, s);
  } else {
    Json arr = Json::array();
    for (const Check& c : checks) arr.push_back({{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
    emit(o, dump({{"a", o.a}, {"b", o.b}, {"c", o.c}, {"checks", arr}, {"pass", ok}}));
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discriminants, roots and knot diagrams of Chebyshev curves"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s) {
    s->add_option("a", o.a, "odd x-degree")->required();
    s->add_option("b", o.b, "y-degree, coprime to a")->required();
    s->add_option("c", o.c, "z-degree")->required();
    s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text", "svg"}));
    s->add_option("-o,--output", o.output, "write to a file instead of stdout");
    s->add_option("--mode", o.mode, "root isolation mode")->check(CLI::IsMember({"adaptive", "certified"}));
    s->add_option("--precision", o.precision, "starting bits for adaptive isolation")->check(CLI::Range(8, 1 << 24));
    s->add_option("--cache-dir", o.cache_dir, "directory for cached root databases");
    s->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 256));
  };
  auto* disc = app.add_subcommand("discriminant", "expanded R_{a,b,c}");
  common(disc);
  disc->add_option("--method", o.method, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
  auto* roots = app.add_subcommand("roots", "real roots of R_{a,b,c} with multiplicities");
  common(roots);
  auto* diag = app.add_subcommand("diagram", "diagram of C(a,b,c,phi)");
  common(diag);
  auto* en = app.add_subcommand("enumerate", "one diagram per root-free interval");
  common(en);
  auto* isk = app.add_subcommand("isknot", "whether C(a,b,c,phi) is nonsingular");
  common(isk);
  auto* ver = app.add_subcommand("verify", "cross-check the fast paths against the oracles");
  common(ver);
  auto* ren = app.add_subcommand("render", "SVG of the diagram of C(a,b,c,phi)");
  common(ren);
  for (auto* s : {diag, isk, ren}) s->add_option("--phi", o.phi, "rational u/v in lowest terms")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json("BadArgs", e.what()).dump() << "\n";
    return 2;
  }
  try {
    check_abc(o.a, o.b, o.c);
    if (*disc) cmd_discriminant(o);
    if (*roots) cmd_roots(o);
    if (*diag) cmd_diagram(o, false);
    if (*en) cmd_enumerate(o);
    if (*isk) cmd_isknot(o);
    if (*ren) cmd_diagram(o, true);
    if (*ver) return cmd_verify(o);
  } catch (const Error& e) {
    std::cerr << error_json(std::string(to_string(e.code())), e.what()).dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << error_json("InternalInconsistency", e.what()).dump() << "\n";
    return 3;
  }
  return 0;
}
