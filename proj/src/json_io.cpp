#include "chebknot/json_io.hpp"

#include <filesystem>
#include <fstream>

#include "chebknot/error.hpp"

namespace chebknot {

namespace {

constexpr int kCacheVersion = 1;

mpz_class mpz_from(const Json& j) {
  mpz_class z;
  if (z.set_str(j.get<std::string>(), 10) != 0) throw Error(ErrorCode::BadArgs, "bad integer in JSON");
  return z;
}

}  // namespace

Json to_json(const Dyadic& x) { return {{"mantissa", x.mantissa().get_str()}, {"exponent", x.exponent()}}; }

Dyadic dyadic_from_json(const Json& j) {
  return Dyadic(mpz_from(j.at("mantissa")), j.at("exponent").get<std::int64_t>());
}

Json to_json(const DyadicInterval& x) { return {{"lo", to_json(x.lo())}, {"hi", to_json(x.hi())}}; }

DyadicInterval interval_from_json(const Json& j) {
  return DyadicInterval(dyadic_from_json(j.at("lo")), dyadic_from_json(j.at("hi")));
}

Json to_json(const IntPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.get_str());
  return a;
}

IntPoly intpoly_from_json(const Json& j) {
  std::vector<mpz_class> c;
  for (const auto& x : j) c.push_back(mpz_from(x));
  return IntPoly(std::move(c));
}

Json to_json(const RootDatabase& db) {
  Json clusters = Json::array();
  for (const RootCluster& c : db.clusters) {
    Json van = Json::array();
    for (const Vanishing& v : c.vanishing) {
      van.push_back({{"i", v.index.i}, {"j", v.index.j}, {"k", v.index.k}, {"multiplicity", v.multiplicity},
                     {"branch", v.branch}});
    }
    clusters.push_back({{"interval", to_json(c.interval)}, {"multiplicity", c.multiplicity}, {"vanishing", van}});
  }
  Json slices = Json::array();
  for (const auto& [ij, entries] : db.slices) {
    Json e = Json::array();
    for (const SliceEntry& s : entries) e.push_back({{"cluster", s.cluster}, {"multiplicity", s.multiplicity}});
    slices.push_back({{"i", ij.first}, {"j", ij.second}, {"roots", e}});
  }
  return {{"a", db.a}, {"b", db.b}, {"c", db.c}, {"clusters", clusters}, {"slices", slices}};
}

RootDatabase root_database_from_json(const Json& j) {
  RootDatabase db;
  db.a = j.at("a").get<long>();
  db.b = j.at("b").get<long>();
  db.c = j.at("c").get<long>();
  for (const Json& c : j.at("clusters")) {
    RootCluster cl;
    cl.interval = interval_from_json(c.at("interval"));
    cl.multiplicity = c.at("multiplicity").get<int>();
    for (const Json& v : c.at("vanishing")) {
      FactorIndex idx{db.a, db.b, db.c, v.at("i").get<long>(), v.at("j").get<long>(), v.at("k").get<long>()};
      cl.vanishing.push_back({idx, v.at("multiplicity").get<int>(), v.at("branch").get<int>()});
    }
    db.clusters.push_back(std::move(cl));
  }
  for (const Json& s : j.at("slices")) {
    auto& entries = db.slices[{s.at("i").get<long>(), s.at("j").get<long>()}];
    for (const Json& e : s.at("roots")) entries.push_back({e.at("cluster").get<std::size_t>(), e.at("multiplicity").get<int>()});
  }
  return db;
}

Json to_json(const KnotDiagram& d) {
  Json phi = {{"num", d.phi.get_num().get_str()}, {"den", d.phi.get_den().get_str()}};
  if (d.gap_index) phi["gap_index"] = *d.gap_index;
  Json crossings = Json::array();
  for (const Crossing& c : d.crossings) {
    crossings.push_back({{"i", c.i}, {"j", c.j}, {"parity", c.parity}, {"qc_sign", c.qc_sign}, {"sign", c.sign}});
  }
  Json gauss = Json::array();
  for (const GaussEntry& g : d.gauss) {
    gauss.push_back({{"crossing", g.crossing}, {"strand", g.strand == Strand::over ? "over" : "under"}, {"sign", g.sign}});
  }
  return {{"a", d.a}, {"b", d.b}, {"c", d.c}, {"phi", phi}, {"crossings", crossings}, {"gauss", gauss}};
}

Json error_json(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

RootDatabase cached_roots(long a, long b, long c, IsolationMode mode, std::int64_t start_bits, unsigned threads,
                          const std::string& cache_dir) {
  if (cache_dir.empty()) return isolate_roots(a, b, c, mode, threads, start_bits);
  namespace fs = std::filesystem;
  std::string name = "roots_" + std::to_string(a) + "_" + std::to_string(b) + "_" + std::to_string(c) + "_" +
                     (mode == IsolationMode::certified ? "certified" : "adaptive" + std::to_string(start_bits)) +
                     "_v" + std::to_string(kCacheVersion) + ".json";
  fs::path path = fs::path(cache_dir) / name;
  if (fs::exists(path)) {
    std::ifstream in(path);
    try {
      return root_database_from_json(Json::parse(in));
    } catch (const std::exception&) {
      // unreadable entry: recompute and overwrite
    }
  }
  RootDatabase db = isolate_roots(a, b, c, mode, threads, start_bits);
  fs::create_directories(cache_dir);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << to_json(db).dump() << '\n';
  }
  fs::rename(tmp, path);
  return db;
}

}  // namespace chebknot
