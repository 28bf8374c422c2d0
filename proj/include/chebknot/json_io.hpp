#pragma once

// JSON encodings.  Big integers are decimal strings; dyadics are
// {"mantissa": "<decimal>", "exponent": e}.

#include <string>

#include "chebknot/diagram.hpp"
#include "chebknot/discriminant.hpp"
#include "chebknot/numerics.hpp"
#include "chebknot/roots.hpp"
#include "json.hpp"

namespace chebknot {

using Json = nlohmann::json;

Json to_json(const Dyadic& x);
Dyadic dyadic_from_json(const Json& j);

Json to_json(const DyadicInterval& x);
DyadicInterval interval_from_json(const Json& j);

/// Array of decimal coefficient strings, constant term first.
Json to_json(const IntPoly& p);
IntPoly intpoly_from_json(const Json& j);

Json to_json(const RootDatabase& db);
RootDatabase root_database_from_json(const Json& j);

Json to_json(const KnotDiagram& d);

Json error_json(const std::string& code, const std::string& message);

/// Roots loaded from cache_dir when present, otherwise computed and stored.
/// An empty cache_dir disables caching.
RootDatabase cached_roots(long a, long b, long c, IsolationMode mode, std::int64_t start_bits, unsigned threads,
                          const std::string& cache_dir);

}  // namespace chebknot
