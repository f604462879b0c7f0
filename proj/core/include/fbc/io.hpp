#pragma once

#include <string>

#include "json.hpp"

#include "fbc/coxeter.hpp"
#include "fbc/fingerprint.hpp"

namespace fbc {

using Json = nlohmann::json;

/// Parses a file; InputError naming the path on failure.
Json read_json_file(const std::string& path);

Rational rational_from_json(const Json& j, const std::string& where);
Json to_json(const Rational& q);

Json to_json(const QPoly& p);
template <unsigned P>
Json to_json(const Laurent<GF<P>>& p) {
  Json c = Json::object();
  for (const auto& [e, v] : p.terms()) c[std::to_string(e)] = std::to_string(v.v) + "/1";
  return Json{{"field", "Fp"}, {"p", P}, {"coeffs", c}};
}
QPoly qpoly_from_json(const Json& j, const std::string& where = "polynomial");

NielsenWord nielsen_from_json(const Json& j, const std::string& where = "nielsen");
Json to_json(const NielsenWord& w);
/// Accepts "images", "nielsen" or both (which must agree).
FreeEndo endo_from_json(const Json& j, const std::string& where = "monodromy");
Json to_json(const FreeEndo& e);

GraphMap graphmap_from_json(const Json& j, const std::string& where = "map");
Json to_json(const GraphMap& g);
CoxeterGraphMap coxeter_map_from_json(const Json& j, const std::string& where = "map");

/// Generator names a1..an and t.
FiniteQuotient quotient_from_json(const Json& j, int rank, const std::string& where = "quotient");
Representation rep_from_json(const Json& j, int rank, const std::string& where = "rep");

FingerprintInput fingerprint_input_from_json(const Json& j);
Json to_json(const Torsion& t);
Json to_json(const Fingerprint& f);
Json to_json(const Verdict& v);

Json traintrack_report(const GraphMap& g, int period, long double tol);
Json coxeter_report(const CoxeterGraphMap& g, long double tol);

} // namespace fbc
