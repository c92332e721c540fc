#pragma once

// JSON encoding of scalars, matrices, forms and reports. Reals are written as
// decimal strings with 30 significant digits; key order is insertion order.

#include <json.hpp>
#include <string>

#include "mincrit/bounds.hpp"
#include "mincrit/dynamics.hpp"

namespace mincrit {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Json to_json(const Cyclotomic& c);
Json to_json(const Complex& z);
Json to_json(const Real& x);

template <class K>
Json to_json(const Matrix<K>& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.size(); ++j) row.push_back(to_json(a(i, j)));
    rows.push_back(row);
  }
  return rows;
}

template <class K>
Json to_json(const Form<K>& f) {
  Json out = Json::array();
  for (const auto& [m, c] : f.terms()) {
    Json e = Json::array();
    for (int i = 0; i < f.nvars(); ++i) e.push_back(mono_exp(m, i));
    out.push_back({{"exps", e}, {"coeff", to_json(c)}});
  }
  return out;
}

// Strings "p/q" or "p", integers, or {"conductor": n, "coeffs": [...]}.
Cyclotomic scalar_from_json(const Json& j);
Rational rational_from_json(const Json& j);
Matrix<Cyclotomic> matrix_from_json(const Json& j);
// All degrees must agree; the variable count is taken from "exps".
Form<Cyclotomic> form_from_json(const Json& j);

// Throws a Parse error with the parser's message.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

Json to_json(const PlaceTerm& t);
Json to_json(const GreensValue& g);
Json to_json(const HeightReport& r);
Json to_json(const LyapunovLocal& l);
Json to_json(const CriticalType& t);
Json to_json(const Interval& i);
Json to_json(const BoundCheck& c);
Json to_json(const BoundReport& r);
Json to_json(const BoundSuite& s);

template <class K>
Json to_json(const OrbitGraph<K>& g) {
  Json nodes = Json::array();
  for (const auto& f : g.nodes) nodes.push_back(to_json(f));
  Json out{{"closed", g.closed}, {"nodes", nodes}, {"next", g.next}, {"roots", g.roots}};
  if (g.closed) {
    out["tail"] = g.tail;
    out["period"] = g.period;
  } else {
    out["stop_reason"] = g.stop_reason;
  }
  return out;
}

// {"error": {"kind": ..., "message": ...}}
Json error_json(const std::string& kind, const std::string& message);

}  // namespace mincrit
