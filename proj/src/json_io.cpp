#include "mincrit/json_io.hpp"

#include <fstream>
#include <sstream>

namespace mincrit {

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Cyclotomic& c) {
  if (c.is_rational()) return to_string(c.rational_value());
  Json coeffs = Json::array();
  for (const auto& q : c.coeffs()) coeffs.push_back(to_string(q));
  return {{"conductor", c.conductor()}, {"coeffs", coeffs}};
}

Json to_json(const Complex& z) { return {{"re", decimal(z.re)}, {"im", decimal(z.im)}}; }

Json to_json(const Real& x) { return decimal(x); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  fail(ErrorKind::Parse, "expected a rational, got " + j.dump());
}

Cyclotomic scalar_from_json(const Json& j) {
  if (!j.is_object()) return Cyclotomic(rational_from_json(j));
  if (!j.contains("conductor") || !j.contains("coeffs") || !j["conductor"].is_number_unsigned() ||
      !j["coeffs"].is_array())
    fail(ErrorKind::Parse, "cyclotomic scalar needs conductor and coeffs");
  unsigned long n = j["conductor"].get<unsigned long>();
  if (n < 1) fail(ErrorKind::Parse, "conductor must be positive");
  std::vector<Rational> c;
  for (const auto& x : j["coeffs"]) c.push_back(rational_from_json(x));
  if (c.size() > euler_phi(n))
    fail(ErrorKind::Parse, "too many coefficients for conductor " + std::to_string(n));
  c.resize(euler_phi(n), Rational(0));
  return Cyclotomic(n, std::move(c));
}

Matrix<Cyclotomic> matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::Parse, "matrix must be a nonempty array of rows");
  std::vector<std::vector<Cyclotomic>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) fail(ErrorKind::Parse, "matrix row must be an array");
    std::vector<Cyclotomic> row;
    for (const auto& x : r) row.push_back(scalar_from_json(x));
    rows.push_back(std::move(row));
  }
  return Matrix<Cyclotomic>(rows);
}

Form<Cyclotomic> form_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::Parse, "form must be a nonempty list of terms");
  int nvars = -1;
  long degree = -1;
  std::vector<Form<Cyclotomic>::Term> terms;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("exps") || !t.contains("coeff") || !t["exps"].is_array())
      fail(ErrorKind::Parse, "form term needs exps and coeff");
    std::vector<unsigned> e;
    long deg = 0;
    for (const auto& x : t["exps"]) {
      if (!x.is_number_unsigned()) fail(ErrorKind::Parse, "exponents must be nonnegative integers");
      e.push_back(x.get<unsigned>());
      deg += e.back();
    }
    if (nvars < 0) nvars = static_cast<int>(e.size());
    if (degree < 0) degree = deg;
    if (static_cast<int>(e.size()) != nvars) fail(ErrorKind::Parse, "terms differ in variable count");
    if (deg != degree) fail(ErrorKind::Parse, "form is not homogeneous");
    if (nvars < 1 || nvars > kMaxVars) fail(ErrorKind::Parse, "forms take 1 to 4 variables");
    terms.emplace_back(mono_make(e), scalar_from_json(t["coeff"]));
  }
  return Form<Cyclotomic>(nvars, static_cast<unsigned>(degree), std::move(terms));
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

Json to_json(const PlaceTerm& t) {
  return {{"place", t.place.name()},
          {"value", to_json(t.value)},
          {"lower", to_json(t.lower)},
          {"upper", to_json(t.upper)}};
}

Json to_json(const GreensValue& g) {
  Json out{{"place", g.place.name()},
           {"value", to_json(g.value)},
           {"lower", to_json(g.lower)},
           {"upper", to_json(g.upper)},
           {"k", g.k}};
  if (g.exact) out["exact_over_log_p"] = to_string(*g.exact);
  return out;
}

Json to_json(const HeightReport& r) {
  Json places = Json::array();
  for (const auto& t : r.per_place) places.push_back(to_json(t));
  return {{"kind", to_string(r.kind)},
          {"total", to_json(r.total)},
          {"lower", to_json(r.lower)},
          {"upper", to_json(r.upper)},
          {"k", r.k},
          {"per_place", places}};
}

Json to_json(const LyapunovLocal& l) {
  Json parts = Json::array();
  for (const auto& g : l.parts) parts.push_back(to_json(g));
  return {{"place", l.place.name()},
          {"value", to_json(l.value)},
          {"lower", to_json(l.lower)},
          {"upper", to_json(l.upper)},
          {"k", l.k},
          {"parts", parts}};
}

Json to_json(const CriticalType& t) { return {{"k", t.k}, {"m", t.m}}; }

Json to_json(const Interval& i) { return {{"lower", to_json(i.lo)}, {"upper", to_json(i.hi)}}; }

Json to_json(const BoundCheck& c) {
  return {{"label", c.label},
          {"small", to_json(c.small)},
          {"large", to_json(c.large)},
          {"margin", to_json(c.margin)},
          {"verdict", to_string(c.verdict)}};
}

Json to_json(const BoundReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"which", to_string(r.which)},
          {"verdict", to_string(r.verdict)},
          {"min_margin", to_json(r.min_margin)},
          {"checks", checks}};
}

Json to_json(const BoundSuite& s) {
  Json samples = Json::array();
  for (const auto& x : s.samples)
    samples.push_back({{"input", x.description},
                       {"margin", to_json(x.report.min_margin)},
                       {"verdict", to_string(x.report.verdict)},
                       {"checks", to_json(x.report)["checks"]}});
  return {{"which", to_string(s.which)},
          {"N", s.N},
          {"d", s.d},
          {"verdict", to_string(s.verdict)},
          {"min_margin", to_json(s.min_margin)},
          {"samples", samples}};
}

Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace mincrit
