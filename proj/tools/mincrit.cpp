// mincrit: command-line front end. Every subcommand prints one JSON report.
//
// Exit codes: 0 ok, 1 malformed input, 2 precondition, 3 budget or
// inconclusive, 4 falsification.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mincrit/json_io.hpp"

using namespace mincrit;

namespace {

enum Exit { kOk = 0, kMalformed = 1, kPrecondition = 2, kInconclusive = 3, kFalsified = 4 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return kMalformed;
    case ErrorKind::Budget: return kInconclusive;
    default: return kPrecondition;
  }
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kOk;
    case Verdict::Inconclusive: return kInconclusive;
    case Verdict::Falsified: return kFalsified;
  }
  return kOk;
}

struct Options {
  std::string output;
  unsigned precision = 128;
  std::string matrix;
  std::string phi;
  std::string b;
  std::string place = "inf";
  std::string family;
  std::string sigma;
  std::string which;
  unsigned d = 0;
  int N = 0;
  int k = -1;
  long j = 1;
  int n = 0;
  int samples = 20;
  std::uint64_t seed = 0;
  std::size_t budget = 200;
  unsigned max_degree = 16;
};

// Inline JSON if it starts with '[', otherwise a file path.
Json load(const std::string& arg) {
  std::size_t i = arg.find_first_not_of(" \t\n");
  if (i != std::string::npos && arg[i] == '[') return parse_json(arg);
  return read_json_file(arg);
}

Matrix<Cyclotomic> load_matrix(const std::string& arg) {
  if (arg.empty()) fail(ErrorKind::Parse, "--matrix is required");
  return matrix_from_json(load(arg));
}

RatMatrix rational_only(const Matrix<Cyclotomic>& a) {
  auto q = rational_matrix(a);
  if (!q) fail(ErrorKind::UnsupportedDomain, "this command needs a rational matrix");
  return *q;
}

Form<Rational> rational_only(const Form<Cyclotomic>& f) {
  return f.map([](const Cyclotomic& c) {
    if (!c.is_rational()) fail(ErrorKind::UnsupportedDomain, "this command needs a rational form");
    return c.rational_value();
  });
}

Form<Cyclotomic> load_form(const std::string& arg, int nvars) {
  Form<Cyclotomic> f = arg.empty() ? Form<Cyclotomic>::variable(nvars, 0) : form_from_json(load(arg));
  if (f.nvars() != nvars) fail(ErrorKind::Parse, "form and matrix differ in dimension");
  return f;
}

std::vector<int> parse_sigma(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      fail(ErrorKind::Parse, "malformed permutation '" + s + "'");
    }
  }
  return out;
}

void require_d(const Options& o) {
  if (o.d == 0) fail(ErrorKind::Parse, "--d is required");
}

Json exact_value(const Real& x) {
  return {{"value", to_json(x)}, {"lower", to_json(x)}, {"upper", to_json(x)}};
}

struct Result {
  Json report;
  int code = kOk;
  bool has_reals = true;
};

Result gen_example(const Options& o) {
  require_d(o);
  std::vector<int> sigma = parse_sigma(o.sigma);
  Family fam = parse_family(o.family);
  Json out{{"family", o.family == "fs" || o.family == "FS" ? "fs" : "bk"}, {"sigma", sigma}, {"d", o.d}};
  if (fam == Family::BK) {
    out["matrix"] = to_json(bk_family(sigma, o.d));
  } else {
    out["j"] = o.j;
    out["matrix"] = to_json(fs_family(sigma, o.d, o.j));
  }
  try {
    out["predicted_critical_type"] = to_json(predicted_critical_type(sigma, fam));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedDomain) throw;
  }
  return {out};
}

template <class K>
Json pcf_json(const PcfResult<K>& r) {
  Json out{{"status", to_string(r.status)}, {"graph", to_json(r.graph)}};
  if (r.graph.closed) out["critical_type"] = to_json(critical_type(r.graph));
  if (r.height) out["critical_height"] = to_json(*r.height);
  return out;
}

Result pcf_check(const Options& o) {
  require_d(o);
  Matrix<Cyclotomic> a = load_matrix(o.matrix);
  OrbitBudget budget{o.budget, o.max_degree};
  Json out;
  PcfStatus status;
  if (auto q = rational_matrix(a)) {
    auto r = pcf_certify(MapData<Rational>(*q, o.d), budget);
    status = r.status;
    out = pcf_json(r);
  } else {
    auto r = pcf_certify(MapData<Cyclotomic>(a, o.d), budget);
    status = r.status;
    out = pcf_json(r);
  }
  return {out, status == PcfStatus::Inconclusive ? kInconclusive : kOk};
}

Result critical_type_cmd(const Options& o) {
  require_d(o);
  OrbitBudget budget{o.budget, o.max_degree};
  Json out;
  Matrix<Cyclotomic> a;
  if (!o.family.empty()) {
    std::vector<int> sigma = parse_sigma(o.sigma);
    Family fam = parse_family(o.family);
    if (fam == Family::BK) {
      RatMatrix q = bk_family(sigma, o.d);
      a = q.map([](const Rational& x) { return Cyclotomic(x); });
    } else {
      a = fs_family(sigma, o.d, o.j);
    }
    try {
      out["predicted"] = to_json(predicted_critical_type(sigma, fam));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnsupportedDomain) throw;
    }
  } else {
    a = load_matrix(o.matrix);
  }
  CriticalType t;
  if (auto q = rational_matrix(a)) {
    auto g = orbit_graph(MapData<Rational>(*q, o.d), budget);
    out["graph"] = to_json(g);
    t = critical_type(g);
  } else {
    auto g = orbit_graph(MapData<Cyclotomic>(a, o.d), budget);
    out["graph"] = to_json(g);
    t = critical_type(g);
  }
  out["critical_type"] = to_json(t);
  if (out.contains("predicted")) out["agrees"] = out["predicted"] == out["critical_type"];
  return {out};
}

Result greens(const Options& o) {
  require_d(o);
  Matrix<Cyclotomic> a = load_matrix(o.matrix);
  Place v = parse_place(o.place);
  Form<Cyclotomic> phi = load_form(o.phi, static_cast<int>(a.size()));
  GreensValue g;
  std::pair<Real, Real> bounds;
  if (auto q = rational_matrix(a)) {
    MapData<Rational> m(*q, o.d);
    Form<Rational> f = rational_only(phi);
    int k = o.k >= 0 ? o.k : default_depth(m, f, step_constants(m.A, v));
    g = greens_estimate(m, f, v, k);
    bounds = greens_global_bounds(m, f, v);
  } else {
    MapData<Cyclotomic> m(a, o.d);
    int k = o.k >= 0 ? o.k : default_depth(m, phi, step_constants(m.A, v));
    g = greens_estimate(m, phi, v, k);
    bounds = greens_global_bounds(m, phi, v);
  }
  Json out = to_json(g);
  out["global_bounds"] = {{"lower", to_json(bounds.first)}, {"upper", to_json(bounds.second)}};
  return {out};
}

Result critical_height_cmd(const Options& o) {
  require_d(o);
  MapData<Rational> m(rational_only(load_matrix(o.matrix)), o.d);
  return {to_json(critical_height(m, o.k))};
}

Result divisor_height(const Options& o) {
  require_d(o);
  if (o.phi.empty()) fail(ErrorKind::Parse, "--phi is required");
  MapData<Rational> m(rational_only(load_matrix(o.matrix)), o.d);
  Form<Rational> phi = rational_only(load_form(o.phi, m.nvars()));
  DivisorHeight h = divisor_canonical_height(m, phi, o.k);
  return {{{"canonical", to_json(h.canonical)}, {"naive", to_json(h.naive)}}};
}

Result normalize_cmd(const Options& o) {
  require_d(o);
  NormalizedOrbit r = normalize(rational_only(load_matrix(o.matrix)), o.d);
  Json out{{"exact", r.exact}};
  if (r.exact) {
    out["D"] = to_json(r.lift.D);
    out["normalized"] = to_json(r.A);
  } else {
    out["D"] = to_json(r.lift.Dc);
    out["normalized"] = to_json(r.Ac);
  }
  out["sigma"] = r.lift.sigma;
  return {out};
}

Result verify_bounds_cmd(const Options& o) {
  require_d(o);
  BoundKind which = parse_bound_kind(o.which);
  if (o.matrix.empty()) {
    if (o.N == 0) fail(ErrorKind::Parse, "--N or --matrix is required");
    BoundSuite s = run_bound_suite(which, o.N, o.d, o.samples, o.seed);
    Json out = to_json(s);
    out["seed"] = o.seed;
    return {out, exit_code(s.verdict)};
  }
  RatMatrix a = rational_only(load_matrix(o.matrix));
  BoundInputs in;
  in.k = o.k;
  if (!o.b.empty()) in.B = rational_only(matrix_from_json(load(o.b)));
  if (!o.phi.empty()) in.phi = rational_only(load_form(o.phi, static_cast<int>(a.size())));
  BoundReport r = verify_bounds(a, o.d, which, in);
  return {to_json(r), exit_code(r.verdict)};
}

Result corollary(const Options& o) {
  require_d(o);
  if (o.N == 0) fail(ErrorKind::Parse, "--N is required");
  CorollaryBound c = corollary_bound(o.N, o.d);
  return {{{"N", o.N}, {"d", o.d}, {"height_bound", exact_value(c.height_bound)},
           {"degree_bound", c.degree_bound.get_str()}}};
}

Result landau_cmd(const Options& o) { return {{{"g", landau(o.n)}}, kOk, false}; }

void emit(const Json& j, const std::string& path) {
  std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    std::exit(kMalformed);
  }
  out << text;
}

void apply_precision(unsigned flag) {
  unsigned bits = flag;
  if (const char* env = std::getenv("MINCRIT_PRECISION_BITS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (*env == '\0' || *end != '\0') fail(ErrorKind::Parse, "MINCRIT_PRECISION_BITS is not a number");
    bits = static_cast<unsigned>(v);
  }
  set_precision_bits(bits);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Heights and critical orbits of the maps AX^d"};
  app.require_subcommand(1);
  app.add_option("--output", o.output, "Write the report here instead of stdout");
  app.add_option("--precision", o.precision, "MPFR mantissa bits (>= 128)");

  auto matrix_opts = [&](CLI::App* s) {
    s->add_option("--matrix", o.matrix, "Matrix JSON file or inline JSON");
    s->add_option("--d", o.d, "Degree");
  };

  std::map<CLI::App*, Result (*)(const Options&)> handlers;

  auto* gen = app.add_subcommand("gen-example", "Matrix of an example family");
  gen->add_option("--family", o.family, "bk or fs")->required();
  gen->add_option("--sigma", o.sigma, "Permutation images, e.g. 2,0,1")->required();
  gen->add_option("--d", o.d, "Degree")->required();
  gen->add_option("--j", o.j, "fs: zeta = exp(2 pi i j / d)");
  handlers[gen] = gen_example;

  auto* pcf = app.add_subcommand("pcf-check", "Certify post-critical finiteness");
  matrix_opts(pcf);
  pcf->add_option("--budget", o.budget, "Maximum orbit nodes");
  pcf->add_option("--max-degree", o.max_degree, "Maximum degree of an orbit node");
  handlers[pcf] = pcf_check;

  auto* ct = app.add_subcommand("critical-type", "Critical type from the orbit graph");
  matrix_opts(ct);
  ct->add_option("--family", o.family, "bk or fs, instead of --matrix");
  ct->add_option("--sigma", o.sigma, "Permutation images for --family");
  ct->add_option("--j", o.j, "fs: zeta = exp(2 pi i j / d)");
  ct->add_option("--budget", o.budget, "Maximum orbit nodes");
  ct->add_option("--max-degree", o.max_degree, "Maximum degree of an orbit node");
  handlers[ct] = critical_type_cmd;

  auto* gr = app.add_subcommand("greens", "Greens function estimate with envelope");
  matrix_opts(gr);
  gr->add_option("--phi", o.phi, "Form JSON file or inline JSON (default X_0)");
  gr->add_option("--place", o.place, "inf or a prime");
  gr->add_option("--k", o.k, "Depth (default from the envelope target)");
  handlers[gr] = greens;

  auto* ch = app.add_subcommand("critical-height", "Critical height as a sum over places");
  matrix_opts(ch);
  ch->add_option("--k", o.k, "Depth (default per place)");
  handlers[ch] = critical_height_cmd;

  auto* dh = app.add_subcommand("divisor-height", "Canonical and naive height of a hypersurface");
  matrix_opts(dh);
  dh->add_option("--phi", o.phi, "Form JSON file or inline JSON");
  dh->add_option("--k", o.k, "Depth (default per place)");
  handlers[dh] = divisor_height;

  auto* nf = app.add_subcommand("normalize", "Normalized lift of a matrix");
  matrix_opts(nf);
  handlers[nf] = normalize_cmd;

  auto* vb = app.add_subcommand("verify-bounds", "Check a height inequality");
  matrix_opts(vb);
  vb->add_option("--which", o.which, "thExp, lyapLower, lyapUpper, coc, conjugate, finalProp")
      ->required();
  vb->add_option("--N", o.N, "Dimension for random samples");
  vb->add_option("--samples", o.samples, "Number of random samples");
  vb->add_option("--seed", o.seed, "Random seed");
  vb->add_option("--B", o.b, "coc, conjugate: matrix B");
  vb->add_option("--phi", o.phi, "finalProp: form");
  vb->add_option("--k", o.k, "Depth");
  handlers[vb] = verify_bounds_cmd;

  auto* cb = app.add_subcommand("corollary-bound", "Height and degree bounds of the corollary");
  cb->add_option("--N", o.N, "Dimension")->required();
  cb->add_option("--d", o.d, "Degree")->required();
  handlers[cb] = corollary;

  auto* la = app.add_subcommand("landau", "Landau's function g(n)");
  la->add_option("--n", o.n, "n")->required();
  handlers[la] = landau_cmd;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(error_json("parse", e.what()), "");
    return kMalformed;
  }

  try {
    apply_precision(o.precision);
    CLI::App* sub = app.get_subcommands().front();
    Result r = handlers.at(sub)(o);
    if (r.has_reals) r.report["precision_bits"] = precision_bits();
    emit(r.report, o.output);
    return r.code;
  } catch (const Error& e) {
    emit(error_json(to_string(e.kind()), e.what()), o.output);
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    emit(error_json("parse", e.what()), o.output);
    return kMalformed;
  }
}
