#include "mincrit/dynamics.hpp"

#include <functional>
#include <numeric>

namespace mincrit {

void check_permutation(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  if (n < 2 || n > 4) fail(ErrorKind::Precondition, "permutation must act on 2 to 4 points");
  std::vector<bool> seen(sigma.size(), false);
  for (int s : sigma) {
    if (s < 0 || s >= n || seen[static_cast<std::size_t>(s)])
      fail(ErrorKind::Precondition, "not a permutation");
    seen[static_cast<std::size_t>(s)] = true;
  }
}

namespace {

template <class K>
Matrix<K> family_matrix(const std::vector<int>& sigma, const K& c) {
  check_permutation(sigma);
  const std::size_t n = sigma.size();
  Matrix<K> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = static_cast<std::size_t>(sigma[i]);
    a(r, 0) = Ring<K>::one();
    if (i != 0) a(r, i) = c;
  }
  return a;
}

}  // namespace

RatMatrix bk_family(const std::vector<int>& sigma, unsigned d) {
  if (d < 2) fail(ErrorKind::Precondition, "d must be at least 2");
  return family_matrix(sigma, Rational(-1));
}

Matrix<Cyclotomic> fs_family(const std::vector<int>& sigma, unsigned d, long j) {
  if (d < 2) fail(ErrorKind::Precondition, "d must be at least 2");
  if (((j % static_cast<long>(d)) + d) % d == 0)
    fail(ErrorKind::Precondition, "zeta must not be 1");
  Cyclotomic zeta = Cyclotomic::root_of_unity(d, j);
  return family_matrix(sigma, zeta - Cyclotomic(1L));
}

std::optional<RatMatrix> rational_matrix(const Matrix<Cyclotomic>& a) {
  RatMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!a(i, j).is_rational()) return std::nullopt;
      out(i, j) = a(i, j).rational_value();
    }
  return out;
}

namespace {

std::size_t coeff_bits(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}
std::size_t coeff_bits(const Cyclotomic& c) {
  std::size_t b = 0;
  for (const auto& q : c.coeffs()) b = std::max(b, coeff_bits(q));
  return b;
}

template <class K>
std::size_t form_bits(const Form<K>& f) {
  std::size_t b = 0;
  for (const auto& t : f.terms()) b = std::max(b, coeff_bits(t.second));
  return b;
}

template <class K>
int find_node(const std::vector<Form<K>>& nodes, const Form<K>& f) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == f) return static_cast<int>(i);
  return -1;
}

// Tail and period of every node of a closed functional graph.
template <class K>
void classify(OrbitGraph<K>& g) {
  const std::size_t n = g.nodes.size();
  g.tail.assign(n, -1);
  g.period.assign(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<int> seen(n, -1);
    std::vector<int> path;
    int x = static_cast<int>(s);
    while (seen[static_cast<std::size_t>(x)] < 0) {
      seen[static_cast<std::size_t>(x)] = static_cast<int>(path.size());
      path.push_back(x);
      x = g.next[static_cast<std::size_t>(x)];
    }
    g.tail[s] = seen[static_cast<std::size_t>(x)];
    g.period[s] = static_cast<int>(path.size()) - g.tail[s];
  }
}

template <class K>
OrbitGraph<K> build_orbit(const MapData<K>& m, const OrbitBudget& budget) {
  OrbitGraph<K> g;
  const int n = m.nvars();
  for (int i = 0; i < n; ++i) {
    g.nodes.push_back(Form<K>::variable(n, i));
    g.next.push_back(-1);
    g.roots.push_back(i);
  }
  for (std::size_t cur = 0; cur < g.nodes.size(); ++cur) {
    Form<K> img = image_support(g.nodes[cur], m);
    if (img.degree() > budget.max_degree) {
      g.stop_reason = "image degree " + std::to_string(img.degree()) + " exceeds " +
                      std::to_string(budget.max_degree);
      return g;
    }
    if (form_bits(img) > budget.max_bits) {
      g.stop_reason = "coefficients exceed " + std::to_string(budget.max_bits) + " bits";
      return g;
    }
    int at = find_node(g.nodes, img);
    if (at < 0) {
      if (g.nodes.size() >= budget.max_nodes) {
        g.stop_reason = "more than " + std::to_string(budget.max_nodes) + " nodes";
        return g;
      }
      at = static_cast<int>(g.nodes.size());
      g.nodes.push_back(img);
      g.next.push_back(-1);
    }
    g.next[cur] = at;
  }
  g.closed = true;
  classify(g);
  return g;
}

template <class K>
bool replay_graph(const OrbitGraph<K>& g, const MapData<K>& m) {
  if (!g.closed) return false;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    int j = g.next[i];
    if (j < 0 || !(image_support(g.nodes[i], m) == g.nodes[static_cast<std::size_t>(j)]))
      return false;
  }
  return true;
}

template <class K>
PcfResult<K> certify_graph(const MapData<K>& m, const OrbitBudget& budget) {
  PcfResult<K> r;
  r.graph = build_orbit(m, budget);
  if (r.graph.closed) r.status = PcfStatus::PCF;
  return r;
}

}  // namespace

OrbitGraph<Rational> orbit_graph(const MapData<Rational>& m, const OrbitBudget& budget) {
  return build_orbit(m, budget);
}
OrbitGraph<Cyclotomic> orbit_graph(const MapData<Cyclotomic>& m, const OrbitBudget& budget) {
  return build_orbit(m, budget);
}

bool replay(const OrbitGraph<Rational>& g, const MapData<Rational>& m) { return replay_graph(g, m); }
bool replay(const OrbitGraph<Cyclotomic>& g, const MapData<Cyclotomic>& m) {
  return replay_graph(g, m);
}

template <class K>
CriticalType critical_type(const OrbitGraph<K>& g) {
  if (!g.closed) fail(ErrorKind::Budget, "orbit did not close: " + g.stop_reason);
  CriticalType t;
  for (int r : g.roots) {
    t.k = std::max(t.k, g.tail[static_cast<std::size_t>(r)]);
    t.m = std::lcm(t.m, static_cast<long>(g.period[static_cast<std::size_t>(r)]));
  }
  return t;
}
template CriticalType critical_type(const OrbitGraph<Rational>&);
template CriticalType critical_type(const OrbitGraph<Cyclotomic>&);

CriticalType critical_type(const MapData<Rational>& m, const OrbitBudget& budget) {
  return critical_type(orbit_graph(m, budget));
}
CriticalType critical_type(const MapData<Cyclotomic>& m, const OrbitBudget& budget) {
  return critical_type(orbit_graph(m, budget));
}

std::string to_string(PcfStatus s) {
  switch (s) {
    case PcfStatus::PCF: return "pcf";
    case PcfStatus::NotPCF: return "not-pcf";
    case PcfStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

PcfResult<Rational> pcf_certify(const MapData<Rational>& m, const OrbitBudget& budget) {
  PcfResult<Rational> r = certify_graph(m, budget);
  if (r.status == PcfStatus::PCF) return r;
  r.height = critical_height(m);
  if (r.height->lower > 0) r.status = PcfStatus::NotPCF;
  return r;
}

PcfResult<Cyclotomic> pcf_certify(const MapData<Cyclotomic>& m, const OrbitBudget& budget) {
  if (auto q = rational_matrix(m.A)) {
    PcfResult<Rational> r = pcf_certify(MapData<Rational>(*q, m.d), budget);
    PcfResult<Cyclotomic> out;
    out.status = r.status;
    out.height = r.height;
    OrbitGraph<Cyclotomic>& g = out.graph;
    for (const auto& f : r.graph.nodes) g.nodes.push_back(f.map([](const Rational& x) { return Cyclotomic(x); }));
    g.next = r.graph.next;
    g.roots = r.graph.roots;
    g.tail = r.graph.tail;
    g.period = r.graph.period;
    g.closed = r.graph.closed;
    g.stop_reason = r.graph.stop_reason;
    return out;
  }
  return certify_graph(m, budget);
}

long landau(int n) {
  if (n < 1 || n > 40) fail(ErrorKind::Precondition, "landau needs 1 <= n <= 40");
  long best = 1;
  // Parts in non-increasing order.
  std::function<void(int, int, long)> walk = [&](int left, int max_part, long acc) {
    if (left == 0) {
      best = std::max(best, acc);
      return;
    }
    for (int p = std::min(left, max_part); p >= 1; --p) walk(left - p, p, std::lcm(acc, static_cast<long>(p)));
  };
  walk(n, n, 1);
  return best;
}

Family parse_family(const std::string& s) {
  if (s == "bk" || s == "BK") return Family::BK;
  if (s == "fs" || s == "FS") return Family::FS;
  fail(ErrorKind::Parse, "unknown family: " + s);
}

namespace {

// Orbit of 0 under σ: 0, σ(0), ..., σ^{m-1}(0).
std::vector<int> orbit_of_zero(const std::vector<int>& sigma) {
  std::vector<int> orb{0};
  for (int x = sigma[0]; x != 0; x = sigma[static_cast<std::size_t>(x)]) orb.push_back(x);
  return orb;
}

long cycle_length(const std::vector<int>& sigma, int i) {
  long k = 1;
  for (int x = sigma[static_cast<std::size_t>(i)]; x != i; x = sigma[static_cast<std::size_t>(x)]) ++k;
  return k;
}

}  // namespace

CriticalType predicted_critical_type(const std::vector<int>& sigma, Family family) {
  check_permutation(sigma);
  std::vector<int> orb = orbit_of_zero(sigma);
  const long m = static_cast<long>(orb.size());
  CriticalType t;
  if (family == Family::FS) {
    if (m == 1) fail(ErrorKind::UnsupportedDomain, "prediction assumes sigma(0) != 0");
    t.k = 3;
    for (std::size_t i = 0; i < sigma.size(); ++i) t.m = std::lcm(t.m, cycle_length(sigma, static_cast<int>(i)));
    return t;
  }
  t.k = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    long type;
    auto pos = std::find(orb.begin(), orb.end(), static_cast<int>(i));
    if (pos == orb.end()) {
      type = std::lcm(cycle_length(sigma, static_cast<int>(i)), m + 1);
    } else {
      long k = pos - orb.begin();
      if (m == 1)
        type = 1;  // σ(0) = 0: H_0 is fixed
      else if (2 * k == m + 1)
        type = (m + 1) / 2;
      else
        type = m + 1;
    }
    t.m = std::lcm(t.m, type);
  }
  return t;
}

}  // namespace mincrit
