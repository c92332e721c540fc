#pragma once

// Post-critical orbits of f_A, critical types, and the two example families.

#include <optional>
#include <string>
#include <vector>

#include "mincrit/heights.hpp"

namespace mincrit {

// Permutations are given by images: sigma[i] = σ(i).
void check_permutation(const std::vector<int>& sigma);

// f_{σ(0)} = X_0^d, f_{σ(i)} = X_0^d - X_i^d.
RatMatrix bk_family(const std::vector<int>& sigma, unsigned d);
// f_{σ(0)} = X_0^d, f_{σ(i)} = X_0^d + (ζ - 1) X_i^d with ζ = exp(2πi j/d).
Matrix<Cyclotomic> fs_family(const std::vector<int>& sigma, unsigned d, long j = 1);

std::optional<RatMatrix> rational_matrix(const Matrix<Cyclotomic>& a);

struct OrbitBudget {
  std::size_t max_nodes = 200;
  unsigned max_degree = 16;
  std::size_t max_bits = 65536;  // numerator + denominator bits of any coefficient
};

template <class K>
struct OrbitGraph {
  std::vector<Form<K>> nodes;  // normalized, squarefree
  std::vector<int> next;       // successor, -1 if not computed
  std::vector<int> roots;      // the coordinate hyperplanes
  std::vector<int> tail;       // -1 until the graph is closed
  std::vector<int> period;
  bool closed = false;
  std::string stop_reason;     // why the budget stopped the search
};

OrbitGraph<Rational> orbit_graph(const MapData<Rational>& m, const OrbitBudget& budget = {});
OrbitGraph<Cyclotomic> orbit_graph(const MapData<Cyclotomic>& m, const OrbitBudget& budget = {});

// Recomputes every edge with image_support and compares.
bool replay(const OrbitGraph<Rational>& g, const MapData<Rational>& m);
bool replay(const OrbitGraph<Cyclotomic>& g, const MapData<Cyclotomic>& m);

struct CriticalType {
  int k = 0;
  long m = 1;
  friend bool operator==(const CriticalType& a, const CriticalType& b) {
    return a.k == b.k && a.m == b.m;
  }
};

// Throws a Budget error if the orbit does not close within the budget.
template <class K>
CriticalType critical_type(const OrbitGraph<K>& g);
CriticalType critical_type(const MapData<Rational>& m, const OrbitBudget& budget = {});
CriticalType critical_type(const MapData<Cyclotomic>& m, const OrbitBudget& budget = {});

enum class PcfStatus { PCF, NotPCF, Inconclusive };
std::string to_string(PcfStatus s);

template <class K>
struct PcfResult {
  PcfStatus status = PcfStatus::Inconclusive;
  OrbitGraph<K> graph;
  std::optional<HeightReport> height;  // the non-PCF evidence, when tried
};

PcfResult<Rational> pcf_certify(const MapData<Rational>& m, const OrbitBudget& budget = {});
PcfResult<Cyclotomic> pcf_certify(const MapData<Cyclotomic>& m, const OrbitBudget& budget = {});

// Largest order of an element of S_n, 1 <= n <= 40.
long landau(int n);

enum class Family { BK, FS };
Family parse_family(const std::string& s);
CriticalType predicted_critical_type(const std::vector<int>& sigma, Family family);

}  // namespace mincrit
