#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exotic/forest.hpp"
#include "exotic/series.hpp"

namespace exotic {

// Integration by parts against rho = exp(-2V) on the torus, f = -grad V.
// All series here carry F-weighted coefficients: sum c_pi F(pi)[phi].

// Eliminates the root component hanging from vertex `root` of pi.
Series ibp_step(const Forest& pi, int root);
// Root chosen by the deterministic strategy: numbered singleton roots first,
// then the smallest tree component; -1 when pi has at most one root.
int ibp_default_root(const Forest& pi);

struct IBPOptions {
  // Rewrite the single-root leftovers (aromas, stolons, numbered roots) into
  // exotic trees by projecting on gradient graphs.
  bool project = true;
  // Also send exotic trees through the projection, so that combinations of
  // trees are reduced modulo the relation as well. Off by default, which
  // keeps A the identity on trees.
  bool reduce_trees = false;
  // Random root choices instead of the canonical strategy.
  std::optional<std::uint64_t> seed;
};

struct IBPNormalForm {
  Series trees;     // exotic trees only
  Series residual;  // terms that could not be rewritten
  bool clean() const { return residual.empty(); }
};

IBPNormalForm ibp_normalize(const Series& s, const IBPOptions& opt = {});

// Coefficient form of the above: A(x)(tau) = sigma(tau) * c_tau, where c_tau
// is the F-weighted normal form of delta_sigma(x) over forests of order <= n.
struct IBPMap {
  Functional value;
  Series residual;
};
IBPMap ibp_map(const Functional& x, int max_order);

// Undirected multigraph obtained by writing every black vertex as a
// derivative of V. Vertex 0 stands for phi. F(pi) = (-1)^{#black} C(G).
struct GradientGraph {
  int vertices = 1;  // including phi
  std::vector<std::pair<int, int>> edges;
};
GradientGraph gradient_graph(const Forest& pi);
std::string graph_key(const GradientGraph& g);

}  // namespace exotic
