#pragma once

#include <cstdint>
#include <vector>

#include "sge/graph.hpp"

namespace sge {

/// Directed stochastic block model: each ordered pair (u, v), u != v, is an
/// edge with probability p_in inside a block and p_out across blocks. Nodes
/// are labeled with their block ("block0", "block1", ...).
struct SbmSpec {
  std::vector<std::size_t> block_sizes{100, 100, 100};
  double p_in = 0.1;
  double p_out = 0.005;
  std::uint64_t seed = 0;
};
Graph stochastic_block_model(const SbmSpec& spec);

/// Every node gets `out_degree` out-edges to uniformly drawn targets
/// (self-loops and parallel edges allowed).
Graph random_out_regular_graph(std::size_t nodes, std::size_t out_degree, std::uint64_t seed);

}  // namespace sge
