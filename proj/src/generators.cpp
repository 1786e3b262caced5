#include "sge/generators.hpp"

#include <cstdio>
#include <string>

#include "sge/error.hpp"
#include "sge/random.hpp"

namespace sge {
namespace {

// Zero-padded so that lexicographic interning keeps numeric order.
std::string node_name(std::size_t i, std::size_t total) {
  const int width = static_cast<int>(std::to_string(total == 0 ? 0 : total - 1).size());
  char buf[32];
  std::snprintf(buf, sizeof buf, "v%0*zu", width, i);
  return buf;
}

}  // namespace

Graph stochastic_block_model(const SbmSpec& spec) {
  if (spec.block_sizes.size() < 2) throw ValidationError("a block model needs at least 2 blocks");
  if (!(spec.p_in >= 0.0 && spec.p_in <= 1.0 && spec.p_out >= 0.0 && spec.p_out <= 1.0)) {
    throw ValidationError("edge probabilities must lie in [0, 1]");
  }
  std::vector<std::size_t> block;
  for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) block.insert(block.end(), spec.block_sizes[b], b);
  const std::size_t n = block.size();
  Rng rng(derive_seed(spec.seed, 0x5b3));
  GraphBuilder builder;
  for (std::size_t u = 0; u < n; ++u) {
    const auto name = node_name(u, n);
    builder.add_node(name);
    builder.add_label(name, "block" + std::to_string(block[u]));
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const double p = block[u] == block[v] ? spec.p_in : spec.p_out;
      if (rng.uniform() < p) builder.add_edge(node_name(u, n), node_name(v, n));
    }
  }
  return builder.build();
}

Graph random_out_regular_graph(std::size_t nodes, std::size_t out_degree, std::uint64_t seed) {
  if (nodes == 0 || out_degree == 0) throw ValidationError("random graph needs nodes > 0 and out_degree > 0");
  Rng rng(derive_seed(seed, 0x7a9));
  std::vector<std::string> names(nodes);
  for (std::size_t i = 0; i < nodes; ++i) names[i] = node_name(i, nodes);
  GraphBuilder builder;
  for (std::size_t u = 0; u < nodes; ++u)
    for (std::size_t e = 0; e < out_degree; ++e) builder.add_edge(names[u], names[rng.below(nodes)]);
  return builder.build();
}

}  // namespace sge
