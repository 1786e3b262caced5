#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sge/graph.hpp"
#include "sge/random.hpp"

namespace sge {

enum class DistributionKind { kUniform, kExplicit, kBfs2 };

std::string_view to_string(DistributionKind kind);
/// Accepts "uniform", "explicit", "bfs2". Throws ValidationError otherwise.
DistributionKind parse_distribution_kind(std::string_view text);

/// Proportions w over walk lengths 1..s together with the integer number of
/// walks of each length realized for nu samples.
struct WalkDistributionVector {
  std::vector<double> weights;
  std::uint64_t samples = 0;
  /// counts[i] walks of length i+1; sums to `samples` exactly.
  std::vector<std::uint64_t> counts;

  std::size_t max_length() const { return weights.size(); }
  /// Expected walk length under `counts`.
  double mean_length() const;
};

/// Builds w and its realized counts. `uniform` ignores explicit_weights;
/// `explicit` requires them (s is then their length). Counts use
/// largest-remainder rounding, ties to the shorter length.
WalkDistributionVector generate_sampling_vector(DistributionKind kind, std::size_t s, std::uint64_t nu,
                                                std::span<const double> explicit_weights = {});

/// A visited node together with the step at which it was reached.
struct WalkTuple {
  NodeIndex node = 0;
  std::uint32_t order = 0;
  auto operator<=>(const WalkTuple&) const = default;
};

/// All walks sampled from one start node, kept in sampling order so that
/// contiguous n-grams can be recovered. Walks that hit a dead end
/// immediately are not recorded.
struct NodeDocument {
  NodeIndex start = 0;
  std::vector<WalkTuple> tuples;
  /// Walk i occupies tuples[walk_offsets[i], walk_offsets[i+1]).
  std::vector<std::uint32_t> walk_offsets{0};

  std::size_t num_walks() const { return walk_offsets.size() - 1; }
  std::span<const WalkTuple> walk(std::size_t i) const {
    return {tuples.data() + walk_offsets[i], tuples.data() + walk_offsets[i + 1]};
  }
  bool empty() const { return tuples.empty(); }
  /// Appends the tuples added since the last close as one walk (no-op if none).
  void close_walk();
  /// Distinct tuples with multiplicities, sorted by (node, order).
  std::vector<std::pair<WalkTuple, std::uint32_t>> multiset() const;

  friend bool operator==(const NodeDocument&, const NodeDocument&) = default;
};

struct SamplerConfig {
  DistributionKind kind = DistributionKind::kUniform;
  std::size_t max_length = 5;
  std::uint64_t samples = 1000;
  std::vector<double> explicit_weights;
  std::uint64_t seed = 0;
  bool include_start_node = false;
  unsigned workers = 0;

  void validate() const;
};

/// Appends up to `length` tuples (o, 1..length) of one uniform random walk
/// from `start`; stops early at a node without out-neighbors. The start node
/// is not emitted. Returns the number of tuples appended.
std::size_t walk(const Graph& graph, NodeIndex start, std::size_t length, Rng& rng, std::vector<WalkTuple>& out);

/// Convenience overload returning a fresh vector.
std::vector<WalkTuple> walk(const Graph& graph, NodeIndex start, std::size_t length, Rng& rng);

/// Simulates dist.counts[i] walks of length i+1 from `start`, shortest first.
/// With include_start_node every walk is prefixed with (start, 0).
NodeDocument sample_node(const Graph& graph, NodeIndex start, const WalkDistributionVector& dist, Rng& rng,
                         bool include_start_node = false);

/// Deterministic order-two breadth-first document: (v, 1) for each distinct
/// out-neighbor, (v, 2) for each distinct endpoint of a two-edge path. Each
/// tuple is its own single-element walk.
NodeDocument sample_bfs2(const Graph& graph, NodeIndex start);

/// Per-node RNG; depends only on (seed, node) so scheduling cannot change it.
Rng node_rng(std::uint64_t seed, NodeIndex node);

/// Produces the document for one node under cfg, using node_rng.
NodeDocument sample_document(const Graph& graph, NodeIndex node, const SamplerConfig& cfg,
                             const WalkDistributionVector& dist);

/// Samples every node (or the given subset, in the given order).
/// Result position i corresponds to nodes[i] (or node i).
std::vector<NodeDocument> sample_all(const Graph& graph, const SamplerConfig& cfg,
                                     const std::optional<std::vector<NodeIndex>>& nodes = std::nullopt);

/// Streaming form used by the benchmark: visitor(position, document) may be
/// called concurrently from several workers.
void for_each_document(const Graph& graph, const SamplerConfig& cfg, std::span<const NodeIndex> nodes,
                       const std::function<void(std::size_t, NodeDocument&&)>& visitor);

}  // namespace sge
