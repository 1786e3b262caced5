#include "sge/walk_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sge/error.hpp"
#include "sge/parallel.hpp"

namespace sge {

std::string_view to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::kUniform: return "uniform";
    case DistributionKind::kExplicit: return "explicit";
    case DistributionKind::kBfs2: return "bfs2";
  }
  return "?";
}

DistributionKind parse_distribution_kind(std::string_view text) {
  if (text == "uniform") return DistributionKind::kUniform;
  if (text == "explicit") return DistributionKind::kExplicit;
  if (text == "bfs2" || text == "bfs") return DistributionKind::kBfs2;
  throw ValidationError("unknown walk distribution '" + std::string(text) + "'");
}

double WalkDistributionVector::mean_length() const {
  if (samples == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) total += static_cast<double>(counts[i]) * static_cast<double>(i + 1);
  return total / static_cast<double>(samples);
}

WalkDistributionVector generate_sampling_vector(DistributionKind kind, std::size_t s, std::uint64_t nu,
                                                std::span<const double> explicit_weights) {
  if (nu < 1) throw ValidationError("number of walk samples must be >= 1");
  WalkDistributionVector dist;
  dist.samples = nu;
  switch (kind) {
    case DistributionKind::kUniform:
      if (s < 1) throw ValidationError("maximum walk length must be >= 1");
      dist.weights.assign(s, 1.0 / static_cast<double>(s));
      break;
    case DistributionKind::kExplicit: {
      if (explicit_weights.empty()) throw ValidationError("explicit distribution needs a weight vector");
      double sum = 0.0;
      for (double w : explicit_weights) {
        if (!std::isfinite(w) || w < 0.0) throw ValidationError("walk distribution weights must be finite and >= 0");
        sum += w;
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        throw ValidationError("walk distribution weights sum to " + std::to_string(sum) + ", expected 1");
      }
      dist.weights.assign(explicit_weights.begin(), explicit_weights.end());
      break;
    }
    case DistributionKind::kBfs2:
      throw ValidationError("bfs2 sampling has no walk distribution vector");
  }

  // Largest remainder: floor every share, then hand the leftover walks to the
  // largest fractional parts.
  const std::size_t len = dist.weights.size();
  dist.counts.resize(len);
  std::vector<double> remainder(len);
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const double exact = dist.weights[i] * static_cast<double>(nu);
    const double floored = std::floor(exact);
    dist.counts[i] = static_cast<std::uint64_t>(floored);
    remainder[i] = exact - floored;
    assigned += dist.counts[i];
  }
  if (assigned > nu) {
    // Only reachable through rounding of weights that sum to 1 + 1e-9.
    for (std::size_t i = len; i-- > 0 && assigned > nu;) {
      const auto take = std::min(dist.counts[i], assigned - nu);
      dist.counts[i] -= take;
      assigned -= take;
    }
  }
  std::vector<std::size_t> order(len);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t r = 0; assigned < nu; r = (r + 1) % len) {
    if (dist.weights[order[r]] > 0.0) {
      ++dist.counts[order[r]];
      ++assigned;
    }
  }
  return dist;
}

void NodeDocument::close_walk() {
  if (tuples.size() != walk_offsets.back()) walk_offsets.push_back(static_cast<std::uint32_t>(tuples.size()));
}

std::vector<std::pair<WalkTuple, std::uint32_t>> NodeDocument::multiset() const {
  std::vector<WalkTuple> sorted = tuples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<WalkTuple, std::uint32_t>> out;
  for (const auto& t : sorted) {
    if (!out.empty() && out.back().first == t) {
      ++out.back().second;
    } else {
      out.emplace_back(t, 1);
    }
  }
  return out;
}

void SamplerConfig::validate() const {
  if (samples < 1) throw ValidationError("number of walk samples must be >= 1");
  if (kind == DistributionKind::kBfs2) return;
  if (kind == DistributionKind::kUniform && max_length < 1) throw ValidationError("maximum walk length must be >= 1");
  generate_sampling_vector(kind, max_length, samples, explicit_weights);
}

std::size_t walk(const Graph& graph, NodeIndex start, std::size_t length, Rng& rng, std::vector<WalkTuple>& out) {
  if (start >= graph.num_nodes()) throw IndexError("walk start out of range");
  NodeIndex current = start;
  std::size_t emitted = 0;
  for (std::size_t step = 1; step <= length; ++step) {
    const auto nbrs = graph.neighbors_unchecked(current);
    if (nbrs.empty()) break;
    current = nbrs.size() == 1 ? nbrs[0] : nbrs[rng.below(nbrs.size())];
    out.push_back({current, static_cast<std::uint32_t>(step)});
    ++emitted;
  }
  return emitted;
}

std::vector<WalkTuple> walk(const Graph& graph, NodeIndex start, std::size_t length, Rng& rng) {
  std::vector<WalkTuple> out;
  out.reserve(length);
  walk(graph, start, length, rng, out);
  return out;
}

NodeDocument sample_node(const Graph& graph, NodeIndex start, const WalkDistributionVector& dist, Rng& rng,
                         bool include_start_node) {
  if (start >= graph.num_nodes()) throw IndexError("sample start out of range");
  if (dist.counts.size() != dist.weights.size()) throw ValidationError("walk distribution vector not realized");
  NodeDocument doc;
  doc.start = start;
  const bool dead_end = graph.neighbors_unchecked(start).empty();
  if (dead_end && !include_start_node) return doc;
  std::size_t expected = 0;
  for (std::size_t i = 0; i < dist.counts.size(); ++i) expected += dist.counts[i] * (i + 1 + (include_start_node ? 1 : 0));
  doc.tuples.reserve(expected);
  for (std::size_t i = 0; i < dist.counts.size(); ++i) {
    for (std::uint64_t c = 0; c < dist.counts[i]; ++c) {
      if (include_start_node) doc.tuples.push_back({start, 0});
      walk(graph, start, i + 1, rng, doc.tuples);
      doc.close_walk();
    }
  }
  return doc;
}

NodeDocument sample_bfs2(const Graph& graph, NodeIndex start) {
  const auto first = graph.out_neighbors(start);
  std::vector<NodeIndex> hop1(first.begin(), first.end());
  hop1.erase(std::unique(hop1.begin(), hop1.end()), hop1.end());
  std::vector<NodeIndex> hop2;
  for (auto v : hop1) {
    const auto nbrs = graph.neighbors_unchecked(v);
    hop2.insert(hop2.end(), nbrs.begin(), nbrs.end());
  }
  std::sort(hop2.begin(), hop2.end());
  hop2.erase(std::unique(hop2.begin(), hop2.end()), hop2.end());

  NodeDocument doc;
  doc.start = start;
  for (auto v : hop1) {
    doc.tuples.push_back({v, 1});
    doc.close_walk();
  }
  for (auto v : hop2) {
    doc.tuples.push_back({v, 2});
    doc.close_walk();
  }
  return doc;
}

Rng node_rng(std::uint64_t seed, NodeIndex node) { return Rng(derive_seed(seed, node)); }

NodeDocument sample_document(const Graph& graph, NodeIndex node, const SamplerConfig& cfg,
                             const WalkDistributionVector& dist) {
  if (cfg.kind == DistributionKind::kBfs2) return sample_bfs2(graph, node);
  auto rng = node_rng(cfg.seed, node);
  return sample_node(graph, node, dist, rng, cfg.include_start_node);
}

namespace {

WalkDistributionVector config_distribution(const SamplerConfig& cfg) {
  cfg.validate();
  if (cfg.kind == DistributionKind::kBfs2) return {};
  return generate_sampling_vector(cfg.kind, cfg.max_length, cfg.samples, cfg.explicit_weights);
}

}  // namespace

void for_each_document(const Graph& graph, const SamplerConfig& cfg, std::span<const NodeIndex> nodes,
                       const std::function<void(std::size_t, NodeDocument&&)>& visitor) {
  const auto dist = config_distribution(cfg);
  for (auto n : nodes) {
    if (n >= graph.num_nodes()) throw IndexError("requested node out of range");
  }
  parallel_for(nodes.size(), cfg.workers, [&](std::size_t i) { visitor(i, sample_document(graph, nodes[i], cfg, dist)); }, 64);
}

std::vector<NodeDocument> sample_all(const Graph& graph, const SamplerConfig& cfg,
                                     const std::optional<std::vector<NodeIndex>>& nodes) {
  std::vector<NodeIndex> all;
  if (!nodes) {
    all.resize(graph.num_nodes());
    std::iota(all.begin(), all.end(), NodeIndex{0});
  }
  const std::span<const NodeIndex> selected = nodes ? std::span<const NodeIndex>(*nodes) : std::span<const NodeIndex>(all);
  std::vector<NodeDocument> docs(selected.size());
  for_each_document(graph, cfg, selected, [&](std::size_t i, NodeDocument&& d) { docs[i] = std::move(d); });
  return docs;
}

}  // namespace sge
