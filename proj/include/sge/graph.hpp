#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sge {

using NodeIndex = std::uint32_t;
using ClassId = std::uint32_t;

/// Class labels for a (usually small) subset of nodes.
class LabelSet {
 public:
  LabelSet() = default;
  /// assignments need not be sorted; validated on construction.
  LabelSet(std::vector<std::pair<NodeIndex, ClassId>> assignments, std::vector<std::string> class_names);

  std::size_t size() const { return assignments_.size(); }
  std::size_t num_classes() const { return class_names_.size(); }
  /// Sorted by node index.
  const std::vector<std::pair<NodeIndex, ClassId>>& assignments() const { return assignments_; }
  const std::vector<std::string>& class_names() const { return class_names_; }
  std::optional<ClassId> class_of(NodeIndex node) const;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::vector<std::pair<NodeIndex, ClassId>> assignments_;
  std::vector<std::string> class_names_;
};

/// Immutable directed multigraph in compressed sparse row form. Node indices
/// are assigned in lexicographic order of the external names, so the same edge
/// set always interns to the same indices regardless of file line order.
class Graph {
 public:
  Graph() = default;

  std::size_t num_nodes() const { return names_.size(); }
  std::size_t num_edges() const { return targets_.size(); }

  /// Out-neighbors of `node`, sorted, parallel edges repeated. Throws IndexError.
  std::span<const NodeIndex> out_neighbors(NodeIndex node) const;
  std::size_t out_degree(NodeIndex node) const { return out_neighbors(node).size(); }
  /// Edge-type ids parallel to out_neighbors(node). Not used for sampling.
  std::span<const std::uint32_t> out_edge_types(NodeIndex node) const;

  /// Unchecked slice for hot loops. `node` must be < num_nodes().
  std::span<const NodeIndex> neighbors_unchecked(NodeIndex node) const noexcept {
    return {targets_.data() + offsets_[node], targets_.data() + offsets_[node + 1]};
  }

  const std::string& name(NodeIndex node) const;
  std::string_view node_type(NodeIndex node) const;
  std::uint32_t node_type_id(NodeIndex node) const { return node_types_.at(node); }
  std::optional<NodeIndex> find(std::string_view name) const;

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& type_names() const { return type_names_; }
  const std::vector<std::string>& edge_type_names() const { return edge_type_names_; }
  const std::vector<std::uint64_t>& offsets() const { return offsets_; }
  const std::optional<LabelSet>& labels() const { return labels_; }

  /// Replaces the label set. Every labeled node must exist.
  void set_labels(LabelSet labels);

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend class GraphBuilder;
  friend Graph load_graph_binary(const std::filesystem::path&);

  std::vector<std::uint64_t> offsets_{0};
  std::vector<NodeIndex> targets_;
  std::vector<std::uint32_t> edge_types_;
  std::vector<std::string> names_;
  std::vector<std::uint32_t> node_types_;
  std::vector<std::string> type_names_;
  std::vector<std::string> edge_type_names_;
  std::optional<LabelSet> labels_;
};

/// Accumulates named nodes and edges, then interns them into a Graph.
class GraphBuilder {
 public:
  inline static const std::string kDefaultNodeType = "node";

  /// Declares a node (idempotent). A non-empty type overrides the default but
  /// two different non-default types for one node are rejected.
  void add_node(std::string_view name, std::string_view type = {});
  void add_edge(std::string_view src, std::string_view dst, std::string_view edge_type = {});
  /// Labels by node name; names must be declared before build().
  void add_label(std::string_view name, std::string_view class_name);

  /// Interns everything. With `symmetrize`, each non-loop edge u->v also adds v->u.
  Graph build(bool symmetrize = false) const;

 private:
  struct PendingEdge {
    std::string src, dst, type;
  };
  std::vector<PendingEdge> edges_;
  std::unordered_map<std::string, std::string> node_types_;
  std::vector<std::pair<std::string, std::string>> labels_;
};

struct LoadOptions {
  bool symmetrize = false;
};

/// Loads a tab-separated edge list plus optional node-type and label files.
/// Throws ParseError (malformed line), ValidationError (semantic problems),
/// IoError (unreadable file).
Graph load_graph(const std::filesystem::path& edge_file,
                 const std::optional<std::filesystem::path>& node_type_file = std::nullopt,
                 const std::optional<std::filesystem::path>& label_file = std::nullopt,
                 const LoadOptions& options = {});

/// Writes files readable by load_graph; reloading reproduces the graph.
void write_edge_list(const Graph& graph, const std::filesystem::path& path);
void write_node_types(const Graph& graph, const std::filesystem::path& path);
void write_labels(const Graph& graph, const std::filesystem::path& path);

/// Versioned little-endian binary cache of an interned graph.
void save_graph_binary(const Graph& graph, const std::filesystem::path& path);
Graph load_graph_binary(const std::filesystem::path& path);

/// Splits a line on tabs, dropping a trailing '\r'.
std::vector<std::string_view> split_tabs(std::string_view line);

}  // namespace sge
