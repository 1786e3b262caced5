#include "sge/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "binary_io.hpp"
#include "sge/error.hpp"

namespace sge {
namespace {

constexpr char kBinaryMagic[8] = {'S', 'G', 'E', 'G', 'R', 'A', 'P', 'H'};
constexpr std::uint32_t kBinaryVersion = 1;

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

// Calls fn(fields, line_number) for every non-blank, non-comment line.
template <typename Fn>
void for_each_record(const std::filesystem::path& path, Fn&& fn) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_tabs(line);
    for (auto f : fields) {
      if (f.empty()) throw ParseError(path.string(), line_no, "empty field");
    }
    fn(fields, line_no);
  }
  if (in.bad()) throw IoError("read failure on " + path.string());
}

}  // namespace

std::vector<std::string_view> split_tabs(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

LabelSet::LabelSet(std::vector<std::pair<NodeIndex, ClassId>> assignments, std::vector<std::string> class_names)
    : assignments_(std::move(assignments)), class_names_(std::move(class_names)) {
  if (class_names_.size() < 2) throw ValidationError("label set needs at least 2 classes");
  std::sort(assignments_.begin(), assignments_.end());
  for (std::size_t i = 0; i < assignments_.size(); ++i) {
    if (assignments_[i].second >= class_names_.size()) throw ValidationError("class id out of range");
    if (i > 0 && assignments_[i].first == assignments_[i - 1].first) {
      throw ValidationError("node labeled twice");
    }
  }
}

std::optional<ClassId> LabelSet::class_of(NodeIndex node) const {
  auto it = std::lower_bound(assignments_.begin(), assignments_.end(), std::pair<NodeIndex, ClassId>{node, 0});
  if (it == assignments_.end() || it->first != node) return std::nullopt;
  return it->second;
}

std::span<const NodeIndex> Graph::out_neighbors(NodeIndex node) const {
  if (node >= num_nodes()) {
    throw IndexError("node index " + std::to_string(node) + " out of range (|N|=" + std::to_string(num_nodes()) + ")");
  }
  return neighbors_unchecked(node);
}

std::span<const std::uint32_t> Graph::out_edge_types(NodeIndex node) const {
  if (node >= num_nodes()) throw IndexError("node index out of range");
  return {edge_types_.data() + offsets_[node], edge_types_.data() + offsets_[node + 1]};
}

const std::string& Graph::name(NodeIndex node) const {
  if (node >= num_nodes()) throw IndexError("node index out of range");
  return names_[node];
}

std::string_view Graph::node_type(NodeIndex node) const {
  if (node >= num_nodes()) throw IndexError("node index out of range");
  return type_names_[node_types_[node]];
}

std::optional<NodeIndex> Graph::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<NodeIndex>(it - names_.begin());
}

void Graph::set_labels(LabelSet labels) {
  for (const auto& [node, cls] : labels.assignments()) {
    if (node >= num_nodes()) throw ValidationError("label refers to a node outside the graph");
  }
  labels_ = std::move(labels);
}

void GraphBuilder::add_node(std::string_view name, std::string_view type) {
  if (name.empty()) throw ValidationError("empty node name");
  auto [it, inserted] = node_types_.try_emplace(std::string(name), type.empty() ? kDefaultNodeType : std::string(type));
  if (inserted || type.empty() || it->second == type) return;
  if (it->second == kDefaultNodeType) {
    it->second = std::string(type);
    return;
  }
  throw ValidationError("node '" + std::string(name) + "' declared with types '" + it->second + "' and '" +
                        std::string(type) + "'");
}

void GraphBuilder::add_edge(std::string_view src, std::string_view dst, std::string_view edge_type) {
  add_node(src);
  add_node(dst);
  edges_.push_back({std::string(src), std::string(dst), std::string(edge_type)});
}

void GraphBuilder::add_label(std::string_view name, std::string_view class_name) {
  labels_.emplace_back(std::string(name), std::string(class_name));
}

Graph GraphBuilder::build(bool symmetrize) const {
  Graph g;
  g.names_.reserve(node_types_.size());
  for (const auto& [name, type] : node_types_) g.names_.push_back(name);
  std::sort(g.names_.begin(), g.names_.end());

  std::set<std::string> type_set;
  for (const auto& [name, type] : node_types_) type_set.insert(type);
  g.type_names_.assign(type_set.begin(), type_set.end());
  g.node_types_.resize(g.names_.size());
  for (std::size_t i = 0; i < g.names_.size(); ++i) {
    const auto& type = node_types_.at(g.names_[i]);
    g.node_types_[i] = static_cast<std::uint32_t>(
        std::lower_bound(g.type_names_.begin(), g.type_names_.end(), type) - g.type_names_.begin());
  }

  std::set<std::string> edge_type_set;
  for (const auto& e : edges_) edge_type_set.insert(e.type);
  g.edge_type_names_.assign(edge_type_set.begin(), edge_type_set.end());
  auto edge_type_id = [&](const std::string& t) {
    return static_cast<std::uint32_t>(std::lower_bound(g.edge_type_names_.begin(), g.edge_type_names_.end(), t) -
                                      g.edge_type_names_.begin());
  };

  struct Arc {
    NodeIndex src, dst;
    std::uint32_t type;
    auto operator<=>(const Arc&) const = default;
  };
  std::vector<Arc> arcs;
  arcs.reserve(edges_.size() * (symmetrize ? 2 : 1));
  for (const auto& e : edges_) {
    const NodeIndex s = *g.find(e.src);
    const NodeIndex d = *g.find(e.dst);
    const auto t = edge_type_id(e.type);
    arcs.push_back({s, d, t});
    if (symmetrize && s != d) arcs.push_back({d, s, t});
  }
  std::sort(arcs.begin(), arcs.end());

  g.offsets_.assign(g.names_.size() + 1, 0);
  g.targets_.reserve(arcs.size());
  g.edge_types_.reserve(arcs.size());
  for (const auto& a : arcs) {
    ++g.offsets_[a.src + 1];
    g.targets_.push_back(a.dst);
    g.edge_types_.push_back(a.type);
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());

  if (!labels_.empty()) {
    std::set<std::string> class_set;
    for (const auto& [name, cls] : labels_) class_set.insert(cls);
    std::vector<std::string> class_names(class_set.begin(), class_set.end());
    std::map<NodeIndex, ClassId> assigned;
    for (const auto& [name, cls] : labels_) {
      auto node = g.find(name);
      if (!node) throw ValidationError("label for unknown node '" + name + "'");
      const auto id = static_cast<ClassId>(
          std::lower_bound(class_names.begin(), class_names.end(), cls) - class_names.begin());
      auto [it, inserted] = assigned.emplace(*node, id);
      if (!inserted && it->second != id) throw ValidationError("conflicting labels for node '" + name + "'");
    }
    g.labels_ = LabelSet({assigned.begin(), assigned.end()}, std::move(class_names));
  }
  return g;
}

Graph load_graph(const std::filesystem::path& edge_file, const std::optional<std::filesystem::path>& node_type_file,
                 const std::optional<std::filesystem::path>& label_file, const LoadOptions& options) {
  GraphBuilder builder;
  std::size_t edges = 0;
  for_each_record(edge_file, [&](const std::vector<std::string_view>& f, std::size_t line) {
    if (f.size() < 2 || f.size() > 3) {
      throw ParseError(edge_file.string(), line, "expected 'src<TAB>dst[<TAB>edge_type]'");
    }
    builder.add_edge(f[0], f[1], f.size() == 3 ? f[2] : std::string_view{});
    ++edges;
  });
  if (edges == 0) throw ValidationError("edge file " + edge_file.string() + " contains no edges");

  if (node_type_file) {
    for_each_record(*node_type_file, [&](const std::vector<std::string_view>& f, std::size_t line) {
      if (f.size() != 2) throw ParseError(node_type_file->string(), line, "expected 'name<TAB>type'");
      try {
        builder.add_node(f[0], f[1]);
      } catch (const ValidationError& e) {
        throw ParseError(node_type_file->string(), line, e.what());
      }
    });
  }
  if (label_file) {
    for_each_record(*label_file, [&](const std::vector<std::string_view>& f, std::size_t line) {
      if (f.size() != 2) throw ParseError(label_file->string(), line, "expected 'name<TAB>class'");
      builder.add_label(f[0], f[1]);
    });
  }
  return builder.build(options.symmetrize);
}

void write_edge_list(const Graph& graph, const std::filesystem::path& path) {
  auto out = open_output(path);
  const bool typed = !(graph.edge_type_names().size() == 1 && graph.edge_type_names().front().empty());
  for (NodeIndex u = 0; u < graph.num_nodes(); ++u) {
    auto nbrs = graph.out_neighbors(u);
    auto types = graph.out_edge_types(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      out << graph.name(u) << '\t' << graph.name(nbrs[i]);
      const auto& t = graph.edge_type_names()[types[i]];
      if (typed && !t.empty()) out << '\t' << t;
      out << '\n';
    }
  }
  if (!out) throw IoError("write failure on " + path.string());
}

void write_node_types(const Graph& graph, const std::filesystem::path& path) {
  auto out = open_output(path);
  for (NodeIndex u = 0; u < graph.num_nodes(); ++u) out << graph.name(u) << '\t' << graph.node_type(u) << '\n';
  if (!out) throw IoError("write failure on " + path.string());
}

void write_labels(const Graph& graph, const std::filesystem::path& path) {
  auto out = open_output(path);
  if (graph.labels()) {
    const auto& ls = *graph.labels();
    for (const auto& [node, cls] : ls.assignments()) out << graph.name(node) << '\t' << ls.class_names()[cls] << '\n';
  }
  if (!out) throw IoError("write failure on " + path.string());
}

// Layout (all integers little-endian):
//   magic "SGEGRAPH", u32 version, u32 flags (bit0: has labels)
//   u64 |N|, u64 |E|
//   |N| names, u32 type count + type names, |N| x u32 type id
//   u32 edge-type count + edge-type names
//   (|N|+1) x u64 offsets, |E| x u32 targets, |E| x u32 edge type ids
//   if labels: u32 class count + class names, u64 label count, pairs of u32
// Strings are u32 byte length followed by UTF-8 bytes.
void save_graph_binary(const Graph& graph, const std::filesystem::path& path) {
  using namespace detail;
  auto out = open_output(path, std::ios::binary);
  out.write(kBinaryMagic, sizeof kBinaryMagic);
  put_u32(out, kBinaryVersion);
  put_u32(out, graph.labels() ? 1u : 0u);
  put_u64(out, graph.num_nodes());
  put_u64(out, graph.num_edges());
  for (const auto& n : graph.names()) put_string(out, n);
  put_u32(out, static_cast<std::uint32_t>(graph.type_names().size()));
  for (const auto& t : graph.type_names()) put_string(out, t);
  for (NodeIndex u = 0; u < graph.num_nodes(); ++u) put_u32(out, graph.node_type_id(u));
  put_u32(out, static_cast<std::uint32_t>(graph.edge_type_names().size()));
  for (const auto& t : graph.edge_type_names()) put_string(out, t);
  for (auto o : graph.offsets()) put_u64(out, o);
  for (NodeIndex u = 0; u < graph.num_nodes(); ++u)
    for (auto v : graph.neighbors_unchecked(u)) put_u32(out, v);
  for (NodeIndex u = 0; u < graph.num_nodes(); ++u)
    for (auto t : graph.out_edge_types(u)) put_u32(out, t);
  if (graph.labels()) {
    const auto& ls = *graph.labels();
    put_u32(out, static_cast<std::uint32_t>(ls.num_classes()));
    for (const auto& c : ls.class_names()) put_string(out, c);
    put_u64(out, ls.size());
    for (const auto& [node, cls] : ls.assignments()) {
      put_u32(out, node);
      put_u32(out, cls);
    }
  }
  if (!out) throw IoError("write failure on " + path.string());
}

Graph load_graph_binary(const std::filesystem::path& path) {
  using namespace detail;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[8];
  if (!in.read(magic, sizeof magic) || !std::equal(magic, magic + 8, kBinaryMagic)) {
    throw ValidationError(path.string() + ": not a graph cache file");
  }
  if (const auto v = get_u32(in); v != kBinaryVersion) {
    throw ValidationError(path.string() + ": unsupported graph cache version " + std::to_string(v));
  }
  const auto flags = get_u32(in);
  const auto n = get_u64(in);
  const auto m = get_u64(in);
  Graph g;
  g.names_.resize(n);
  for (auto& s : g.names_) s = get_string(in);
  if (!std::is_sorted(g.names_.begin(), g.names_.end())) throw ValidationError("graph cache names not sorted");
  g.type_names_.resize(get_u32(in));
  for (auto& s : g.type_names_) s = get_string(in);
  g.node_types_.resize(n);
  for (auto& t : g.node_types_) {
    t = get_u32(in);
    if (t >= g.type_names_.size()) throw ValidationError("graph cache: bad node type id");
  }
  g.edge_type_names_.resize(get_u32(in));
  for (auto& s : g.edge_type_names_) s = get_string(in);
  g.offsets_.resize(n + 1);
  for (auto& o : g.offsets_) o = get_u64(in);
  if (g.offsets_.front() != 0 || g.offsets_.back() != m || !std::is_sorted(g.offsets_.begin(), g.offsets_.end())) {
    throw ValidationError("graph cache: inconsistent offsets");
  }
  g.targets_.resize(m);
  for (auto& t : g.targets_) {
    t = get_u32(in);
    if (t >= n) throw ValidationError("graph cache: edge endpoint out of range");
  }
  g.edge_types_.resize(m);
  for (auto& t : g.edge_types_) {
    t = get_u32(in);
    if (t >= g.edge_type_names_.size()) throw ValidationError("graph cache: bad edge type id");
  }
  if (flags & 1u) {
    std::vector<std::string> classes(get_u32(in));
    for (auto& c : classes) c = get_string(in);
    std::vector<std::pair<NodeIndex, ClassId>> assignments(get_u64(in));
    for (auto& [node, cls] : assignments) {
      node = get_u32(in);
      cls = get_u32(in);
    }
    g.set_labels(LabelSet(std::move(assignments), std::move(classes)));
  }
  return g;
}

}  // namespace sge
