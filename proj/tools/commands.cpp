#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "manifest.hpp"
#include "sge/bench.hpp"
#include "sge/error.hpp"
#include "sge/evaluation.hpp"
#include "sge/generators.hpp"
#include "sge/pattern_miner.hpp"
#include "sge/vectorizer.hpp"
#include "sge/walk_io.hpp"

namespace fs = std::filesystem;

namespace sge::cli {
namespace {

void warn(RunManifest& manifest, const std::string& message) {
  std::cerr << "warning: " << message << '\n';
  manifest.add_warning(message);
}

Graph load_input_graph(const GraphInput& in, RunManifest& manifest) {
  if (in.edges.empty() && in.cache.empty()) throw ValidationError("an edge file (--edges) is required");
  manifest.parameters()["edges"] = in.edges;
  manifest.parameters()["symmetrize"] = in.symmetrize;
  if (!in.cache.empty() && fs::exists(in.cache)) {
    manifest.parameters()["graph_cache"] = in.cache;
    manifest.add_input(in.cache);
    return load_graph_binary(in.cache);
  }
  auto optional_path = [](const std::string& p) { return p.empty() ? std::nullopt : std::optional<fs::path>(p); };
  Graph g = load_graph(in.edges, optional_path(in.node_types), optional_path(in.labels), {in.symmetrize});
  manifest.add_input(in.edges);
  if (!in.node_types.empty()) manifest.add_input(in.node_types);
  if (!in.labels.empty()) manifest.add_input(in.labels);
  if (!in.cache.empty()) save_graph_binary(g, in.cache);
  std::cerr << "loaded graph: " << g.num_nodes() << " nodes, " << g.num_edges() << " edges";
  if (g.labels()) std::cerr << ", " << g.labels()->size() << " labeled";
  std::cerr << '\n';
  return g;
}

SamplerConfig sampler_config(const SamplerFlags& f, unsigned workers) {
  SamplerConfig cfg;
  cfg.kind = parse_distribution_kind(f.dist);
  cfg.max_length = cfg.kind == DistributionKind::kExplicit ? f.weights.size() : f.max_length;
  cfg.samples = f.samples;
  cfg.explicit_weights = f.weights;
  cfg.seed = f.seed;
  cfg.include_start_node = f.include_start_node;
  cfg.workers = workers;
  cfg.validate();
  return cfg;
}

std::optional<std::vector<NodeIndex>> node_subset(const Graph& g, const SamplerFlags& f) {
  if (!f.subset_file.empty()) {
    std::ifstream in(f.subset_file);
    if (!in) throw IoError("cannot open " + f.subset_file);
    std::set<NodeIndex> chosen;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      auto idx = g.find(line);
      if (!idx) throw ValidationError("subset node '" + line + "' is not in the graph");
      chosen.insert(*idx);
    }
    return std::vector<NodeIndex>(chosen.begin(), chosen.end());
  }
  if (f.subset == "all") return std::nullopt;
  if (f.subset == "labeled") {
    if (!g.labels()) throw ValidationError("--subset labeled needs a label file");
    std::vector<NodeIndex> nodes;
    for (const auto& [node, cls] : g.labels()->assignments()) nodes.push_back(node);
    return nodes;
  }
  throw ValidationError("unknown node subset '" + f.subset + "' (expected all or labeled)");
}

void record_sampler(RunManifest& manifest, const SamplerConfig& cfg, const SamplerFlags& f) {
  auto& p = manifest.parameters();
  p["dist"] = std::string(to_string(cfg.kind));
  p["max_length"] = cfg.max_length;
  p["nu"] = cfg.samples;
  if (!cfg.explicit_weights.empty()) p["weights"] = cfg.explicit_weights;
  p["include_start_node"] = cfg.include_start_node;
  p["subset"] = f.subset_file.empty() ? f.subset : f.subset_file;
  manifest.set_seed(cfg.seed);
  if (cfg.kind != DistributionKind::kBfs2) {
    const auto dist = generate_sampling_vector(cfg.kind, cfg.max_length, cfg.samples, cfg.explicit_weights);
    p["realized_counts"] = dist.counts;
  }
}

WalkCorpus sample_corpus(const Graph& g, const SamplerFlags& flags, unsigned workers, RunManifest& manifest) {
  const auto cfg = sampler_config(flags, workers);
  record_sampler(manifest, cfg, flags);
  manifest.begin_stage("sample");
  WalkCorpus corpus;
  corpus.documents = sample_all(g, cfg, node_subset(g, flags));
  manifest.end_stage();
  corpus.node_names = g.names();
  corpus.params = {{"dist", std::string(to_string(cfg.kind))},
                   {"max_length", std::to_string(cfg.max_length)},
                   {"nu", std::to_string(cfg.samples)},
                   {"seed", std::to_string(cfg.seed)},
                   {"include_start_node", cfg.include_start_node ? "true" : "false"}};
  return corpus;
}

std::string manifest_path(const std::string& explicit_path, const std::string& base) {
  return explicit_path.empty() ? base + ".manifest.json" : explicit_path;
}

std::pair<std::uint64_t, std::size_t> parse_grid_point(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const auto nu = std::stoull(text.substr(0, x), &used);
    const auto s = std::stoull(text.substr(x + 1));
    return {nu, static_cast<std::size_t>(s)};
  } catch (const std::exception&) {
    throw ValidationError("grid point '" + text + "' must look like <nu>x<s>, e.g. 1000x5");
  }
}

}  // namespace

void run_sample(const SampleCommand& cmd) {
  if (cmd.out.empty()) throw ValidationError("--out is required");
  RunManifest manifest("sample");
  manifest.begin_stage("load");
  const Graph g = load_input_graph(cmd.graph, manifest);
  manifest.end_stage();
  const auto corpus = sample_corpus(g, cmd.sampler, cmd.workers, manifest);
  manifest.begin_stage("write");
  write_walk_corpus(corpus, cmd.out);
  manifest.add_output(cmd.out);
  if (!cmd.dump_walks.empty()) {
    write_walk_dump(corpus.node_names, corpus.documents, cmd.dump_walks);
    manifest.add_output(cmd.dump_walks);
  }
  manifest.end_stage();
  std::size_t tuples = 0;
  for (const auto& d : corpus.documents) tuples += d.tuples.size();
  manifest.set("documents", corpus.documents.size());
  manifest.set("tuples", tuples);
  manifest.write(manifest_path(cmd.manifest, cmd.out));
  std::cerr << "sampled " << corpus.documents.size() << " documents (" << tuples << " tuples), seed "
            << cmd.sampler.seed << '\n';
}

void run_embed(const EmbedCommand& cmd) {
  if (cmd.out_prefix.empty()) throw ValidationError("--out-prefix is required");
  RunManifest manifest("embed");
  WalkCorpus corpus;
  if (!cmd.walks.empty()) {
    manifest.begin_stage("load");
    manifest.parameters()["walks"] = cmd.walks;
    manifest.add_input(cmd.walks);
    corpus = read_walk_corpus(cmd.walks);
    manifest.end_stage();
    for (const auto& [k, v] : corpus.params) {
      manifest.parameters()["sampling." + k] = v;
      if (k == "seed") manifest.set_seed(std::stoull(v));
    }
  } else {
    manifest.begin_stage("load");
    const Graph g = load_input_graph(cmd.graph, manifest);
    manifest.end_stage();
    corpus = sample_corpus(g, cmd.sampler, cmd.workers, manifest);
  }

  const auto scheme = parse_weighting_scheme(cmd.scheme);
  auto& p = manifest.parameters();
  p["scheme"] = std::string(to_string(scheme));
  if (scheme == WeightingScheme::kFpBinary) {
    p["support"] = cmd.support;
    p["min_size"] = cmd.min_size;
    p["max_size"] = cmd.max_size;
  } else {
    p["k"] = cmd.k;
    p["d"] = cmd.d;
  }

  const std::string mtx = cmd.out_prefix + ".mtx";
  const std::string rows_path = cmd.out_prefix + ".rows";
  const std::string vocab_path = cmd.out_prefix + ".vocab.tsv";
  fs::path parent = fs::path(cmd.out_prefix).parent_path();
  if (!parent.empty()) fs::create_directories(parent);

  if (corpus.documents.empty()) {
    warn(manifest, "walk corpus has no documents; writing an empty embedding");
    export_embedding(CsrMatrix::empty(0, 0), EmbeddingFormat::kSparseText, mtx);
    write_row_names({}, rows_path);
    std::ofstream(vocab_path, std::ios::trunc) << "#kind=empty\n";
  } else {
    manifest.begin_stage("mine");
    const auto db = build_transaction_db(corpus.documents);
    PatternVocabulary vocab;
    if (scheme == WeightingScheme::kFpBinary) {
      FpGrowthOptions opts;
      opts.support = cmd.support;
      opts.min_size = cmd.min_size;
      opts.max_size = cmd.max_size;
      opts.max_patterns = cmd.max_patterns;
      opts.workers = cmd.workers;
      vocab = mine_fpgrowth(db, opts);
    } else {
      vocab = mine_kgrams(db, cmd.k, cmd.d, cmd.workers);
    }
    manifest.end_stage();
    for (const auto& w : vocab.warnings) warn(manifest, w);

    manifest.begin_stage("vectorize");
    const auto emb = represent_nodes(db, vocab, scheme, cmd.workers);
    manifest.end_stage();

    manifest.begin_stage("write");
    std::vector<std::string> row_names;
    row_names.reserve(emb.row_nodes.size());
    for (auto n : emb.row_nodes) row_names.push_back(corpus.node_names.at(n));
    export_embedding(emb.matrix, EmbeddingFormat::kSparseText, mtx);
    write_row_names(row_names, rows_path);
    write_vocabulary(vocab, db, corpus.node_names, vocab_path);
    if (cmd.dense_csv) {
      std::vector<std::string> columns;
      for (const auto& pat : vocab.patterns) columns.push_back(describe_pattern(pat, db, corpus.node_names));
      export_embedding(emb.matrix, EmbeddingFormat::kDenseCsv, cmd.out_prefix + ".csv", row_names, columns);
    }
    manifest.end_stage();

    const auto& m = emb.matrix;
    manifest.set("shape", {m.rows, m.cols});
    manifest.set("nnz", m.nnz());
    manifest.set("density", m.density());
    manifest.set("sparse_bytes", m.storage_bytes());
    manifest.set("dense_bytes", m.dense_bytes());
    std::cerr << "embedding " << m.rows << " x " << m.cols << ", nnz " << m.nnz() << " (density " << m.density()
              << "), sparse " << m.storage_bytes() << " B vs dense " << m.dense_bytes() << " B\n";
  }
  manifest.add_output(mtx);
  manifest.add_output(rows_path);
  manifest.add_output(vocab_path);
  if (cmd.dense_csv && fs::exists(cmd.out_prefix + ".csv")) manifest.add_output(cmd.out_prefix + ".csv");
  manifest.write(cmd.out_prefix + ".manifest.json");
}

void run_evaluate(const EvaluateCommand& cmd) {
  if (cmd.out_prefix.empty()) throw ValidationError("--out-prefix is required");
  if (cmd.labels.empty() || !fs::exists(cmd.labels)) {
    throw ValidationError("label file '" + cmd.labels + "' does not exist");
  }
  RunManifest manifest("evaluate");
  manifest.begin_stage("load");
  const std::string rows_path = cmd.rows.empty() ? fs::path(cmd.embedding).replace_extension(".rows").string() : cmd.rows;
  const auto matrix = import_sparse_text(cmd.embedding);
  const auto row_names = read_row_names(rows_path);
  if (row_names.size() != matrix.rows) {
    throw ValidationError("row-name file has " + std::to_string(row_names.size()) + " entries for " +
                          std::to_string(matrix.rows) + " embedding rows");
  }
  manifest.add_input(cmd.embedding);
  manifest.add_input(rows_path);
  manifest.add_input(cmd.labels);

  std::map<std::string, std::size_t> row_of;
  for (std::size_t r = 0; r < row_names.size(); ++r) row_of.emplace(row_names[r], r);
  std::vector<std::pair<std::string, std::string>> raw;
  {
    std::ifstream in(cmd.labels);
    if (!in) throw IoError("cannot open " + cmd.labels);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      const auto f = split_tabs(line);
      if (f.size() != 2 || f[0].empty() || f[1].empty()) throw ParseError(cmd.labels, line_no, "expected 'name<TAB>class'");
      raw.emplace_back(std::string(f[0]), std::string(f[1]));
    }
  }
  std::set<std::string> class_set;
  for (const auto& [n, c] : raw) class_set.insert(c);
  const std::vector<std::string> classes(class_set.begin(), class_set.end());
  if (classes.size() < 2) throw ValidationError("label file needs at least 2 classes");
  std::vector<std::pair<std::size_t, ClassId>> labeled;
  std::set<std::size_t> seen;
  for (const auto& [name, cls] : raw) {
    auto it = row_of.find(name);
    if (it == row_of.end()) throw ValidationError("labeled node '" + name + "' has no embedding row");
    if (!seen.insert(it->second).second) throw ValidationError("node '" + name + "' labeled twice");
    const auto id = static_cast<ClassId>(std::lower_bound(classes.begin(), classes.end(), cls) - classes.begin());
    labeled.emplace_back(it->second, id);
  }
  std::sort(labeled.begin(), labeled.end());
  manifest.end_stage();

  EvalConfig cfg;
  cfg.train_fractions = cmd.fractions;
  cfg.repetitions = cmd.repetitions;
  cfg.l2 = cmd.l2;
  cfg.max_iterations = cmd.max_iterations;
  cfg.multinomial = cmd.multinomial;
  cfg.cross_validation = cmd.cv;
  cfg.folds = cmd.folds;
  cfg.seed = cmd.seed;
  cfg.workers = cmd.workers;
  auto& p = manifest.parameters();
  p["fractions"] = cmd.fractions;
  p["repetitions"] = cmd.repetitions;
  p["l2"] = cmd.l2;
  p["max_iter"] = cmd.max_iterations;
  p["multinomial"] = cmd.multinomial;
  p["cv"] = cmd.cv;
  p["folds"] = cmd.folds;
  p["classes"] = classes;
  manifest.set_seed(cmd.seed);

  manifest.begin_stage("evaluate");
  const auto report = evaluate(matrix, labeled, classes.size(), cfg);
  manifest.end_stage();
  for (const auto& w : report.warnings) warn(manifest, w);

  fs::path parent = fs::path(cmd.out_prefix).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  const std::string csv = cmd.out_prefix + ".csv";
  const std::string md = cmd.out_prefix + ".md";
  write_report_csv(report, csv);
  write_report_markdown(report, md, cmd.method_name);
  manifest.add_output(csv);
  manifest.add_output(md);
  manifest.write(cmd.out_prefix + ".manifest.json");
  std::ifstream table(md);
  std::cout << table.rdbuf();
}

void run_bench(const BenchCommand& cmd) {
  RunManifest manifest("bench");
  Graph g;
  if (cmd.random_nodes > 0) {
    g = random_out_regular_graph(cmd.random_nodes, cmd.random_degree, cmd.seed);
    manifest.parameters()["random_nodes"] = cmd.random_nodes;
    manifest.parameters()["random_degree"] = cmd.random_degree;
  } else {
    g = load_input_graph(cmd.graph, manifest);
  }
  BenchConfig cfg;
  for (const auto& point : cmd.grid) cfg.grid.push_back(parse_grid_point(point));
  cfg.seed = cmd.seed;
  cfg.workers = cmd.workers;
  cfg.repeats = cmd.repeats;
  manifest.parameters()["grid"] = cmd.grid;
  manifest.set_seed(cmd.seed);
  const auto report = run_sampling_bench(g, cfg);
  std::ostringstream table;
  write_bench_table(report, table);
  std::cout << table.str();
  manifest.set("slope_seconds_per_step", report.slope);
  if (!cmd.out.empty()) {
    std::ofstream(cmd.out, std::ios::trunc) << table.str();
    manifest.add_output(cmd.out);
  }
  manifest.write(cmd.out.empty() ? std::string("bench.manifest.json") : cmd.out + ".manifest.json");
}

void run_generate(const GenerateCommand& cmd) {
  if (cmd.out_prefix.empty()) throw ValidationError("--out-prefix is required");
  Graph g;
  if (cmd.model == "sbm") {
    g = stochastic_block_model({cmd.blocks, cmd.p_in, cmd.p_out, cmd.seed});
  } else if (cmd.model == "random") {
    g = random_out_regular_graph(cmd.nodes, cmd.degree, cmd.seed);
  } else {
    throw ValidationError("unknown generator '" + cmd.model + "' (expected sbm or random)");
  }
  RunManifest manifest("generate");
  auto& p = manifest.parameters();
  p["model"] = cmd.model;
  if (cmd.model == "sbm") {
    p["blocks"] = cmd.blocks;
    p["p_in"] = cmd.p_in;
    p["p_out"] = cmd.p_out;
  } else {
    p["nodes"] = cmd.nodes;
    p["degree"] = cmd.degree;
  }
  manifest.set_seed(cmd.seed);
  fs::path parent = fs::path(cmd.out_prefix).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  write_edge_list(g, cmd.out_prefix + ".edges.tsv");
  manifest.add_output(cmd.out_prefix + ".edges.tsv");
  write_node_types(g, cmd.out_prefix + ".types.tsv");
  manifest.add_output(cmd.out_prefix + ".types.tsv");
  if (g.labels()) {
    write_labels(g, cmd.out_prefix + ".labels.tsv");
    manifest.add_output(cmd.out_prefix + ".labels.tsv");
  }
  manifest.write(cmd.out_prefix + ".manifest.json");
  std::cerr << "wrote " << g.num_nodes() << " nodes, " << g.num_edges() << " edges to " << cmd.out_prefix << ".*\n";
}

}  // namespace sge::cli
