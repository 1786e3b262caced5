#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "sge/error.hpp"
#include "sge/parallel.hpp"

namespace {

using namespace sge::cli;

void add_graph_flags(CLI::App* app, GraphInput& g, bool required) {
  auto* edges = app->add_option("--edges", g.edges, "Edge list: src<TAB>dst[<TAB>edge_type] per line");
  if (required) edges->required();
  app->add_option("--node-types", g.node_types, "Node types: name<TAB>type per line");
  app->add_option("--labels", g.labels, "Node labels: name<TAB>class per line");
  app->add_flag("--symmetrize", g.symmetrize, "Add the reverse of every edge");
  app->add_option("--graph-cache", g.cache, "Binary graph cache; read if present, written otherwise");
}

void add_sampler_flags(CLI::App* app, SamplerFlags& f) {
  app->add_option("--dist", f.dist, "Walk length distribution")
      ->check(CLI::IsMember({"uniform", "explicit", "bfs2"}))
      ->capture_default_str();
  app->add_option("-s,--max-length", f.max_length, "s: maximum walk length")->capture_default_str();
  app->add_option("--nu", f.samples, "nu: walks sampled per node")->capture_default_str();
  app->add_option("--weights", f.weights, "Explicit length weights w_1..w_s (comma separated, sum 1)")
      ->delimiter(',');
  app->add_option("--seed", f.seed, "Master random seed")->capture_default_str();
  app->add_flag("--include-start-node", f.include_start_node, "Prefix every walk with (start,0)");
  app->add_option("--subset", f.subset, "Nodes to sample")
      ->check(CLI::IsMember({"all", "labeled"}))
      ->capture_default_str();
  app->add_option("--subset-file", f.subset_file, "File with one node name per line to sample");
}

void add_workers(CLI::App* app, unsigned& workers) {
  app->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)")
      ->envname("SGE_WORKERS")
      ->capture_default_str();
}

int exit_with(sge::ExitCode code, const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return static_cast<int>(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic graph embeddings from sampled walks"};
  app.set_version_flag("--version", std::string(SGE_VERSION));
  app.set_config("--config", "", "TOML/INI file; keys match long flag names under a [<subcommand>] section");
  app.require_subcommand(1);
  app.fallthrough();

  SampleCommand sample;
  auto* sample_app = app.add_subcommand("sample", "Sample walk documents for every node");
  add_graph_flags(sample_app, sample.graph, false);
  add_sampler_flags(sample_app, sample.sampler);
  add_workers(sample_app, sample.workers);
  sample_app->add_option("--out", sample.out, "Walk corpus output")->required();
  sample_app->add_option("--dump-walks", sample.dump_walks, "Also write the (neighbor,order):count debug dump");
  sample_app->add_option("--manifest", sample.manifest, "Manifest path (default <out>.manifest.json)");

  EmbedCommand embed;
  auto* embed_app = app.add_subcommand("embed", "Mine patterns and build the sparse node-by-pattern matrix");
  embed_app->add_option("--walks", embed.walks, "Walk corpus from `sample`; otherwise sample from --edges");
  add_graph_flags(embed_app, embed.graph, false);
  add_sampler_flags(embed_app, embed.sampler);
  add_workers(embed_app, embed.workers);
  embed_app->add_option("--scheme", embed.scheme, "Weighting: binary, tf, tfidf (k-grams) or fp-growth (itemsets)")
      ->check(CLI::IsMember({"binary", "tf", "tfidf", "tf-idf", "fp-growth", "fp_binary"}))
      ->capture_default_str();
  embed_app->add_option("-k", embed.k, "k: longest contiguous n-gram length")->capture_default_str();
  embed_app->add_option("-d", embed.d, "d: number of most frequent k-grams kept")->capture_default_str();
  embed_app->add_option("--support", embed.support, "Minimum document support for itemsets")
      ->capture_default_str();
  embed_app->add_option("--min-size", embed.min_size, "Smallest itemset size kept (0 = no bound)");
  embed_app->add_option("--max-size", embed.max_size, "Largest itemset size mined (0 = no bound)");
  embed_app->add_option("--max-patterns", embed.max_patterns, "Abort when more itemsets than this are found")
      ->capture_default_str();
  embed_app->add_flag("--dense-csv", embed.dense_csv, "Also write a dense CSV with pattern column names");
  embed_app->add_option("--out-prefix", embed.out_prefix, "Writes <prefix>.mtx/.rows/.vocab.tsv/.manifest.json")
      ->required();

  EvaluateCommand eval;
  auto* eval_app = app.add_subcommand("evaluate", "Node classification with logistic regression");
  eval_app->add_option("--embedding", eval.embedding, "Sparse-text embedding (.mtx)")->required();
  eval_app->add_option("--rows", eval.rows, "Row names (default: embedding path with .rows)");
  eval_app->add_option("--labels", eval.labels, "Node labels: name<TAB>class")->required();
  eval_app->add_option("--fractions", eval.fractions, "Training fractions")->delimiter(',');
  eval_app->add_option("--repetitions", eval.repetitions, "Random splits per fraction")->capture_default_str();
  eval_app->add_option("--l2", eval.l2, "L2 regularization strength")->capture_default_str();
  eval_app->add_option("--max-iter", eval.max_iterations, "Optimizer iteration cap")->capture_default_str();
  eval_app->add_flag("--multinomial", eval.multinomial, "Softmax instead of one-vs-rest");
  eval_app->add_flag("--cv", eval.cv, "Stratified k-fold cross-validation instead of fraction splits");
  eval_app->add_option("--folds", eval.folds, "Folds for --cv")->capture_default_str();
  eval_app->add_option("--seed", eval.seed, "Split seed")->capture_default_str();
  eval_app->add_option("--method-name", eval.method_name, "Row label in the markdown table")->capture_default_str();
  add_workers(eval_app, eval.workers);
  eval_app->add_option("--out-prefix", eval.out_prefix, "Writes <prefix>.csv/.md/.manifest.json")->required();

  BenchCommand bench;
  auto* bench_app = app.add_subcommand("bench", "Time walk sampling across (nu, s) settings");
  add_graph_flags(bench_app, bench.graph, false);
  bench_app->add_option("--random-nodes", bench.random_nodes, "Use a random out-regular graph with this many nodes");
  bench_app->add_option("--random-degree", bench.random_degree, "Out-degree of the random graph")
      ->capture_default_str();
  bench_app->add_option("--grid", bench.grid, "Settings as <nu>x<s>")->delimiter(',')->capture_default_str();
  bench_app->add_option("--seed", bench.seed, "Sampling seed")->capture_default_str();
  bench_app->add_option("--repeats", bench.repeats, "Timed repeats per setting (minimum kept)")
      ->capture_default_str();
  bench_app->add_option("--out", bench.out, "Write the timing table here");
  add_workers(bench_app, bench.workers);

  GenerateCommand gen;
  auto* gen_app = app.add_subcommand("generate", "Write a synthetic labeled graph");
  gen_app->add_option("model", gen.model, "sbm or random")
      ->check(CLI::IsMember({"sbm", "random"}))
      ->capture_default_str();
  gen_app->add_option("--blocks", gen.blocks, "SBM block sizes")->delimiter(',');
  gen_app->add_option("--p-in", gen.p_in, "SBM within-block edge probability")->capture_default_str();
  gen_app->add_option("--p-out", gen.p_out, "SBM between-block edge probability")->capture_default_str();
  gen_app->add_option("--nodes", gen.nodes, "Random graph size")->capture_default_str();
  gen_app->add_option("--degree", gen.degree, "Random graph out-degree")->capture_default_str();
  gen_app->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_app->add_option("--out-prefix", gen.out_prefix, "Writes <prefix>.edges.tsv/.types.tsv/.labels.tsv")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(sge::ExitCode::kValidation);
  }

  try {
    if (*sample_app) run_sample(sample);
    else if (*embed_app) run_embed(embed);
    else if (*eval_app) run_evaluate(eval);
    else if (*bench_app) run_bench(bench);
    else if (*gen_app) run_generate(gen);
  } catch (const sge::Error& e) {
    return exit_with(e.exit_code(), e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return exit_with(sge::ExitCode::kIo, e.what());
  } catch (const std::bad_alloc&) {
    return exit_with(sge::ExitCode::kInternal, "out of memory");
  } catch (const std::exception& e) {
    return exit_with(sge::ExitCode::kInternal, e.what());
  }
  return 0;
}
