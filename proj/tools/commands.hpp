#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sge/walk_sampler.hpp"

namespace sge::cli {

struct GraphInput {
  std::string edges;
  std::string node_types;
  std::string labels;
  std::string cache;
  bool symmetrize = false;
};

struct SamplerFlags {
  std::string dist = "uniform";
  std::size_t max_length = 5;
  std::uint64_t samples = 1000;
  std::vector<double> weights;
  std::uint64_t seed = 0;
  bool include_start_node = false;
  /// "all" or "labeled"
  std::string subset = "all";
  std::string subset_file;
};

struct SampleCommand {
  GraphInput graph;
  SamplerFlags sampler;
  std::string out;
  std::string dump_walks;
  std::string manifest;
  unsigned workers = 0;
};

struct EmbedCommand {
  std::string walks;
  GraphInput graph;
  SamplerFlags sampler;
  std::string scheme = "binary";
  std::size_t k = 3;
  std::size_t d = 3000;
  std::uint64_t support = 3;
  std::size_t min_size = 0;
  std::size_t max_size = 0;
  std::size_t max_patterns = 10'000'000;
  std::string out_prefix;
  bool dense_csv = false;
  unsigned workers = 0;
};

struct EvaluateCommand {
  std::string embedding;
  std::string rows;
  std::string labels;
  std::vector<double> fractions{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t repetitions = 10;
  double l2 = 1.0;
  std::size_t max_iterations = 500;
  bool multinomial = false;
  bool cv = false;
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  std::string out_prefix;
  std::string method_name = "SGE";
  unsigned workers = 0;
};

struct BenchCommand {
  GraphInput graph;
  std::size_t random_nodes = 0;
  std::size_t random_degree = 10;
  std::vector<std::string> grid{"100x5", "1000x5"};
  std::uint64_t seed = 0;
  std::size_t repeats = 1;
  std::string out;
  unsigned workers = 0;
};

struct GenerateCommand {
  std::string model = "sbm";
  std::vector<std::size_t> blocks{100, 100, 100};
  double p_in = 0.1;
  double p_out = 0.005;
  std::size_t nodes = 1000;
  std::size_t degree = 10;
  std::uint64_t seed = 0;
  std::string out_prefix;
};

void run_sample(const SampleCommand& cmd);
void run_embed(const EmbedCommand& cmd);
void run_evaluate(const EvaluateCommand& cmd);
void run_bench(const BenchCommand& cmd);
void run_generate(const GenerateCommand& cmd);

}  // namespace sge::cli
