#pragma once

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "sge/graph.hpp"

namespace sge {

struct BenchConfig {
  /// (samples per node, maximum walk length) pairs, uniform distribution.
  std::vector<std::pair<std::uint64_t, std::size_t>> grid;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  /// Each configuration is timed this many times; the fastest run is kept.
  std::size_t repeats = 1;
};

struct BenchRow {
  std::uint64_t samples = 0;
  std::size_t max_length = 0;
  double mean_length = 0.0;
  /// |N| * samples * mean_length: the predicted amount of work.
  double work = 0.0;
  std::uint64_t tuples = 0;
  double seconds = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  /// Least-squares fit seconds ~ intercept + slope * work.
  double slope = 0.0;
  double intercept = 0.0;
};

/// Times whole-graph sampling for every grid point. Documents are generated
/// and discarded, so memory stays flat. Throws ValidationError on an empty graph.
BenchReport run_sampling_bench(const Graph& graph, const BenchConfig& config);

void write_bench_table(const BenchReport& report, std::ostream& out);

}  // namespace sge
