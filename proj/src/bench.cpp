#include "sge/bench.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <numeric>

#include "sge/error.hpp"
#include "sge/walk_sampler.hpp"

namespace sge {

BenchReport run_sampling_bench(const Graph& graph, const BenchConfig& config) {
  if (graph.num_nodes() == 0 || graph.num_edges() == 0) throw ValidationError("cannot benchmark an empty graph");
  if (config.grid.empty()) throw ValidationError("benchmark grid is empty");
  std::vector<NodeIndex> nodes(graph.num_nodes());
  std::iota(nodes.begin(), nodes.end(), NodeIndex{0});

  BenchReport report;
  for (const auto& [samples, max_length] : config.grid) {
    SamplerConfig cfg;
    cfg.kind = DistributionKind::kUniform;
    cfg.samples = samples;
    cfg.max_length = max_length;
    cfg.seed = config.seed;
    cfg.workers = config.workers;
    const auto dist = generate_sampling_vector(cfg.kind, max_length, samples);

    BenchRow row;
    row.samples = samples;
    row.max_length = max_length;
    row.mean_length = dist.mean_length();
    row.work = static_cast<double>(graph.num_nodes()) * static_cast<double>(samples) * row.mean_length;
    row.seconds = -1.0;
    for (std::size_t rep = 0; rep < std::max<std::size_t>(1, config.repeats); ++rep) {
      std::atomic<std::uint64_t> tuples{0};
      const auto t0 = std::chrono::steady_clock::now();
      for_each_document(graph, cfg, nodes,
                        [&](std::size_t, NodeDocument&& doc) { tuples.fetch_add(doc.tuples.size(), std::memory_order_relaxed); });
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (row.seconds < 0.0 || s < row.seconds) row.seconds = s;
      row.tuples = tuples.load();
    }
    report.rows.push_back(row);
  }

  const double n = static_cast<double>(report.rows.size());
  if (report.rows.size() == 1) {
    report.slope = report.rows[0].work > 0 ? report.rows[0].seconds / report.rows[0].work : 0.0;
  } else {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : report.rows) {
      sx += r.work;
      sy += r.seconds;
      sxx += r.work * r.work;
      sxy += r.work * r.seconds;
    }
    const double denom = n * sxx - sx * sx;
    report.slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    report.intercept = (sy - report.slope * sx) / n;
  }
  return report;
}

void write_bench_table(const BenchReport& report, std::ostream& out) {
  out << "samples\tmax_length\tmean_length\twork\ttuples\tseconds\tratio_vs_first\twork_ratio\n";
  const auto& first = report.rows.front();
  for (const auto& r : report.rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%llu\t%zu\t%.3f\t%.6g\t%llu\t%.6f\t%.3f\t%.3f\n",
                  static_cast<unsigned long long>(r.samples), r.max_length, r.mean_length, r.work,
                  static_cast<unsigned long long>(r.tuples), r.seconds,
                  first.seconds > 0 ? r.seconds / first.seconds : 0.0, first.work > 0 ? r.work / first.work : 0.0);
    out << buf;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "# linear fit: seconds = %.6g + %.6g * work\n", report.intercept, report.slope);
  out << buf;
}

}  // namespace sge
