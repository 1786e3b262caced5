#include <sstream>

#include "doctest.h"
#include "sge/bench.hpp"
#include "sge/error.hpp"
#include "sge/generators.hpp"

using namespace sge;

TEST_CASE("bench: one row per configuration") {
  const Graph g = random_out_regular_graph(200, 3, 2);
  BenchConfig cfg;
  cfg.grid = {{100, 5}, {1000, 5}};
  const auto report = run_sampling_bench(g, cfg);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].tuples == 200u * 100 * 3);
  CHECK(report.rows[1].tuples == 200u * 1000 * 3);
  CHECK(report.rows[1].work == doctest::Approx(10 * report.rows[0].work));
  std::ostringstream table;
  write_bench_table(report, table);
  CHECK(table.str().find("ratio") != std::string::npos);

  cfg.grid = {{10, 2}};
  CHECK(run_sampling_bench(g, cfg).rows.size() == 1);
}

TEST_CASE("bench: degenerate inputs") {
  BenchConfig cfg;
  cfg.grid = {{10, 2}};
  CHECK_THROWS_AS(run_sampling_bench(Graph{}, cfg), ValidationError);
  cfg.grid.clear();
  CHECK_THROWS_AS(run_sampling_bench(random_out_regular_graph(5, 1, 0), cfg), ValidationError);
}
