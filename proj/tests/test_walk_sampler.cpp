#include <algorithm>
#include <map>
#include <numeric>

#include "doctest.h"
#include "sge/error.hpp"
#include "sge/generators.hpp"
#include "sge/walk_sampler.hpp"
#include "support.hpp"

using namespace sge;
using namespace sge::test;

namespace {

std::map<WalkTuple, std::uint32_t> as_map(const NodeDocument& doc) {
  std::map<WalkTuple, std::uint32_t> m;
  for (const auto& [t, c] : doc.multiset()) m[t] = c;
  return m;
}

}  // namespace

TEST_CASE("sampling vector: explicit weights") {
  const std::vector<double> w{0.2, 0, 0.5, 0.3};
  const auto dist = generate_sampling_vector(DistributionKind::kExplicit, 4, 100, w);
  CHECK(dist.counts == std::vector<std::uint64_t>{20, 0, 50, 30});
  CHECK(dist.max_length() == 4);
  CHECK(dist.mean_length() == doctest::Approx(2.9));
}

TEST_CASE("sampling vector: uniform") {
  const auto dist = generate_sampling_vector(DistributionKind::kUniform, 4, 100);
  CHECK(dist.counts == std::vector<std::uint64_t>{25, 25, 25, 25});
}

TEST_CASE("sampling vector: rounding always sums to nu") {
  for (std::uint64_t nu : {1u, 2u, 7u, 99u, 1000u}) {
    for (std::size_t s = 1; s <= 9; ++s) {
      const auto dist = generate_sampling_vector(DistributionKind::kUniform, s, nu);
      CHECK(std::accumulate(dist.counts.begin(), dist.counts.end(), std::uint64_t{0}) == nu);
      const auto [lo, hi] = std::minmax_element(dist.counts.begin(), dist.counts.end());
      CHECK(*hi - *lo <= 1);
      CHECK(std::is_sorted(dist.counts.rbegin(), dist.counts.rend()));
    }
  }
  const std::vector<double> w{1.0 / 3, 1.0 / 3, 1.0 / 3};
  CHECK(generate_sampling_vector(DistributionKind::kExplicit, 3, 10, w).counts ==
        std::vector<std::uint64_t>{4, 3, 3});
}

TEST_CASE("sampling vector: invalid weights") {
  const std::vector<double> bad_sum{0.5, 0.6};
  CHECK_THROWS_AS(generate_sampling_vector(DistributionKind::kExplicit, 2, 100, bad_sum), ValidationError);
  const std::vector<double> negative{1.5, -0.5};
  CHECK_THROWS_AS(generate_sampling_vector(DistributionKind::kExplicit, 2, 100, negative), ValidationError);
  CHECK_THROWS_AS(generate_sampling_vector(DistributionKind::kExplicit, 0, 100, {}), ValidationError);
  CHECK_THROWS_AS(generate_sampling_vector(DistributionKind::kUniform, 0, 100), ValidationError);
  CHECK_THROWS_AS(parse_distribution_kind("gaussian"), ValidationError);
}

TEST_CASE("walk: deterministic shapes") {
  Rng rng(1);
  const Graph path = graph_from_edges({{"a", "b"}, {"b", "c"}});
  CHECK(walk(path, id(path, "a"), 2, rng) ==
        std::vector<WalkTuple>{{id(path, "b"), 1}, {id(path, "c"), 2}});
  CHECK(walk(path, id(path, "a"), 5, rng).size() == 2);

  const Graph loop = graph_from_edges({{"n", "n"}});
  CHECK(walk(loop, 0, 3, rng) == std::vector<WalkTuple>{{0, 1}, {0, 2}, {0, 3}});

  const Graph iso = graph_from_edges({{"a", "b"}}, {"z"});
  CHECK(walk(iso, id(iso, "z"), 5, rng).empty());
}

TEST_CASE("sample_node: deterministic documents") {
  Rng rng(2);
  const Graph chain = graph_from_edges({{"a", "b"}});
  WalkDistributionVector two_short{{1.0}, 2, {2}};
  auto doc = sample_node(chain, id(chain, "a"), two_short, rng);
  CHECK(as_map(doc) == std::map<WalkTuple, std::uint32_t>{{{id(chain, "b"), 1}, 2}});
  CHECK(doc.num_walks() == 2);

  const Graph iso = graph_from_edges({{"a", "b"}}, {"z"});
  CHECK(sample_node(iso, id(iso, "z"), two_short, rng).empty());
  CHECK(sample_node(iso, id(iso, "z"), two_short, rng).num_walks() == 0);

  const Graph loop = graph_from_edges({{"n", "n"}});
  WalkDistributionVector one_long{{0.0, 1.0}, 1, {0, 1}};
  CHECK(as_map(sample_node(loop, 0, one_long, rng)) == std::map<WalkTuple, std::uint32_t>{{{0, 1}, 1}, {{0, 2}, 1}});
}

TEST_CASE("sample_node: include_start_node prefixes each walk") {
  Rng rng(2);
  const Graph chain = graph_from_edges({{"a", "b"}});
  WalkDistributionVector dist{{1.0}, 3, {3}};
  const auto doc = sample_node(chain, id(chain, "a"), dist, rng, true);
  REQUIRE(doc.num_walks() == 3);
  for (std::size_t i = 0; i < doc.num_walks(); ++i) {
    const auto w = doc.walk(i);
    REQUIRE(w.size() == 2);
    CHECK(w[0] == WalkTuple{id(chain, "a"), 0});
    CHECK(w[1] == WalkTuple{id(chain, "b"), 1});
  }
}

TEST_CASE("sample_node: histogram conformance and order bounds") {
  const Graph g = random_out_regular_graph(200, 4, 9);
  const std::vector<double> w{0.1, 0.2, 0.3, 0.15, 0.25};
  const auto dist = generate_sampling_vector(DistributionKind::kExplicit, 5, 137, w);
  Rng rng(77);
  for (NodeIndex v = 0; v < 20; ++v) {
    const auto doc = sample_node(g, v, dist, rng);
    // No dead ends here, so walk i has exactly the length it was asked for.
    std::vector<std::uint64_t> realized(5, 0);
    for (std::size_t i = 0; i < doc.num_walks(); ++i) {
      const auto walk_i = doc.walk(i);
      REQUIRE(!walk_i.empty());
      ++realized[walk_i.size() - 1];
      for (std::size_t j = 0; j < walk_i.size(); ++j) {
        CHECK(walk_i[j].order == j + 1);
        CHECK(walk_i[j].order <= walk_i.size());
      }
    }
    CHECK(realized == dist.counts);
  }
}

TEST_CASE("walk: uniform neighbor law") {
  const Graph g = graph_from_edges({{"a", "x"}, {"a", "y"}});
  Rng rng(derive_seed(123, 0));
  std::size_t hits = 0;
  const std::size_t trials = 10'000;
  for (std::size_t i = 0; i < trials; ++i) hits += walk(g, id(g, "a"), 1, rng).at(0).node == id(g, "x");
  const double freq = static_cast<double>(hits) / trials;
  CHECK(std::abs(freq - 0.5) <= 0.02);
}

TEST_CASE("sample_document: 3-cycle with one step") {
  const Graph g = graph_from_edges({{"a", "b"}, {"b", "c"}, {"c", "a"}});
  SamplerConfig cfg;
  cfg.max_length = 1;
  cfg.samples = 10;
  const auto docs = sample_all(g, cfg);
  REQUIRE(docs.size() == 3);
  CHECK(as_map(docs[id(g, "a")]) == std::map<WalkTuple, std::uint32_t>{{{id(g, "b"), 1}, 10}});
}

TEST_CASE("sample_all: isolated nodes give empty documents") {
  GraphBuilder b;
  b.add_node("p");
  b.add_node("q");
  const Graph g = b.build();
  const auto docs = sample_all(g, SamplerConfig{});
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].empty());
  CHECK(docs[1].empty());
}

TEST_CASE("sample_all: deterministic across runs and worker counts") {
  const Graph g = random_out_regular_graph(400, 3, 21);
  SamplerConfig cfg;
  cfg.samples = 50;
  cfg.seed = 99;
  cfg.workers = 1;
  const auto serial = sample_all(g, cfg);
  CHECK(sample_all(g, cfg) == serial);
  for (unsigned workers : {2u, 3u, 8u}) {
    cfg.workers = workers;
    CHECK(sample_all(g, cfg) == serial);
  }
  cfg.seed = 100;
  CHECK(sample_all(g, cfg) != serial);
}

TEST_CASE("sample_all: subset keeps the requested order") {
  const Graph g = random_out_regular_graph(50, 2, 4);
  SamplerConfig cfg;
  cfg.samples = 20;
  const auto all = sample_all(g, cfg);
  const std::vector<NodeIndex> subset{7, 3, 41};
  const auto some = sample_all(g, cfg, subset);
  REQUIRE(some.size() == 3);
  for (std::size_t i = 0; i < subset.size(); ++i) CHECK(some[i] == all[subset[i]]);
}

TEST_CASE("bfs2 documents") {
  const Graph star = graph_from_edges({{"a", "b"}, {"a", "c"}});
  CHECK(as_map(sample_bfs2(star, id(star, "a"))) ==
        std::map<WalkTuple, std::uint32_t>{{{id(star, "b"), 1}, 1}, {{id(star, "c"), 1}, 1}});

  const Graph path = graph_from_edges({{"a", "b"}, {"b", "c"}});
  CHECK(as_map(sample_bfs2(path, id(path, "a"))) ==
        std::map<WalkTuple, std::uint32_t>{{{id(path, "b"), 1}, 1}, {{id(path, "c"), 2}, 1}});

  const Graph iso = graph_from_edges({{"a", "b"}}, {"z"});
  CHECK(sample_bfs2(iso, id(iso, "z")).empty());

  // Duplicated neighbors and several two-hop paths collapse to one tuple each.
  const Graph multi = graph_from_edges({{"a", "b"}, {"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
  const auto doc = sample_bfs2(multi, id(multi, "a"));
  CHECK(as_map(doc).size() == 3);
  CHECK(doc.num_walks() == 3);
}

TEST_CASE("sampler config validation") {
  SamplerConfig cfg;
  cfg.samples = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.samples = 10;
  cfg.max_length = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}
