#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "sge/error.hpp"
#include "sge/graph.hpp"
#include "support.hpp"

using namespace sge;
using namespace sge::test;

TEST_CASE("graph: two-edge path") {
  const Graph g = graph_from_edges({{"a", "b"}, {"b", "c"}});
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 2);
  const auto out = g.out_neighbors(id(g, "a"));
  REQUIRE(out.size() == 1);
  CHECK(g.name(out[0]) == "b");
  const auto from_b = g.out_neighbors(id(g, "b"));
  REQUIRE(from_b.size() == 1);
  CHECK(g.name(from_b[0]) == "c");
  CHECK(g.out_neighbors(id(g, "c")).empty());
}

TEST_CASE("graph: parallel edges are kept") {
  const Graph g = graph_from_edges({{"a", "b"}, {"a", "b"}});
  CHECK(g.num_edges() == 2);
  const auto out = g.out_neighbors(id(g, "a"));
  REQUIRE(out.size() == 2);
  CHECK(out[0] == id(g, "b"));
  CHECK(out[1] == id(g, "b"));
}

TEST_CASE("graph: isolated node and self-loop") {
  const Graph g = graph_from_edges({{"s", "s"}}, {"lonely"});
  CHECK(g.out_neighbors(id(g, "lonely")).empty());
  const auto out = g.out_neighbors(id(g, "s"));
  REQUIRE(out.size() == 1);
  CHECK(out[0] == id(g, "s"));
}

TEST_CASE("graph: out-of-range node index") {
  const Graph g = graph_from_edges({{"a", "b"}});
  CHECK_THROWS_AS(g.out_neighbors(7), IndexError);
}

TEST_CASE("graph: adjacency sorted and offsets monotone") {
  const Graph g = graph_from_edges({{"a", "d"}, {"a", "b"}, {"a", "c"}, {"a", "b"}, {"c", "a"}});
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
    const auto out = g.out_neighbors(v);
    CHECK(std::is_sorted(out.begin(), out.end()));
    for (auto t : out) CHECK(t < g.num_nodes());
  }
  CHECK(std::is_sorted(g.offsets().begin(), g.offsets().end()));
}

TEST_CASE("graph: out-degree sum equals edge count") {
  GraphBuilder b;
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    b.add_edge("n" + std::to_string(rng.below(300)), "n" + std::to_string(rng.below(300)));
  }
  const Graph g = b.build();
  std::size_t total = 0;
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) total += g.out_degree(v);
  CHECK(total == g.num_edges());
  CHECK(g.num_edges() == 2000);
}

TEST_CASE("graph: symmetrize adds reverse arcs but not for loops") {
  GraphBuilder b;
  b.add_edge("a", "b");
  b.add_edge("c", "c");
  const Graph g = b.build(true);
  CHECK(g.num_edges() == 3);
  CHECK(g.out_neighbors(id(g, "b")).size() == 1);
}

TEST_CASE("graph: node types") {
  GraphBuilder b;
  b.add_node("p1", "paper");
  b.add_node("alice", "author");
  b.add_edge("alice", "p1");
  b.add_edge("p1", "x");
  const Graph g = b.build();
  CHECK(g.node_type(id(g, "p1")) == "paper");
  CHECK(g.node_type(id(g, "alice")) == "author");
  CHECK(g.node_type(id(g, "x")) == GraphBuilder::kDefaultNodeType);

  GraphBuilder conflicting;
  conflicting.add_node("p1", "paper");
  CHECK_THROWS_AS(conflicting.add_node("p1", "venue"), ValidationError);
}

TEST_CASE("load_graph: files, comments and labels") {
  TempDir dir("graph-load");
  write_file(dir / "e.tsv", "# header\na\tb\tcites\n\nb\tc\tvenue_of\n");
  write_file(dir / "t.tsv", "a\tpaper\nb\tpaper\nc\tvenue\niso\tvenue\n");
  write_file(dir / "l.tsv", "c\tconf\niso\tjournal\n");
  const Graph g = load_graph(dir / "e.tsv", dir / "t.tsv", dir / "l.tsv");
  CHECK(g.num_nodes() == 4);
  CHECK(g.num_edges() == 2);
  CHECK(g.out_neighbors(id(g, "iso")).empty());
  REQUIRE(g.labels().has_value());
  CHECK(g.labels()->num_classes() == 2);
  CHECK(g.labels()->class_names()[*g.labels()->class_of(id(g, "c"))] == "conf");
  CHECK_FALSE(g.labels()->class_of(id(g, "a")).has_value());
  CHECK(g.edge_type_names().size() == 2);
}

TEST_CASE("load_graph: label for an unknown node is rejected") {
  TempDir dir("graph-unknown");
  write_file(dir / "e.tsv", "a\tb\n");
  write_file(dir / "l.tsv", "a\tx\nz\ty\n");
  CHECK_THROWS_AS(load_graph(dir / "e.tsv", std::nullopt, dir / "l.tsv"), ValidationError);
}

TEST_CASE("load_graph: malformed line reports its number") {
  TempDir dir("graph-parse");
  write_file(dir / "e.tsv", "a\tb\nonly_one_field\n");
  try {
    load_graph(dir / "e.tsv");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.exit_code() == ExitCode::kValidation);
  }
}

TEST_CASE("load_graph: empty and missing files") {
  TempDir dir("graph-empty");
  write_file(dir / "e.tsv", "# nothing here\n\n");
  CHECK_THROWS_AS(load_graph(dir / "e.tsv"), ValidationError);
  CHECK_THROWS_AS(load_graph(dir / "missing.tsv"), IoError);
}

TEST_CASE("load_graph: single-class label file is rejected") {
  TempDir dir("graph-oneclass");
  write_file(dir / "e.tsv", "a\tb\n");
  write_file(dir / "l.tsv", "a\tx\nb\tx\n");
  CHECK_THROWS_AS(load_graph(dir / "e.tsv", std::nullopt, dir / "l.tsv"), ValidationError);
}

TEST_CASE("graph: text round-trip reproduces the graph") {
  TempDir dir("graph-text");
  write_file(dir / "e.tsv", "a\tb\tx\nb\tc\ty\na\tb\tx\nc\ta\tx\nd\td\ty\n");
  write_file(dir / "t.tsv", "a\tpaper\nd\tvenue\nlonely\tvenue\n");
  write_file(dir / "l.tsv", "a\tk1\nd\tk2\n");
  const Graph g = load_graph(dir / "e.tsv", dir / "t.tsv", dir / "l.tsv");
  write_edge_list(g, dir / "e2.tsv");
  write_node_types(g, dir / "t2.tsv");
  write_labels(g, dir / "l2.tsv");
  const Graph again = load_graph(dir / "e2.tsv", dir / "t2.tsv", dir / "l2.tsv");
  CHECK(again == g);
}

TEST_CASE("graph: binary cache round-trip and corruption") {
  TempDir dir("graph-bin");
  GraphBuilder b;
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    b.add_edge("v" + std::to_string(rng.below(80)), "v" + std::to_string(rng.below(80)),
               rng.below(2) ? "x" : "y");
  }
  b.add_node("v3", "special");
  b.add_label("v1", "A");
  b.add_label("v2", "B");
  const Graph g = b.build();
  save_graph_binary(g, dir / "g.bin");
  CHECK(load_graph_binary(dir / "g.bin") == g);

  auto bytes = read_file(dir / "g.bin");
  write_file(dir / "bad.bin", "NOTAGRAPH" + bytes.substr(9));
  CHECK_THROWS_AS(load_graph_binary(dir / "bad.bin"), ValidationError);
  write_file(dir / "short.bin", bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS_AS(load_graph_binary(dir / "short.bin"), ValidationError);
}

TEST_CASE("graph: interning does not depend on line order") {
  std::vector<std::pair<std::string, std::string>> edges;
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    edges.emplace_back("n" + std::to_string(rng.below(50)), "n" + std::to_string(rng.below(50)));
  }
  const Graph g = graph_from_edges(edges);
  for (int trial = 0; trial < 5; ++trial) {
    auto shuffled = edges;
    rng.shuffle(shuffled.begin(), shuffled.end());
    CHECK(graph_from_edges(shuffled) == g);
  }
}
