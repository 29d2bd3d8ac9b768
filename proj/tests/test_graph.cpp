#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <zlib.h>

#include "ccsub/error.hpp"
#include "ccsub/graph.hpp"
#include "ccsub/oracle.hpp"
#include "support.hpp"

using namespace ccsub;

TEST_CASE("edgelist parsing") {
  const Graph g = parse_graph("0 1\n1 2", GraphFormat::edgelist);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);

  const Graph h = parse_graph("# comment\n% other\n2 1\n1 2\n3 3\n\n0 1\n", GraphFormat::edgelist);
  CHECK(h.node_count() == 4);
  CHECK(h.edge_count() == 2);
  CHECK(h.duplicates_dropped() == 1);
  CHECK(h.self_loops_dropped() == 1);
  CHECK(h.degree(1) == 2);
}

TEST_CASE("dimacs matches the reindexed edge list") {
  const Graph a = parse_graph("0 1\n1 2", GraphFormat::edgelist);
  const Graph b = parse_graph("c test\np edge 3 2\ne 1 2\ne 2 3\n", GraphFormat::dimacs);
  CHECK(b.node_count() == 3);
  CHECK(std::ranges::equal(a.edges(), b.edges()));
}

TEST_CASE("matrix market") {
  const Graph g = parse_graph("%%MatrixMarket matrix coordinate pattern symmetric\n% c\n3 3 2\n2 1\n3 2\n",
                              GraphFormat::mtx);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK_THROWS_AS(parse_graph("3 4 1\n1 2\n", GraphFormat::mtx), ParseError);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_graph("0 1\n1 x\n", GraphFormat::edgelist);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  try {
    parse_graph("p edge 3 1\ne 1 4\n", GraphFormat::dimacs);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_graph("e 1 2\n", GraphFormat::dimacs), ParseError);
  CHECK_THROWS_AS(parse_graph_format("gml"), InputError);
  CHECK(parse_graph_format("dimacs") == GraphFormat::dimacs);
}

TEST_CASE("graph constructor rejects out-of-range endpoints") {
  CHECK_THROWS_AS(Graph(2, {{0, 2}}), InputError);
}

TEST_CASE("serialize and reparse is idempotent") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = ccsub::testing::erdos_renyi(50, 0.1, seed);
    std::ostringstream once;
    write_edgelist(once, g);
    const Graph h = parse_graph(once.str(), GraphFormat::edgelist);
    std::ostringstream twice;
    write_edgelist(twice, h);
    CHECK(once.str() == twice.str());
    CHECK(std::ranges::equal(g.edges(), h.edges()));
  }
}

TEST_CASE("gzip input is detected by magic bytes") {
  const std::string text = "0 1\n1 2\n2 3\n";
  const auto dir = std::filesystem::temp_directory_path();
  const auto plain = dir / "ccsub_graph_plain.txt";
  const auto packed = dir / "ccsub_graph_packed.txt.gz";
  {
    std::ofstream(plain) << text;
    gzFile gz = gzopen(packed.c_str(), "wb");
    REQUIRE(gz != nullptr);
    gzwrite(gz, text.data(), static_cast<unsigned>(text.size()));
    gzclose(gz);
  }
  const Graph a = read_graph_file(plain, GraphFormat::edgelist);
  const Graph b = read_graph_file(packed, GraphFormat::edgelist);
  CHECK(a.edge_count() == 3);
  CHECK(std::ranges::equal(a.edges(), b.edges()));
  CHECK_THROWS_AS(read_graph_file(dir / "ccsub_no_such_file", GraphFormat::edgelist), std::ios_base::failure);
  std::filesystem::remove(plain);
  std::filesystem::remove(packed);
}

TEST_CASE("degree dispersions") {
  const auto star = degree_dispersions(ccsub::testing::star(5));
  CHECK(star[0] == doctest::Approx(0.5));
  for (std::size_t v = 1; v < 6; ++v) CHECK(star[v] == doctest::Approx(0.1));

  std::vector<Edge> ring;
  for (NodeId v = 0; v < 12; ++v) ring.emplace_back(v, (v + 1) % 12);
  for (double d : degree_dispersions(Graph(12, ring))) CHECK(d == doctest::Approx(1.0 / 12));

  const auto er = degree_dispersions(ccsub::testing::erdos_renyi(80, 0.1, 2));
  CHECK(std::abs(std::accumulate(er.begin(), er.end(), 0.0) - 1.0) <= 1e-12);

  CHECK_THROWS_AS(degree_dispersions(Graph(3, {})), std::domain_error);
}

TEST_CASE("proxy generators have the intended shape") {
  const Graph pa = ccsub::testing::preferential_attachment(4039, 22, 0);
  CHECK(pa.node_count() == 4039);
  CHECK(pa.edge_count() > 80000);
  CHECK(symmetrized_arcs(pa).size() == 2 * pa.edge_count());
}
