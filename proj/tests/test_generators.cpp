#include <doctest.h>

#include <queue>
#include <random>

#include "parcc/generators.hpp"
#include "parcc/union_find.hpp"
#include "support.hpp"

using namespace parcc;
using namespace parcc::testing;

namespace {

std::vector<Edge> undirected(const GeneratorSpec& spec, int rho) {
  return concat(run_team(rho, [&](TeamContext& ctx) { return generate_undirected(ctx, spec); }));
}

std::vector<Edge> sorted(std::vector<Edge> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_SUITE("graph_io_gen") {

TEST_CASE("grid and path edge counts") {
  CHECK(undirected(grid_spec(3, 3), 2).size() == 12);
  CHECK(generated_arcs(grid_spec(3, 3)).size() == 24);
  CHECK(undirected(grid_spec(128, 128), 4).size() == 2 * 128 * 127);
  const auto p = undirected(path_spec(10), 3);
  CHECK(p.size() == 9);
  CHECK(undirected(path_spec(1), 2).empty());
}

TEST_CASE("rmat edge count, id range and skew") {
  const auto e = undirected(rmat_spec(10, 16, 5), 3);
  CHECK(e.size() == 16 * 1024);
  std::uint64_t low_quadrant = 0;
  for (const auto& x : e) {
    CHECK(x.src < 1024);
    CHECK(x.dst < 1024);
    low_quadrant += (x.src < 512 && x.dst < 512) ? 1 : 0;
  }
  // The top-left quadrant is hit with probability 0.57 at the first level.
  CHECK(static_cast<double>(low_quadrant) / static_cast<double>(e.size()) == doctest::Approx(0.57).epsilon(0.05));
  CHECK_THROWS_AS(validate(rmat_spec(33, 16, 1)), std::invalid_argument);
}

TEST_CASE("output does not depend on the team size and follows the seed") {
  for (const auto& spec : {rmat_spec(8, 4, 3), er_spec(500, 3.0, 3), forest_spec(40, 6, 3),
                           chunglu_spec(300, 3, 2.3, 3), grid_spec(7, 5), path_spec(33)}) {
    const auto one = sorted(undirected(spec, 1));
    CHECK(sorted(undirected(spec, 4)) == one);
    CHECK(sorted(undirected(spec, 3)) == one);
    CHECK(undirected(spec, 2) == undirected(spec, 2));
  }
  CHECK(undirected(rmat_spec(8, 4, 3), 1) != undirected(rmat_spec(8, 4, 4), 1));
}

TEST_CASE("er edge density and simple-graph shape") {
  const auto e = undirected(er_spec(2000, 8.0, 1), 4);
  const double expected = 8.0 * 2000 / 2;
  CHECK(static_cast<double>(e.size()) == doctest::Approx(expected).epsilon(0.05));
  for (const auto& x : e) CHECK(x.dst < x.src);
  auto s = sorted(e);
  CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  GeneratorSpec full = er_spec(10, 1.0, 1);
  full.p = 1.0;
  CHECK(undirected(full, 2).size() == 45);
  full.p = 0.0;
  CHECK(undirected(full, 2).empty());
}

TEST_CASE("forest has the requested components") {
  const auto oracle = union_find_oracle(generated_arcs(forest_spec(1000, 2, 1)));
  CHECK(oracle.component_count == 1000);
  const auto f = union_find_oracle(generated_arcs(forest_spec(300, 7, 2)));
  CHECK(f.component_count == 300);
  CHECK(f.entries.size() == 2100);
  CHECK_THROWS_AS(validate(forest_spec(10, 1, 1)), std::invalid_argument);
}

TEST_CASE("union-find oracle agrees with an independent BFS labeling") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint64_t n = 40;
    std::vector<Edge> edges;
    const auto m = rng() % 40;
    for (std::uint64_t i = 0; i < m; ++i) edges.push_back({rng() % n, rng() % n});
    const auto arcs = arc_pairs(edges);
    const auto oracle = union_find_oracle(arcs);

    std::vector<std::vector<VertexId>> g(n);
    std::vector<bool> present(n, false);
    for (const auto& a : arcs) {
      g[a.src].push_back(a.dst);
      present[a.src] = true;
    }
    std::vector<VertexId> label(n, ~VertexId{0});
    for (VertexId s = 0; s < n; ++s) {
      if (!present[s] || label[s] != ~VertexId{0}) continue;
      std::queue<VertexId> q;
      q.push(s);
      label[s] = s;  // s is the smallest unlabeled id, hence the component minimum
      while (!q.empty()) {
        auto v = q.front();
        q.pop();
        for (auto w : g[v]) {
          if (label[w] == ~VertexId{0}) {
            label[w] = s;
            q.push(w);
          }
        }
      }
    }
    std::vector<LabelEntry> expected;
    for (VertexId v = 0; v < n; ++v) {
      if (present[v]) expected.push_back({v, label[v]});
    }
    CHECK(oracle.entries == expected);
  }
  CHECK(union_find_oracle(arc_pairs({{5, 2}, {5, 9}})).component_count == 1);
}

TEST_CASE("generator names round-trip") {
  for (auto k : {GraphKind::kRmat, GraphKind::kGrid, GraphKind::kPath, GraphKind::kEr, GraphKind::kForest,
                 GraphKind::kChungLu}) {
    CHECK(parse_graph_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_graph_kind("torus"), std::invalid_argument);
}

}
