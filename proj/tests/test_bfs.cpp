#include <doctest.h>

#include <queue>

#include "parcc/bfs.hpp"
#include "parcc/union_find.hpp"
#include "support.hpp"

using namespace parcc;
using namespace parcc::testing;

namespace {

std::vector<DenseArc> dense(const std::vector<Edge>& arcs) {
  std::vector<DenseArc> out;
  for (const auto& a : arcs) out.push_back({a.src, a.dst, a.src, a.dst});
  return out;
}

std::vector<VertexId> visited_ids(const BfsResult& r) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < r.visited.bits.size(); ++i) {
    if (r.visited.bits[i]) out.push_back(r.visited.lo + i);
  }
  return out;
}

struct Visit {
  std::vector<VertexId> visited;
  std::uint64_t levels = 0;
  std::uint64_t count = 0;
};

Visit run_bfs(const std::vector<Edge>& arcs, std::uint64_t n, VertexId seed, int rho) {
  auto parts = run_team(rho, [&](TeamContext& ctx) {
    const auto adj = build_adjacency(ctx, block_of(ctx, dense(arcs)), n);
    const auto r = bfs(ctx, adj, seed);
    return Visit{visited_ids(r), r.levels, r.visited.global_count};
  });
  Visit out{{}, parts.front().levels, parts.front().count};
  for (const auto& p : parts) out.visited.insert(out.visited.end(), p.visited.begin(), p.visited.end());
  return out;
}

// Exact eccentricity via a serial BFS.
std::uint64_t eccentricity(const std::vector<std::vector<VertexId>>& g, VertexId s) {
  std::vector<std::int64_t> dist(g.size(), -1);
  std::queue<VertexId> q;
  dist[s] = 0;
  q.push(s);
  std::int64_t best = 0;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    best = std::max(best, dist[v]);
    for (auto w : g[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return static_cast<std::uint64_t>(best);
}

}  // namespace

TEST_SUITE("bfs_traversal") {

TEST_CASE("adjacency rows of a triangle and a split 4-cycle") {
  const auto tri = arc_pairs({{0, 1}, {1, 2}, {0, 2}});
  run_team(1, [&](TeamContext& ctx) {
    const auto adj = build_adjacency(ctx, dense(tri), 3);
    CHECK(adj.offsets == std::vector<std::uint64_t>{0, 2, 4, 6});
    CHECK(adj.neighbors == std::vector<VertexId>{1, 2, 0, 2, 0, 1});
  });
  const auto cycle = arc_pairs({{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  run_team(2, [&](TeamContext& ctx) {
    const auto adj = build_adjacency(ctx, block_of(ctx, dense(cycle)), 4);
    CHECK(adj.owned() == 2);
    CHECK(ctx.all_reduce<std::uint64_t>(adj.neighbors.size(), ops::plus<std::uint64_t>()) == 8);
  });
  CHECK_THROWS_AS(run_team(1, [&](TeamContext& ctx) { build_adjacency(ctx, dense(tri), 2); }), ContractViolation);
}

TEST_CASE("row degrees of a random graph sum to 2m") {
  const auto arcs = generated_arcs(er_spec(500, 4.0, 3));
  std::uint64_t n = 0;
  for (const auto& a : arcs) n = std::max(n, std::max(a.src, a.dst) + 1);
  run_team(3, [&](TeamContext& ctx) {
    const auto adj = build_adjacency(ctx, block_of(ctx, dense(arcs)), n);
    std::uint64_t sum = 0;
    for (VertexId v = adj.lo; v < adj.hi; ++v) sum += adj.degree(v);
    CHECK(ctx.all_reduce(sum, ops::plus<std::uint64_t>()) == arcs.size());
  });
}

TEST_CASE("bfs on the star, an isolated seed and a path") {
  // Star with u = 1 in the middle.
  const auto star = arc_pairs({{1, 0}, {1, 2}});
  for (int rho : {1, 2, 3}) {
    const auto v = run_bfs(star, 3, 1, rho);
    CHECK(v.visited == std::vector<VertexId>{0, 1, 2});
    CHECK(v.levels == 1);
  }
  const auto iso = run_bfs(arc_pairs({{0, 1}}), 3, 2, 2);
  CHECK(iso.visited == std::vector<VertexId>{2});
  CHECK(iso.levels == 0);

  const auto path = generated_arcs(path_spec(101));
  const auto p = run_bfs(path, 101, 100, 4);
  CHECK(p.count == 101);
  CHECK(p.levels == 100);
}

TEST_CASE("visited set equals the oracle component of the seed") {
  const auto arcs = generated_arcs(er_spec(2000, 1.0, 9));
  const auto oracle = union_find_oracle(arcs);
  for (VertexId seed : {VertexId{0}, VertexId{17}, VertexId{1500}}) {
    const auto it = std::lower_bound(oracle.entries.begin(), oracle.entries.end(), LabelEntry{seed, 0});
    if (it == oracle.entries.end() || it->vertex != seed) continue;
    std::vector<VertexId> expected;
    for (const auto& e : oracle.entries) {
      if (e.label == it->label) expected.push_back(e.vertex);
    }
    CHECK(run_bfs(arcs, 2000, seed, 4).visited == expected);
  }
}

TEST_CASE("approx_diameter bounds") {
  auto estimate = [](const std::vector<Edge>& arcs, std::uint64_t n, int trials) {
    return run_team(3, [&](TeamContext& ctx) {
             return approx_diameter(ctx, build_adjacency(ctx, block_of(ctx, dense(arcs)), n), trials, 1);
           })
        .front();
  };
  const auto path = estimate(generated_arcs(path_spec(101)), 101, 100);
  CHECK(path >= 50);
  CHECK(path <= 100);

  std::vector<Edge> k5;
  for (VertexId i = 0; i < 5; ++i) {
    for (VertexId j = i + 1; j < 5; ++j) k5.push_back({i, j});
  }
  CHECK(estimate(arc_pairs(k5), 5, 10) == 1);

  const auto grid = generated_arcs(grid_spec(32, 32));
  std::vector<std::vector<VertexId>> g(1024);
  for (const auto& a : grid) g[a.src].push_back(a.dst);
  std::uint64_t exact = 0;
  for (VertexId v = 0; v < 1024; ++v) exact = std::max(exact, eccentricity(g, v));
  CHECK(exact == 62);
  const auto approx = estimate(grid, 1024, 100);
  CHECK(approx <= exact);
  CHECK(approx >= 40);
}

}
