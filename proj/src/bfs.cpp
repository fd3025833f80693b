#include "parcc/bfs.hpp"

#include <algorithm>
#include <random>

#include <string>

namespace parcc {

LocalAdjacency build_adjacency(TeamContext& ctx, const std::vector<DenseArc>& arcs, std::uint64_t n) {
  const int rho = ctx.size();
  std::vector<std::vector<Edge>> outgoing(static_cast<std::size_t>(rho));
  for (const auto& a : arcs) {
    if (a.src >= n || a.dst >= n) {
      throw ContractViolation("build_adjacency: vertex id " + std::to_string(std::max(a.src, a.dst)) +
                              " is not below n = " + std::to_string(n));
    }
    outgoing[static_cast<std::size_t>(block_owner(n, rho, a.src))].push_back({a.src, a.dst});
  }
  auto mine = ctx.all_to_all_v(outgoing);
  std::sort(mine.begin(), mine.end());

  LocalAdjacency adj;
  adj.n = n;
  adj.lo = block_begin(n, rho, ctx.rank());
  adj.hi = block_begin(n, rho, ctx.rank() + 1);
  adj.offsets.assign(adj.owned() + 1, 0);
  adj.neighbors.reserve(mine.size());
  for (const auto& e : mine) {
    ++adj.offsets[e.src - adj.lo + 1];
    adj.neighbors.push_back(e.dst);
  }
  for (std::size_t i = 1; i < adj.offsets.size(); ++i) adj.offsets[i] += adj.offsets[i - 1];
  return adj;
}

BfsResult bfs(TeamContext& ctx, const LocalAdjacency& adj, VertexId seed) {
  if (seed >= adj.n) throw ContractViolation("bfs: seed " + std::to_string(seed) + " out of range");
  const int rho = ctx.size();
  BfsResult result;
  result.visited.lo = adj.lo;
  result.visited.bits.assign(adj.owned(), false);

  std::vector<VertexId> frontier;
  if (seed >= adj.lo && seed < adj.hi) {
    result.visited.bits[seed - adj.lo] = true;
    frontier.push_back(seed);
  }
  std::uint64_t visited_local = frontier.size();

  while (true) {
    std::vector<std::vector<VertexId>> discovered(static_cast<std::size_t>(rho));
    for (VertexId v : frontier) {
      const auto first = adj.offsets[v - adj.lo];
      const auto last = adj.offsets[v - adj.lo + 1];
      for (auto i = first; i < last; ++i) {
        const VertexId w = adj.neighbors[i];
        discovered[static_cast<std::size_t>(block_owner(adj.n, rho, w))].push_back(w);
      }
    }
    for (auto& d : discovered) {
      std::sort(d.begin(), d.end());
      d.erase(std::unique(d.begin(), d.end()), d.end());
    }
    frontier.clear();
    for (VertexId w : ctx.all_to_all_v(discovered)) {
      auto bit = result.visited.bits[w - adj.lo];
      if (!bit) {
        bit = true;
        frontier.push_back(w);
      }
    }
    visited_local += frontier.size();
    const auto next = ctx.all_reduce<std::uint64_t>(frontier.size(), ops::plus<std::uint64_t>());
    if (next == 0) break;
    ++result.levels;
  }
  result.visited.global_count = ctx.all_reduce(visited_local, ops::plus<std::uint64_t>());
  return result;
}

std::uint64_t approx_diameter(TeamContext& ctx, const LocalAdjacency& adj, int trials,
                              std::uint64_t rng_seed) {
  if (trials < 1) throw ContractViolation("approx_diameter: trials must be >= 1");
  if (adj.n == 0) return 0;
  std::mt19937_64 rng(rng_seed);
  std::uint64_t best = 0;
  for (int t = 0; t < trials; ++t) {
    const VertexId seed = rng() % adj.n;
    best = std::max(best, bfs(ctx, adj, seed).levels);
  }
  return best;
}

}  // namespace parcc
