#pragma once

// Level-synchronous BFS over a 1-D vertex partition of dense ids [0, n).
// Rank k owns the block [block_begin(n,rho,k), block_begin(n,rho,k+1)).

#include <cstdint>
#include <vector>

#include "parcc/graph_model.hpp"
#include "parcc/team.hpp"

namespace parcc {

/// Arc between dense vertex ids; the original (input-space) ids ride along so
/// relabeled edges can be mapped back without a lookup.
struct DenseArc {
  VertexId src = 0;
  VertexId dst = 0;
  VertexId src_orig = 0;
  VertexId dst_orig = 0;

  friend bool operator==(const DenseArc&, const DenseArc&) = default;
};

struct LocalAdjacency {
  std::uint64_t n = 0;
  VertexId lo = 0;
  VertexId hi = 0;
  std::vector<std::uint64_t> offsets;  // hi - lo + 1 entries
  std::vector<VertexId> neighbors;

  std::uint64_t owned() const noexcept { return hi - lo; }
  std::uint64_t degree(VertexId v) const { return offsets[v - lo + 1] - offsets[v - lo]; }
};

struct VisitedSet {
  VertexId lo = 0;
  std::vector<bool> bits;  // owned range only
  std::uint64_t global_count = 0;

  bool contains(VertexId v) const { return bits[v - lo]; }
};

struct BfsResult {
  VisitedSet visited;
  std::uint64_t levels = 0;  // eccentricity of the seed
};

LocalAdjacency build_adjacency(TeamContext& ctx, const std::vector<DenseArc>& arcs, std::uint64_t n);

BfsResult bfs(TeamContext& ctx, const LocalAdjacency& adj, VertexId seed);

/// Maximum eccentricity over `trials` BFS runs from seeded random vertices.
std::uint64_t approx_diameter(TeamContext& ctx, const LocalAdjacency& adj, int trials,
                              std::uint64_t rng_seed);

}  // namespace parcc
