#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace parcc {

class TeamContext;

/// Opaque 64-bit vertex identifier. Dense ids (after relabeling) are < n.
using VertexId = std::uint64_t;

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Local shard of a block-distributed list of directed arcs. Every undirected
/// edge {x,y} is stored as the arc pair (x,y), (y,x).
struct EdgeList {
  std::vector<Edge> arcs;
  std::uint64_t global_arc_count = 0;
};

struct LabelEntry {
  VertexId vertex = 0;
  VertexId label = 0;

  friend bool operator==(const LabelEntry&, const LabelEntry&) = default;
  friend auto operator<=>(const LabelEntry&, const LabelEntry&) = default;
};

/// Local shard of the vertex -> component representative mapping, globally
/// sorted by vertex. `component_count` is the global count on every rank.
struct ComponentLabeling {
  std::vector<LabelEntry> entries;
  std::uint64_t component_count = 0;
};

struct EdgeDiagnostics {
  std::uint64_t arcs = 0;
  std::uint64_t vertices = 0;
  std::uint64_t max_degree = 0;
  std::uint64_t self_loops = 0;  // undirected self-loops (each is two arcs)
};

// Error classes shared across the library. The CLI maps them to exit codes.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Invertible 64-bit mix used to permute vertex ids.
VertexId permute_id(VertexId v) noexcept;
VertexId unpermute_id(VertexId v) noexcept;

/// Expands a shard of undirected edges into arc pairs and rebalances.
EdgeList to_arc_pairs(TeamContext& ctx, const std::vector<Edge>& undirected);

/// Drops repeated undirected edges ({x,y} and {y,x} count as the same edge).
std::vector<Edge> dedup_undirected(TeamContext& ctx, std::vector<Edge> undirected);

/// Applies permute_id to both endpoints of every arc.
EdgeList permute_edges(EdgeList edges);

EdgeDiagnostics validate_edge_list(TeamContext& ctx, const EdgeList& edges);

// Block distribution of `total` items over `parts` ranks: the first
// total % parts ranks hold one extra item.
constexpr std::uint64_t block_begin(std::uint64_t total, int parts, int rank) noexcept {
  const auto p = static_cast<std::uint64_t>(parts);
  const auto r = static_cast<std::uint64_t>(rank);
  return r * (total / p) + (r < total % p ? r : total % p);
}

constexpr std::uint64_t block_size(std::uint64_t total, int parts, int rank) noexcept {
  return block_begin(total, parts, rank + 1) - block_begin(total, parts, rank);
}

/// Rank owning global index `index` under block_begin.
constexpr int block_owner(std::uint64_t total, int parts, std::uint64_t index) noexcept {
  const auto p = static_cast<std::uint64_t>(parts);
  const std::uint64_t big = total / p + 1;
  const std::uint64_t extra = total % p;
  if (index < extra * big) return static_cast<int>(index / big);
  return static_cast<int>(extra + (index - extra * big) / (total / p));
}

}  // namespace parcc
