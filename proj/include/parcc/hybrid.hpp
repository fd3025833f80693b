#pragma once

// Connected components with a topology-dependent first step.
//
// Vertex ids are scrambled with permute_id, then the degree distribution is
// tested for a power law. If it fits, the graph probably has one giant
// short-diameter component: relabel to dense ids, BFS it from a seeded random
// vertex, drop its edges, and hand only the rest to SV. Otherwise SV runs on
// everything. Either way the output is labeled by the minimum original id of
// each component, so every mode yields the same bytes.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "parcc/bfs.hpp"
#include "parcc/graph_model.hpp"
#include "parcc/powerlaw.hpp"
#include "parcc/sv.hpp"
#include "parcc/team.hpp"

namespace parcc {

enum class ForceMode { kDynamic, kAlwaysBfs, kNeverBfs };

ForceMode parse_force_mode(const std::string& name);
const char* to_string(ForceMode mode) noexcept;

struct HybridOptions {
  double tau = kDefaultTau;
  ForceMode force = ForceMode::kDynamic;
  std::uint64_t rng_seed = 1;
  bool permute = true;
  SvOptions sv;
};

struct StageReport {
  double prediction_seconds = 0.0;
  double relabel_seconds = 0.0;
  double bfs_seconds = 0.0;
  double filter_seconds = 0.0;
  double sv_seconds = 0.0;

  bool ran_bfs = false;
  std::uint64_t component_count = 0;
  double largest_component_edge_fraction = 0.0;

  std::uint64_t vertices = 0;
  std::uint64_t arcs = 0;
  PowerLawFit fit;
  bool scale_free = false;
  std::uint64_t bfs_component_vertices = 0;
  std::uint64_t bfs_levels = 0;
  std::uint64_t sv_iterations = 0;

  double total_seconds() const noexcept;
  /// One key=value per line. Timings go under "seconds." keys.
  std::string to_key_values(bool with_timings = true) const;
  std::string to_table() const;
};

/// Map from (permuted) input id to dense id. `entries` is sorted by dense id
/// and block-distributed over [0, n) exactly like the BFS vertex partition.
struct RelabelMap {
  std::vector<std::pair<VertexId, VertexId>> entries;  // (original, dense)
  std::uint64_t n = 0;
};

/// Returns the dense arcs sorted by destination and the map. Dense ids follow
/// the sorted order of the original ids.
std::pair<std::vector<DenseArc>, RelabelMap> relabel_vertices(TeamContext& ctx, const EdgeList& edges);

/// Drops every arc of the visited component and returns the rest in the
/// original id space, rebalanced. Throws ContractViolation if an arc has
/// exactly one visited endpoint.
EdgeList filter_component(TeamContext& ctx, const std::vector<DenseArc>& arcs, std::uint64_t n,
                          const VisitedSet& visited);

struct HybridResult {
  ComponentLabeling labeling;  // original ids, label = min original id
  StageReport report;
  SvTrace sv_trace;
};

HybridResult run_hybrid(TeamContext& ctx, const EdgeList& edges, const HybridOptions& opts = {});

}  // namespace parcc
