#pragma once

// Helpers shared by the unit and acceptance tests.

#include <algorithm>
#include <vector>

#include "parcc/generators.hpp"
#include "parcc/graph_model.hpp"
#include "parcc/team.hpp"

namespace parcc::testing {

template <class T>
std::vector<T> concat(const std::vector<std::vector<T>>& parts) {
  std::vector<T> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

/// This rank's block of a replicated vector.
template <class T>
std::vector<T> block_of(TeamContext& ctx, const std::vector<T>& all) {
  const auto lo = block_begin(all.size(), ctx.size(), ctx.rank());
  const auto hi = block_begin(all.size(), ctx.size(), ctx.rank() + 1);
  return {all.begin() + static_cast<std::ptrdiff_t>(lo), all.begin() + static_cast<std::ptrdiff_t>(hi)};
}

inline EdgeList shard(TeamContext& ctx, const std::vector<Edge>& arcs) {
  return {block_of(ctx, arcs), arcs.size()};
}

/// Arc pairs of an undirected edge list, in a fixed order.
inline std::vector<Edge> arc_pairs(const std::vector<Edge>& undirected) {
  std::vector<Edge> arcs;
  for (const auto& e : undirected) {
    arcs.push_back(e);
    arcs.push_back({e.dst, e.src});
  }
  return arcs;
}

/// Generated graph as one replicated arc list.
inline std::vector<Edge> generated_arcs(const GeneratorSpec& spec) {
  return arc_pairs(run_team(1, [&](TeamContext& ctx) { return generate_undirected(ctx, spec); }).front());
}

inline GeneratorSpec grid_spec(std::uint64_t w, std::uint64_t h) {
  GeneratorSpec s;
  s.kind = GraphKind::kGrid;
  s.width = w;
  s.height = h;
  return s;
}

inline GeneratorSpec path_spec(std::uint64_t n) {
  GeneratorSpec s;
  s.kind = GraphKind::kPath;
  s.n = n;
  return s;
}

inline GeneratorSpec er_spec(std::uint64_t n, double avg_degree, std::uint64_t seed) {
  GeneratorSpec s;
  s.kind = GraphKind::kEr;
  s.n = n;
  s.p = avg_degree / static_cast<double>(n - 1);
  s.seed = seed;
  return s;
}

inline GeneratorSpec rmat_spec(unsigned scale, std::uint64_t ef, std::uint64_t seed) {
  GeneratorSpec s;
  s.kind = GraphKind::kRmat;
  s.scale = scale;
  s.edge_factor = ef;
  s.seed = seed;
  return s;
}

inline GeneratorSpec forest_spec(std::uint64_t components, std::uint64_t size, std::uint64_t seed) {
  GeneratorSpec s;
  s.kind = GraphKind::kForest;
  s.components = components;
  s.component_size = size;
  s.seed = seed;
  return s;
}

inline GeneratorSpec chunglu_spec(std::uint64_t n, std::uint64_t ef, double exponent, std::uint64_t seed) {
  GeneratorSpec s;
  s.kind = GraphKind::kChungLu;
  s.n = n;
  s.edge_factor = ef;
  s.exponent = exponent;
  s.seed = seed;
  return s;
}

}  // namespace parcc::testing
