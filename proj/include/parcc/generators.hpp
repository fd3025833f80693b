#pragma once

// Synthetic graph generators. Each draw comes from a counter-based stream
// keyed by (seed, edge or row index), so the generated edge multiset depends
// only on the spec and the seed, not on the number of workers.

#include <cstdint>
#include <string>
#include <vector>

#include "parcc/graph_model.hpp"
#include "parcc/team.hpp"

namespace parcc {

enum class GraphKind { kRmat, kGrid, kPath, kEr, kForest, kChungLu };

GraphKind parse_graph_kind(const std::string& name);
const char* to_string(GraphKind kind) noexcept;

struct GeneratorSpec {
  GraphKind kind = GraphKind::kRmat;
  unsigned scale = 10;            // rmat: n = 2^scale
  std::uint64_t edge_factor = 16; // rmat, chunglu: undirected edges = edge_factor * n
  std::uint64_t width = 0;        // grid
  std::uint64_t height = 0;
  std::uint64_t n = 0;            // path, er, chunglu
  double p = 0.0;                 // er edge probability
  std::uint64_t components = 0;   // forest
  std::uint64_t component_size = 0;
  double exponent = 2.5;          // chunglu target degree exponent
  std::uint64_t seed = 1;
};

/// Throws std::invalid_argument for out-of-range parameters.
void validate(const GeneratorSpec& spec);

/// This rank's share of the undirected edges (each edge listed once).
std::vector<Edge> generate_undirected(TeamContext& ctx, const GeneratorSpec& spec);

/// generate_undirected expanded to arc pairs.
EdgeList generate(TeamContext& ctx, const GeneratorSpec& spec);

/// Stateless 64-bit stream: hash of (seed, a, b).
std::uint64_t stream_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept;

/// Sequential splitmix64 generator over a stream_hash start state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next() noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace parcc
