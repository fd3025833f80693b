#include "parcc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parcc {

namespace {

std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Graph500 initiator probabilities.
constexpr double kA = 0.57, kB = 0.19, kC = 0.19;

std::vector<Edge> rmat(TeamContext& ctx, const GeneratorSpec& s) {
  const std::uint64_t n = std::uint64_t{1} << s.scale;
  const std::uint64_t m = s.edge_factor * n;
  const auto lo = block_begin(m, ctx.size(), ctx.rank());
  const auto hi = block_begin(m, ctx.size(), ctx.rank() + 1);
  std::vector<Edge> out;
  out.reserve(hi - lo);
  for (auto i = lo; i < hi; ++i) {
    SplitMix64 rng(stream_hash(s.seed, 1, i));
    VertexId u = 0, v = 0;
    for (unsigned level = 0; level < s.scale; ++level) {
      const double r = rng.uniform();
      const bool right = (r >= kA && r < kA + kB) || r >= kA + kB + kC;
      const bool down = r >= kA + kB;
      u = (u << 1) | (down ? 1 : 0);
      v = (v << 1) | (right ? 1 : 0);
    }
    out.push_back({u, v});
  }
  return out;
}

std::vector<Edge> grid(TeamContext& ctx, const GeneratorSpec& s) {
  const std::uint64_t cells = s.width * s.height;
  const auto lo = block_begin(cells, ctx.size(), ctx.rank());
  const auto hi = block_begin(cells, ctx.size(), ctx.rank() + 1);
  std::vector<Edge> out;
  for (auto id = lo; id < hi; ++id) {
    const auto x = id % s.width, y = id / s.width;
    if (x + 1 < s.width) out.push_back({id, id + 1});
    if (y + 1 < s.height) out.push_back({id, id + s.width});
  }
  return out;
}

std::vector<Edge> path(TeamContext& ctx, const GeneratorSpec& s) {
  const std::uint64_t m = s.n > 0 ? s.n - 1 : 0;
  std::vector<Edge> out;
  for (auto i = block_begin(m, ctx.size(), ctx.rank()); i < block_begin(m, ctx.size(), ctx.rank() + 1); ++i) {
    out.push_back({i, i + 1});
  }
  return out;
}

// Geometric skipping over the pairs (v, w), w < v, of each row v.
std::vector<Edge> erdos_renyi(TeamContext& ctx, const GeneratorSpec& s) {
  std::vector<Edge> out;
  if (s.p <= 0.0) return out;
  const double log_q = std::log1p(-s.p);
  for (auto v = block_begin(s.n, ctx.size(), ctx.rank()); v < block_begin(s.n, ctx.size(), ctx.rank() + 1); ++v) {
    if (s.p >= 1.0) {
      for (VertexId w = 0; w < v; ++w) out.push_back({v, w});
      continue;
    }
    SplitMix64 rng(stream_hash(s.seed, 2, v));
    double w = -1.0;
    while (true) {
      const double r = 1.0 - rng.uniform();  // (0, 1]
      w += 1.0 + std::floor(std::log(r) / log_q);
      if (w >= static_cast<double>(v)) break;
      out.push_back({v, static_cast<VertexId>(w)});
    }
  }
  return out;
}

// Random recursive tree per component; component c uses ids c*size + i.
std::vector<Edge> forest(TeamContext& ctx, const GeneratorSpec& s) {
  std::vector<Edge> out;
  const auto lo = block_begin(s.components, ctx.size(), ctx.rank());
  const auto hi = block_begin(s.components, ctx.size(), ctx.rank() + 1);
  out.reserve((hi - lo) * (s.component_size - 1));
  for (auto c = lo; c < hi; ++c) {
    SplitMix64 rng(stream_hash(s.seed, 3, c));
    const VertexId base = c * s.component_size;
    for (std::uint64_t i = 1; i < s.component_size; ++i) out.push_back({base + rng.below(i), base + i});
  }
  return out;
}

// Endpoints drawn independently with weight (i+1)^(-1/(exponent-1)), which
// gives expected degrees following a power law with the requested exponent.
std::vector<Edge> chung_lu(TeamContext& ctx, const GeneratorSpec& s) {
  std::vector<double> cdf(s.n);
  const double gamma = 1.0 / (s.exponent - 1.0);
  double acc = 0.0;
  for (std::uint64_t i = 0; i < s.n; ++i) {
    acc += std::pow(static_cast<double>(i + 1), -gamma);
    cdf[i] = acc;
  }
  auto draw = [&](SplitMix64& rng) {
    const double target = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    return static_cast<VertexId>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(s.n) - 1));
  };
  const std::uint64_t m = s.edge_factor * s.n;
  std::vector<Edge> out;
  for (auto i = block_begin(m, ctx.size(), ctx.rank()); i < block_begin(m, ctx.size(), ctx.rank() + 1); ++i) {
    SplitMix64 rng(stream_hash(s.seed, 4, i));
    const VertexId u = draw(rng);
    const VertexId v = draw(rng);
    out.push_back({u, v});
  }
  return out;
}

}  // namespace

std::uint64_t stream_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return mix(mix(mix(seed + kGolden) + a * kGolden) + b);
}

std::uint64_t SplitMix64::next() noexcept {
  state_ += kGolden;
  return mix(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
  // Lemire's multiply-shift; the bias is below 2^-64 * bound.
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
}

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "rmat") return GraphKind::kRmat;
  if (name == "grid") return GraphKind::kGrid;
  if (name == "path") return GraphKind::kPath;
  if (name == "er") return GraphKind::kEr;
  if (name == "forest") return GraphKind::kForest;
  if (name == "chunglu") return GraphKind::kChungLu;
  throw std::invalid_argument("unknown graph kind '" + name + "'");
}

const char* to_string(GraphKind kind) noexcept {
  switch (kind) {
    case GraphKind::kRmat: return "rmat";
    case GraphKind::kGrid: return "grid";
    case GraphKind::kPath: return "path";
    case GraphKind::kEr: return "er";
    case GraphKind::kForest: return "forest";
    case GraphKind::kChungLu: return "chunglu";
  }
  return "?";
}

void validate(const GeneratorSpec& s) {
  switch (s.kind) {
    case GraphKind::kRmat:
      if (s.scale > 32) throw std::invalid_argument("rmat scale must be <= 32");
      if (s.edge_factor == 0) throw std::invalid_argument("rmat edge factor must be >= 1");
      break;
    case GraphKind::kGrid:
      if (s.width == 0 || s.height == 0) throw std::invalid_argument("grid needs width and height >= 1");
      if (s.width > (std::uint64_t{1} << 32) || s.height > (std::uint64_t{1} << 32)) {
        throw std::invalid_argument("grid dimensions too large");
      }
      break;
    case GraphKind::kPath:
      break;
    case GraphKind::kEr:
      if (!(s.p >= 0.0 && s.p <= 1.0)) throw std::invalid_argument("er probability must be in [0, 1]");
      break;
    case GraphKind::kForest:
      if (s.component_size < 2) throw std::invalid_argument("forest component size must be >= 2");
      if (s.components > ~std::uint64_t{0} / s.component_size) throw std::invalid_argument("forest too large");
      break;
    case GraphKind::kChungLu:
      if (!(s.exponent > 1.0)) throw std::invalid_argument("chunglu exponent must be > 1");
      if (s.n == 0 || s.edge_factor == 0) throw std::invalid_argument("chunglu needs n and edge factor >= 1");
      break;
  }
}

std::vector<Edge> generate_undirected(TeamContext& ctx, const GeneratorSpec& spec) {
  validate(spec);
  switch (spec.kind) {
    case GraphKind::kRmat: return rmat(ctx, spec);
    case GraphKind::kGrid: return grid(ctx, spec);
    case GraphKind::kPath: return path(ctx, spec);
    case GraphKind::kEr: return erdos_renyi(ctx, spec);
    case GraphKind::kForest: return forest(ctx, spec);
    case GraphKind::kChungLu: return chung_lu(ctx, spec);
  }
  return {};
}

EdgeList generate(TeamContext& ctx, const GeneratorSpec& spec) {
  return to_arc_pairs(ctx, generate_undirected(ctx, spec));
}

}  // namespace parcc
