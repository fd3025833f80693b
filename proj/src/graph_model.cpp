#include "parcc/graph_model.hpp"

#include <algorithm>
#include <tuple>

#include "parcc/buckets.hpp"
#include "parcc/samplesort.hpp"
#include "parcc/team.hpp"

namespace parcc {

namespace {

// Multiplicative inverse of an odd number modulo 2^64 (Newton iteration; each
// step doubles the number of correct low bits).
constexpr std::uint64_t inverse_mod_2_64(std::uint64_t a) {
  std::uint64_t x = a;
  for (int i = 0; i < 6; ++i) x *= 2 - a * x;
  return x;
}

constexpr std::uint64_t undo_xorshift(std::uint64_t y, int shift) {
  std::uint64_t x = y;
  for (int covered = shift; covered < 64; covered += shift) x = y ^ (x >> shift);
  return x;
}

constexpr std::uint64_t kMulStep1 = (std::uint64_t{1} << 21) - 1;  // (~k) + (k << 21) == k * (2^21 - 1) - 1
constexpr std::uint64_t kMulStep3 = 1 + (1 << 3) + (1 << 8);       // 265
constexpr std::uint64_t kMulStep5 = 1 + (1 << 2) + (1 << 4);       // 21
constexpr std::uint64_t kMulStep7 = 1 + (std::uint64_t{1} << 31);

static_assert(inverse_mod_2_64(kMulStep3) * kMulStep3 == 1);
static_assert(inverse_mod_2_64(kMulStep1) * kMulStep1 == 1);

}  // namespace

VertexId permute_id(VertexId k) noexcept {
  k = (~k) + (k << 21);
  k = k ^ (k >> 24);
  k = (k + (k << 3)) + (k << 8);
  k = k ^ (k >> 14);
  k = (k + (k << 2)) + (k << 4);
  k = k ^ (k >> 28);
  k = k + (k << 31);
  return k;
}

VertexId unpermute_id(VertexId k) noexcept {
  k *= inverse_mod_2_64(kMulStep7);
  k = undo_xorshift(k, 28);
  k *= inverse_mod_2_64(kMulStep5);
  k = undo_xorshift(k, 14);
  k *= inverse_mod_2_64(kMulStep3);
  k = undo_xorshift(k, 24);
  k = (k + 1) * inverse_mod_2_64(kMulStep1);
  return k;
}

EdgeList to_arc_pairs(TeamContext& ctx, const std::vector<Edge>& undirected) {
  std::vector<Edge> arcs;
  arcs.reserve(undirected.size() * 2);
  for (const auto& e : undirected) {
    arcs.push_back(e);
    arcs.push_back({e.dst, e.src});
  }
  EdgeList out;
  out.arcs = ctx.rebalance_blocks(std::move(arcs));
  out.global_arc_count = ctx.all_reduce<std::uint64_t>(out.arcs.size(), ops::plus<std::uint64_t>());
  return out;
}

std::vector<Edge> dedup_undirected(TeamContext& ctx, std::vector<Edge> undirected) {
  for (auto& e : undirected) {
    if (e.dst < e.src) std::swap(e.src, e.dst);
  }
  auto sorted = samplesort(ctx, std::move(undirected));
  const auto buckets = reduce_buckets(
      ctx, std::span<const Edge>(sorted), [](const Edge& e) { return e; },
      [](const Edge&) { return 0; }, [](int, int) { return 0; });
  std::vector<Edge> out;
  for (const auto& b : buckets) {
    if (b.owns_first) out.push_back(b.key);
  }
  return ctx.rebalance_blocks(std::move(out));
}

EdgeList permute_edges(EdgeList edges) {
  for (auto& a : edges.arcs) {
    a.src = permute_id(a.src);
    a.dst = permute_id(a.dst);
  }
  return edges;
}

EdgeDiagnostics validate_edge_list(TeamContext& ctx, const EdgeList& edges) {
  auto sorted = samplesort(ctx, edges.arcs);
  const auto runs = reduce_buckets(
      ctx, std::span<const Edge>(sorted), [](const Edge& e) { return e.src; },
      [](const Edge&) { return std::uint64_t{1}; },
      [](std::uint64_t a, std::uint64_t b) { return a + b; });

  struct Local {
    std::uint64_t arcs = 0, vertices = 0, max_degree = 0, self_loop_arcs = 0;
  } local;
  local.arcs = sorted.size();
  for (const auto& r : runs) {
    if (!r.owns_first) continue;
    ++local.vertices;
    local.max_degree = std::max(local.max_degree, r.value);
  }
  for (const auto& a : sorted) local.self_loop_arcs += a.src == a.dst ? 1 : 0;

  const auto all = ctx.all_gather(local);
  EdgeDiagnostics d;
  std::uint64_t self_loop_arcs = 0;
  for (const auto& l : all) {
    d.arcs += l.arcs;
    d.vertices += l.vertices;
    d.max_degree = std::max(d.max_degree, l.max_degree);
    self_loop_arcs += l.self_loop_arcs;
  }
  d.self_loops = self_loop_arcs / 2;
  return d;
}

}  // namespace parcc
