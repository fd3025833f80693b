#include "parcc/sv.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <tuple>

#include "parcc/buckets.hpp"
#include "parcc/samplesort.hpp"

namespace parcc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

bool by_vertex(const WorkTuple& a, const WorkTuple& b) {
  return std::tie(a.r, a.p, a.q, a.flags) < std::tie(b.r, b.p, b.q, b.flags);
}

bool by_partition(const WorkTuple& a, const WorkTuple& b) {
  return std::tie(a.p, a.q, a.r, a.flags) < std::tie(b.p, b.q, b.r, b.flags);
}

struct MinMax {
  VertexId min = 0;
  VertexId max = 0;
};

struct MinCandidate {
  VertexId min_q = 0;
  bool all_potentially_completed = true;
};

IterationRecord snapshot(TeamContext& ctx, const TupleArray& tuples) {
  IterationRecord rec;
  const auto counts = ctx.all_gather<std::uint64_t>(tuples.active.size());
  rec.active_min = *std::min_element(counts.begin(), counts.end());
  rec.active_max = *std::max_element(counts.begin(), counts.end());
  for (auto c : counts) rec.active_total += c;
  rec.active_mean = static_cast<double>(rec.active_total) / static_cast<double>(counts.size());
  return rec;
}

}  // namespace

const char* to_string(SvVariant v) noexcept {
  switch (v) {
    case SvVariant::kNaive: return "naive";
    case SvVariant::kExclude: return "exclude";
    case SvVariant::kBalanced: return "balanced";
  }
  return "?";
}

SvVariant parse_sv_variant(const std::string& name) {
  if (name == "naive") return SvVariant::kNaive;
  if (name == "exclude") return SvVariant::kExclude;
  if (name == "balanced") return SvVariant::kBalanced;
  throw std::invalid_argument("unknown SV variant '" + name + "'");
}

TupleArray init_tuples(TeamContext& ctx, const EdgeList& edges) {
  // Every vertex occurs as the source of some arc, so the distinct sources
  // are exactly V.
  std::vector<VertexId> sources;
  sources.reserve(edges.arcs.size());
  for (const auto& a : edges.arcs) sources.push_back(a.src);
  sources = samplesort(ctx, std::move(sources));
  const auto vertices = reduce_buckets(
      ctx, std::span<const VertexId>(sources), [](VertexId v) { return v; },
      [](VertexId) { return 0; }, [](int, int) { return 0; });

  std::vector<WorkTuple> tuples;
  tuples.reserve(edges.arcs.size() + vertices.size());
  for (const auto& b : vertices) {
    if (b.owns_first) tuples.push_back({b.key, b.key, b.key, kVertexTuple});
  }
  sources.clear();
  sources.shrink_to_fit();
  for (const auto& a : edges.arcs) tuples.push_back({a.src, a.src, a.dst, 0});

  TupleArray out;
  out.active = ctx.rebalance_blocks(std::move(tuples));
  return out;
}

void vertex_bucket_pass(TeamContext& ctx, std::vector<WorkTuple>& active) {
  active = samplesort(ctx, std::move(active), by_vertex);
  const auto buckets = reduce_buckets(
      ctx, std::span<const WorkTuple>(active), [](const WorkTuple& t) { return t.r; },
      [](const WorkTuple& t) { return MinMax{t.p, t.p}; },
      [](const MinMax& a, const MinMax& b) {
        return MinMax{std::min(a.min, b.min), std::max(a.max, b.max)};
      });
  for (const auto& b : buckets) {
    const bool single_partition = b.value.min == b.value.max;
    for (std::size_t i = b.begin; i < b.end; ++i) {
      active[i].q = b.value.min;
      active[i].set(kPotentiallyCompleted, single_partition);
    }
  }
}

PartitionPassResult partition_bucket_pass(TeamContext& ctx, std::vector<WorkTuple>& active) {
  active = samplesort(ctx, std::move(active), by_partition);
  const auto buckets = reduce_buckets(
      ctx, std::span<const WorkTuple>(active), [](const WorkTuple& t) { return t.p; },
      [](const WorkTuple& t) { return MinCandidate{t.q, t.has(kPotentiallyCompleted)}; },
      [](const MinCandidate& a, const MinCandidate& b) {
        return MinCandidate{std::min(a.min_q, b.min_q),
                            a.all_potentially_completed && b.all_potentially_completed};
      });

  PartitionPassResult result;
  bool stable = true;
  std::uint64_t owned = 0;
  for (const auto& b : buckets) {
    const VertexId pmin = b.value.min_q;
    stable = stable && pmin == b.key;
    for (std::size_t i = b.begin; i < b.end; ++i) {
      active[i].p = pmin;
      active[i].set(kCompleted, b.value.all_potentially_completed);
    }
    if (b.owns_first) {
      result.owned_pmins.push_back(pmin);
      ++owned;
    }
  }
  result.converged = ctx.all_reduce(stable, ops::logical_and());
  result.partitions = ctx.all_reduce(owned, ops::plus<std::uint64_t>());
  return result;
}

bool pointer_double(TeamContext& ctx, std::vector<WorkTuple>& active,
                    const std::vector<VertexId>& owned_pmins) {
  for (VertexId pmin : owned_pmins) active.push_back({pmin, pmin, pmin, kTemporary});
  vertex_bucket_pass(ctx, active);
  const bool converged = partition_bucket_pass(ctx, active).converged;
  std::erase_if(active, [](const WorkTuple& t) { return t.has(kTemporary); });
  return converged;
}

std::uint64_t exclude_completed(TupleArray& tuples) {
  auto& active = tuples.active;
  auto tail = std::stable_partition(active.begin(), active.end(),
                                    [](const WorkTuple& t) { return !t.has(kCompleted); });
  const auto moved = static_cast<std::uint64_t>(active.end() - tail);
  tuples.retired.insert(tuples.retired.end(), tail, active.end());
  active.erase(tail, active.end());
  return moved;
}

SvResult run_sv(TeamContext& ctx, const EdgeList& edges, const SvOptions& opts) {
  SvResult result;
  TupleArray tuples = init_tuples(ctx, edges);

  bool converged = false;
  while (true) {
    IterationRecord rec = snapshot(ctx, tuples);
    if (converged || rec.active_total == 0) {
      rec.iteration = tuples.iteration + 1;
      result.trace.final_state = rec;
      break;
    }
    rec.iteration = ++tuples.iteration;

    auto t = Clock::now();
    vertex_bucket_pass(ctx, tuples.active);
    rec.vertex_pass_seconds = seconds_since(t);

    t = Clock::now();
    auto pass = partition_bucket_pass(ctx, tuples.active);
    converged = pass.converged;
    rec.partitions = pass.partitions;
    rec.partition_pass_seconds = seconds_since(t);

    if (opts.pointer_doubling) {
      t = Clock::now();
      converged = pointer_double(ctx, tuples.active, pass.owned_pmins) && converged;
      rec.pointer_double_seconds = seconds_since(t);
    }
    if (opts.variant != SvVariant::kNaive) {
      t = Clock::now();
      exclude_completed(tuples);
      rec.exclude_seconds = seconds_since(t);
    }
    if (opts.variant == SvVariant::kBalanced) {
      t = Clock::now();
      tuples.active = ctx.rebalance_blocks(std::move(tuples.active));
      rec.rebalance_seconds = seconds_since(t);
    }
    result.trace.iterations.push_back(rec);
  }
  result.iterations = tuples.iteration;

  // Labels come from the vertex tuples <c,_,u>; arcs per component from the rest.
  std::vector<LabelEntry> labels;
  std::vector<VertexId> arc_partitions;
  std::uint64_t representatives = 0;
  for (const auto* part : {&tuples.active, &tuples.retired}) {
    for (const auto& t : *part) {
      if (t.has(kVertexTuple)) {
        labels.push_back({t.r, t.p});
        representatives += t.r == t.p ? 1 : 0;
      } else {
        arc_partitions.push_back(t.p);
      }
    }
  }
  tuples = {};

  std::sort(arc_partitions.begin(), arc_partitions.end());
  std::vector<std::pair<VertexId, std::uint64_t>> arc_counts;
  for (std::size_t i = 0; i < arc_partitions.size();) {
    std::size_t j = i;
    while (j < arc_partitions.size() && arc_partitions[j] == arc_partitions[i]) ++j;
    arc_counts.emplace_back(arc_partitions[i], j - i);
    i = j;
  }
  arc_partitions = {};
  arc_counts = samplesort(ctx, std::move(arc_counts));
  const auto per_component = reduce_buckets(
      ctx, std::span<const std::pair<VertexId, std::uint64_t>>(arc_counts),
      [](const auto& e) { return e.first; }, [](const auto& e) { return e.second; },
      [](std::uint64_t a, std::uint64_t b) { return a + b; });
  std::uint64_t largest = 0;
  for (const auto& b : per_component) largest = std::max(largest, b.value);
  result.largest_component_arcs = ctx.all_reduce(largest, ops::max<std::uint64_t>());

  result.labeling.entries = ctx.rebalance_blocks(samplesort(ctx, std::move(labels)));
  result.labeling.component_count = ctx.all_reduce(representatives, ops::plus<std::uint64_t>());
  result.vertex_count =
      ctx.all_reduce<std::uint64_t>(result.labeling.entries.size(), ops::plus<std::uint64_t>());
  return result;
}

}  // namespace parcc
