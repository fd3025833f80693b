#include "parcc/hybrid.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "parcc/buckets.hpp"
#include "parcc/generators.hpp"
#include "parcc/samplesort.hpp"

namespace parcc {

namespace {

using Clock = std::chrono::steady_clock;

// Wall time of a stage as seen by the slowest rank.
double stage_seconds(TeamContext& ctx, Clock::time_point start) {
  const double mine = std::chrono::duration<double>(Clock::now() - start).count();
  return ctx.all_reduce(mine, ops::max<double>());
}

struct Ends {
  bool nonempty = false;
  VertexId first = 0;
  VertexId last = 0;
};

// `arcs` is globally sorted by key(arc). Writes the rank of each arc's key
// among all distinct keys via set(arc, id) and returns the distinct count.
// With `map` non-null, records (key, id) once per distinct key.
template <class KeyFn, class SetFn>
std::uint64_t assign_dense_ids(TeamContext& ctx, std::vector<DenseArc>& arcs, KeyFn key, SetFn set,
                               std::vector<std::pair<VertexId, VertexId>>* map) {
  Ends mine;
  if (!arcs.empty()) mine = {true, key(arcs.front()), key(arcs.back())};
  const auto ends = ctx.all_gather(mine);

  bool continues = false;
  for (int r = ctx.rank() - 1; r >= 0; --r) {
    const auto& e = ends[static_cast<std::size_t>(r)];
    if (!e.nonempty) continue;
    continues = mine.nonempty && e.last == mine.first;
    break;
  }

  std::uint64_t starts = 0;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (i == 0 ? !continues : key(arcs[i]) != key(arcs[i - 1])) ++starts;
  }
  const auto base = ctx.exclusive_scan(starts, ops::plus<std::uint64_t>());

  // A continued run carries the last id handed out below this rank.
  std::uint64_t id = base - 1;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const bool fresh = i == 0 ? !continues : key(arcs[i]) != key(arcs[i - 1]);
    if (fresh) {
      ++id;
      if (map) map->emplace_back(key(arcs[i]), id);
    }
    set(arcs[i], id);
  }
  return ctx.all_reduce(starts, ops::plus<std::uint64_t>());
}

struct Member {
  VertexId group = 0;
  VertexId vertex = 0;
};

// Relabels every (vertex, group) pair with the group's minimum vertex id.
ComponentLabeling canonicalize(TeamContext& ctx, std::vector<Member> members) {
  members = samplesort_by(ctx, std::move(members),
                          [](const Member& m) { return std::tuple(m.group, m.vertex); });
  const auto groups = reduce_buckets(
      ctx, std::span<const Member>(members), [](const Member& m) { return m.group; },
      [](const Member& m) { return m.vertex; },
      [](VertexId a, VertexId b) { return std::min(a, b); });

  ComponentLabeling out;
  std::uint64_t owned = 0;
  std::vector<LabelEntry> entries;
  entries.reserve(members.size());
  for (const auto& g : groups) {
    owned += g.owns_first ? 1 : 0;
    for (auto i = g.begin; i < g.end; ++i) entries.push_back({members[i].vertex, g.value});
  }
  members = {};
  out.entries = ctx.rebalance_blocks(samplesort(ctx, std::move(entries)));
  out.component_count = ctx.all_reduce(owned, ops::plus<std::uint64_t>());
  return out;
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

ForceMode parse_force_mode(const std::string& name) {
  if (name == "dynamic") return ForceMode::kDynamic;
  if (name == "always_bfs") return ForceMode::kAlwaysBfs;
  if (name == "never_bfs") return ForceMode::kNeverBfs;
  throw std::invalid_argument("unknown force mode '" + name + "'");
}

const char* to_string(ForceMode mode) noexcept {
  switch (mode) {
    case ForceMode::kDynamic: return "dynamic";
    case ForceMode::kAlwaysBfs: return "always_bfs";
    case ForceMode::kNeverBfs: return "never_bfs";
  }
  return "?";
}

double StageReport::total_seconds() const noexcept {
  return prediction_seconds + relabel_seconds + bfs_seconds + filter_seconds + sv_seconds;
}

std::string StageReport::to_key_values(bool with_timings) const {
  std::ostringstream os;
  os << "ran_bfs=" << (ran_bfs ? "true" : "false") << '\n'
     << "component_count=" << component_count << '\n'
     << "largest_component_edge_fraction=" << fixed(largest_component_edge_fraction) << '\n'
     << "vertices=" << vertices << '\n'
     << "arcs=" << arcs << '\n'
     << "scale_free=" << (scale_free ? "true" : "false") << '\n'
     << "ks_stat=" << fixed(fit.ks_stat) << '\n'
     << "alpha=" << fixed(fit.alpha) << '\n'
     << "x_min=" << fit.x_min << '\n'
     << "bfs_component_vertices=" << bfs_component_vertices << '\n'
     << "bfs_levels=" << bfs_levels << '\n'
     << "sv_iterations=" << sv_iterations << '\n';
  if (with_timings) {
    os << "seconds.prediction=" << fixed(prediction_seconds) << '\n'
       << "seconds.relabel=" << fixed(relabel_seconds) << '\n'
       << "seconds.bfs=" << fixed(bfs_seconds) << '\n'
       << "seconds.filter=" << fixed(filter_seconds) << '\n'
       << "seconds.sv=" << fixed(sv_seconds) << '\n'
       << "seconds.total=" << fixed(total_seconds()) << '\n';
  }
  return os.str();
}

std::string StageReport::to_table() const {
  const double total = total_seconds();
  std::ostringstream os;
  char line[96];
  std::snprintf(line, sizeof line, "%-12s %12s %8s\n", "stage", "seconds", "share");
  os << line;
  const std::pair<const char*, double> rows[] = {{"prediction", prediction_seconds},
                                                 {"relabel", relabel_seconds},
                                                 {"bfs", bfs_seconds},
                                                 {"filter", filter_seconds},
                                                 {"sv", sv_seconds}};
  for (const auto& [name, s] : rows) {
    std::snprintf(line, sizeof line, "%-12s %12.6f %7.1f%%\n", name, s, total > 0 ? 100.0 * s / total : 0.0);
    os << line;
  }
  std::snprintf(line, sizeof line, "%-12s %12.6f\n", "total", total);
  os << line;
  return os.str();
}

std::pair<std::vector<DenseArc>, RelabelMap> relabel_vertices(TeamContext& ctx, const EdgeList& edges) {
  std::vector<DenseArc> arcs;
  arcs.reserve(edges.arcs.size());
  for (const auto& a : edges.arcs) arcs.push_back({0, 0, a.src, a.dst});

  arcs = samplesort_by(ctx, std::move(arcs),
                       [](const DenseArc& a) { return std::tuple(a.src_orig, a.dst_orig); });
  RelabelMap map;
  map.n = assign_dense_ids(
      ctx, arcs, [](const DenseArc& a) { return a.src_orig; },
      [](DenseArc& a, VertexId id) { a.src = id; }, &map.entries);
  map.entries = ctx.rebalance_blocks(std::move(map.entries));

  // Destinations range over the same vertex set, so ranking them again in
  // sorted order reproduces the source ids without a lookup.
  arcs = samplesort_by(ctx, std::move(arcs),
                       [](const DenseArc& a) { return std::tuple(a.dst_orig, a.src_orig); });
  const auto n_dst = assign_dense_ids(
      ctx, arcs, [](const DenseArc& a) { return a.dst_orig; },
      [](DenseArc& a, VertexId id) { a.dst = id; }, nullptr);
  if (n_dst != map.n) {
    throw ContractViolation("relabel_vertices: edge list is not made of arc pairs (" +
                            std::to_string(map.n) + " sources, " + std::to_string(n_dst) +
                            " destinations)");
  }
  return {std::move(arcs), std::move(map)};
}

EdgeList filter_component(TeamContext& ctx, const std::vector<DenseArc>& arcs, std::uint64_t n,
                          const VisitedSet& visited) {
  const int rho = ctx.size();
  std::vector<VertexId> ids;
  ids.reserve(arcs.size() * 2);
  for (const auto& a : arcs) {
    ids.push_back(a.src);
    ids.push_back(a.dst);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  std::vector<std::vector<VertexId>> requests(static_cast<std::size_t>(rho));
  for (VertexId v : ids) requests[static_cast<std::size_t>(block_owner(n, rho, v))].push_back(v);
  const auto incoming = ctx.all_to_all_runs(requests);
  std::vector<std::vector<std::uint8_t>> replies(static_cast<std::size_t>(rho));
  for (std::size_t r = 0; r < incoming.size(); ++r) {
    for (VertexId v : incoming[r]) replies[r].push_back(visited.contains(v) ? 1 : 0);
  }
  // Owners are monotone in the id, so the replies concatenate in `ids` order.
  const auto flags = ctx.all_to_all_v(replies);
  auto is_visited = [&](VertexId v) {
    return flags[static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin())] != 0;
  };

  std::vector<Edge> kept;
  std::optional<std::string> broken;
  for (const auto& a : arcs) {
    const bool d = is_visited(a.dst);
    if (d != is_visited(a.src) && !broken) {
      broken = "filter_component: arc (" + std::to_string(a.src_orig) + ", " +
               std::to_string(a.dst_orig) + ") has exactly one visited endpoint";
    }
    if (!d) kept.push_back({a.src_orig, a.dst_orig});
  }
  if (ctx.all_reduce(broken.has_value(), ops::logical_or())) {
    throw ContractViolation(broken.value_or("filter_component: BFS left a partially visited edge"));
  }

  EdgeList out;
  out.global_arc_count = ctx.all_reduce<std::uint64_t>(kept.size(), ops::plus<std::uint64_t>());
  out.arcs = ctx.rebalance_blocks(std::move(kept));
  return out;
}

HybridResult run_hybrid(TeamContext& ctx, const EdgeList& edges, const HybridOptions& opts) {
  HybridResult out;
  StageReport& rep = out.report;

  auto t = Clock::now();
  EdgeList work = opts.permute ? permute_edges(edges) : edges;
  rep.arcs = ctx.all_reduce<std::uint64_t>(work.arcs.size(), ops::plus<std::uint64_t>());
  work.global_arc_count = rep.arcs;
  const auto hist = degree_histogram(ctx, work);
  rep.vertices = hist.vertex_total;
  rep.fit = fit_power_law(hist);
  rep.scale_free = classify_scale_free(rep.fit, opts.tau);
  rep.prediction_seconds = stage_seconds(ctx, t);

  const bool use_bfs =
      rep.arcs > 0 && (opts.force == ForceMode::kAlwaysBfs ||
                       (opts.force == ForceMode::kDynamic && rep.scale_free));

  std::vector<Member> members;
  std::uint64_t bfs_arcs = 0;
  if (use_bfs) {
    rep.ran_bfs = true;
    t = Clock::now();
    auto [dense, map] = relabel_vertices(ctx, work);
    rep.relabel_seconds = stage_seconds(ctx, t);

    t = Clock::now();
    BfsResult visit;
    {
      const auto adj = build_adjacency(ctx, dense, map.n);
      const VertexId seed = stream_hash(opts.rng_seed, 5) % map.n;
      visit = bfs(ctx, adj, seed);
      const int owner = block_owner(map.n, ctx.size(), seed);
      VertexId seed_orig = 0;
      if (ctx.rank() == owner) seed_orig = map.entries[seed - adj.lo].first;
      seed_orig = ctx.broadcast(seed_orig, owner);
      // The group key only has to differ from every SV label, and SV never
      // sees a vertex of this component.
      for (VertexId v = adj.lo; v < adj.hi; ++v) {
        if (visit.visited.contains(v)) members.push_back({seed_orig, map.entries[v - adj.lo].first});
      }
    }
    rep.bfs_component_vertices = visit.visited.global_count;
    rep.bfs_levels = visit.levels;
    rep.bfs_seconds = stage_seconds(ctx, t);

    t = Clock::now();
    work = filter_component(ctx, dense, map.n, visit.visited);
    bfs_arcs = rep.arcs - work.global_arc_count;
    rep.filter_seconds = stage_seconds(ctx, t);
  }

  t = Clock::now();
  auto sv = run_sv(ctx, work, opts.sv);
  work = {};
  rep.sv_iterations = sv.iterations;
  out.sv_trace = std::move(sv.trace);
  for (const auto& e : sv.labeling.entries) members.push_back({e.label, e.vertex});
  sv.labeling = {};
  if (opts.permute) {
    for (auto& m : members) m.vertex = unpermute_id(m.vertex);
  }
  out.labeling = canonicalize(ctx, std::move(members));
  rep.sv_seconds = stage_seconds(ctx, t);

  rep.component_count = out.labeling.component_count;
  const auto largest = std::max(bfs_arcs, sv.largest_component_arcs);
  rep.largest_component_edge_fraction =
      rep.arcs > 0 ? static_cast<double>(largest) / static_cast<double>(rep.arcs) : 0.0;
  return out;
}

}  // namespace parcc
