#pragma once

// Edge-centric Shiloach-Vishkin connectivity over a team of workers.
//
// State is an array of tuples <p, q, r>: p is the partition the tuple belongs
// to, q the candidate partition, r the (immutable) vertex. A graph with n
// vertices and m undirected edges starts with <x,x,x> per vertex and <x,x,y>,
// <y,y,x> per edge. Every iteration sorts the array four times:
//
//   by r  -> each vertex bucket nominates the minimum partition it touches
//   by p  -> each partition joins the minimum candidate of its bucket
//   by r, by p again with one temporary <pmin,_,pmin> per partition, so a
//            partition that just joined pmin also follows pmin's own join
//            (pointer doubling); the temporaries are then erased.
//
// Partitions whose every vertex touches only that partition are complete;
// their tuples are retired from the active working set.

#include <cstdint>
#include <string>
#include <vector>

#include "parcc/graph_model.hpp"
#include "parcc/team.hpp"

namespace parcc {

enum TupleFlag : std::uint8_t {
  kVertexTuple = 1 << 0,  // the <x,_,x> tuple created for vertex x
  kTemporary = 1 << 1,
  kPotentiallyCompleted = 1 << 2,
  kCompleted = 1 << 3,
};

struct WorkTuple {
  VertexId p = 0;
  VertexId q = 0;
  VertexId r = 0;
  std::uint8_t flags = 0;

  bool has(TupleFlag f) const noexcept { return (flags & f) != 0; }
  void set(TupleFlag f, bool on) noexcept {
    flags = on ? static_cast<std::uint8_t>(flags | f) : static_cast<std::uint8_t>(flags & ~f);
  }

  friend bool operator==(const WorkTuple&, const WorkTuple&) = default;
};

struct TupleArray {
  std::vector<WorkTuple> active;   // block-distributed working set
  std::vector<WorkTuple> retired;  // completed tuples, local only
  std::uint64_t iteration = 0;
};

enum class SvVariant {
  kNaive,     // no exclusion, no rebalancing
  kExclude,   // retire completed partitions, no rebalancing
  kBalanced,  // retire completed partitions and rebalance every iteration
};

const char* to_string(SvVariant v) noexcept;
SvVariant parse_sv_variant(const std::string& name);

struct SvOptions {
  SvVariant variant = SvVariant::kBalanced;
  bool pointer_doubling = true;
};

/// Per-iteration record. Active counts are per-rank sizes of the working set
/// at the start of the iteration; stage times are rank 0's wall seconds.
struct IterationRecord {
  std::uint64_t iteration = 0;
  std::uint64_t active_min = 0;
  double active_mean = 0.0;
  std::uint64_t active_max = 0;
  std::uint64_t active_total = 0;
  std::uint64_t partitions = 0;  // |P_i|, also the temporary-tuple count
  double vertex_pass_seconds = 0.0;
  double partition_pass_seconds = 0.0;
  double pointer_double_seconds = 0.0;
  double exclude_seconds = 0.0;
  double rebalance_seconds = 0.0;
};

struct SvTrace {
  std::vector<IterationRecord> iterations;
  // Working set after the last iteration (iteration field = count + 1).
  IterationRecord final_state;
};

struct SvResult {
  ComponentLabeling labeling;  // label = minimum (input-space) vertex id of the component
  std::uint64_t iterations = 0;
  std::uint64_t vertex_count = 0;
  std::uint64_t largest_component_arcs = 0;
  SvTrace trace;
};

struct PartitionPassResult {
  bool converged = true;              // global: every partition was stable
  std::vector<VertexId> owned_pmins;  // new id of each partition bucket owned here
  std::uint64_t partitions = 0;       // global |P_i|
};

TupleArray init_tuples(TeamContext& ctx, const EdgeList& edges);

/// Sorts by r, sets q to the bucket's minimum p, and marks tuples
/// potentially completed iff the bucket holds a single partition.
void vertex_bucket_pass(TeamContext& ctx, std::vector<WorkTuple>& active);

/// Sorts by p, joins every partition to its minimum candidate and marks
/// partitions completed iff all of their tuples are potentially completed.
PartitionPassResult partition_bucket_pass(TeamContext& ctx, std::vector<WorkTuple>& active);

/// Appends one temporary tuple per partition, reruns both passes, erases the
/// temporaries. Returns the convergence flag of the rerun partition pass.
bool pointer_double(TeamContext& ctx, std::vector<WorkTuple>& active,
                    const std::vector<VertexId>& owned_pmins);

/// Moves completed tuples to the local retired set; returns how many.
std::uint64_t exclude_completed(TupleArray& tuples);

SvResult run_sv(TeamContext& ctx, const EdgeList& edges, const SvOptions& opts = {});

/// Sequential reference of the same algorithm on a single array.
namespace reference {

struct SerialSvResult {
  std::vector<LabelEntry> labels;  // sorted by vertex, label = min vertex id
  std::uint64_t iterations = 0;
  std::vector<std::uint64_t> active_per_iteration;
};

SerialSvResult serial_sv(const std::vector<Edge>& arcs, bool pointer_doubling = true,
                         bool exclude_completed = true);

}  // namespace reference

}  // namespace parcc
