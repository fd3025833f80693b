#pragma once

// Bucket reductions over a globally sorted, block-distributed sequence.
//
// Equal-key runs ("buckets") are contiguous after a global sort but may span
// rank boundaries. Interior buckets are reduced locally. The first and last
// local bucket are completed with two scans: an exclusive scan carries the
// last bucket of lower ranks upward, a reverse exclusive scan carries the
// first bucket of higher ranks downward. The scan operator keeps the summary
// with the larger (resp. smaller) key and merges summaries with equal keys,
// so the cost is independent of how many ranks a bucket spans.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "parcc/team.hpp"

namespace parcc {

template <class Key, class Value>
struct BucketSummary {
  bool valid = false;
  Key key{};
  Value value{};
};

/// Scan operator over bucket summaries. With `keep_larger` the summary with
/// the larger key wins; equal keys merge their values with `merge`.
template <class Key, class Value, class Merge>
auto bucket_scan_op(Merge merge, bool keep_larger) {
  using S = BucketSummary<Key, Value>;
  return make_scan_op(
      [merge, keep_larger](const S& a, const S& b) -> S {
        if (!a.valid) return b;
        if (!b.valid) return a;
        if (a.key == b.key) return S{true, a.key, merge(a.value, b.value)};
        const bool a_wins = keep_larger ? (b.key < a.key) : (a.key < b.key);
        return a_wins ? a : b;
      },
      S{});
}

template <class Key, class Value>
struct Bucket {
  Key key;
  Value value;            // reduction over the whole (global) bucket
  std::size_t begin = 0;  // local element range
  std::size_t end = 0;
  bool owns_first = true;  // the bucket's first global element is local
};

/// Reduces every bucket of the locally held part of a globally sorted
/// sequence. `merge` must be associative and commutative.
template <class T, class KeyFn, class ValueFn, class Merge>
auto reduce_buckets(TeamContext& ctx, std::span<const T> sorted, KeyFn key_of, ValueFn value_of,
                    Merge merge) {
  using Key = std::decay_t<decltype(key_of(std::declval<const T&>()))>;
  using Value = std::decay_t<decltype(value_of(std::declval<const T&>()))>;
  using S = BucketSummary<Key, Value>;

  std::vector<Bucket<Key, Value>> buckets;
  for (std::size_t i = 0; i < sorted.size();) {
    const Key k = key_of(sorted[i]);
    Value v = value_of(sorted[i]);
    std::size_t j = i + 1;
    for (; j < sorted.size() && key_of(sorted[j]) == k; ++j) v = merge(v, value_of(sorted[j]));
    buckets.push_back({k, std::move(v), i, j, true});
    i = j;
  }

  S last_local{}, first_local{};
  if (!buckets.empty()) {
    last_local = S{true, buckets.back().key, buckets.back().value};
    first_local = S{true, buckets.front().key, buckets.front().value};
  }
  const S from_below = ctx.exclusive_scan(last_local, bucket_scan_op<Key, Value>(merge, true));
  const S from_above =
      ctx.reverse_exclusive_scan(first_local, bucket_scan_op<Key, Value>(merge, false));

  if (!buckets.empty()) {
    auto& first = buckets.front();
    if (from_below.valid && from_below.key == first.key) {
      first.value = merge(from_below.value, first.value);
      first.owns_first = false;
    }
    auto& last = buckets.back();
    if (from_above.valid && from_above.key == last.key) last.value = merge(last.value, from_above.value);
  }
  return buckets;
}

/// Buckets whose first global element is held locally; summing this over
/// ranks counts every bucket exactly once.
template <class Key, class Value>
std::uint64_t count_owned(const std::vector<Bucket<Key, Value>>& buckets) {
  std::uint64_t n = 0;
  for (const auto& b : buckets) n += b.owns_first ? 1 : 0;
  return n;
}

}  // namespace parcc
