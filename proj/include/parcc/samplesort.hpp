#pragma once

// Distributed samplesort with regular sampling.
//
// local sort -> rho-1 equally spaced local samples -> gather and sort the
// samples -> rho-1 global splitters -> all-to-all exchange by splitter bin ->
// merge of the received sorted runs.
//
// `less` must be a strict total order over whole elements (callers break key
// ties on the remaining fields), which makes the output deterministic.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "parcc/team.hpp"

namespace parcc {

namespace detail {

template <class T, class Less>
std::vector<T> merge_runs(std::vector<std::vector<T>> runs, const Less& less) {
  // Pairwise merge tree: O(N log runs).
  while (runs.size() > 1) {
    std::vector<std::vector<T>> next;
    next.reserve((runs.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < runs.size(); i += 2) {
      std::vector<T> merged;
      merged.reserve(runs[i].size() + runs[i + 1].size());
      std::merge(std::make_move_iterator(runs[i].begin()), std::make_move_iterator(runs[i].end()),
                 std::make_move_iterator(runs[i + 1].begin()),
                 std::make_move_iterator(runs[i + 1].end()), std::back_inserter(merged), less);
      next.push_back(std::move(merged));
    }
    if (runs.size() % 2 == 1) next.push_back(std::move(runs.back()));
    runs = std::move(next);
  }
  return runs.empty() ? std::vector<T>{} : std::move(runs.front());
}

}  // namespace detail

template <class T, class Less = std::less<T>>
std::vector<T> samplesort(TeamContext& ctx, std::vector<T> local, Less less = Less{}) {
  std::sort(local.begin(), local.end(), less);
  const int rho = ctx.size();
  if (rho == 1) return local;

  std::vector<T> samples;
  if (!local.empty()) {
    samples.reserve(static_cast<std::size_t>(rho - 1));
    for (int k = 1; k < rho; ++k) {
      samples.push_back(local[(static_cast<std::size_t>(k) * local.size()) / static_cast<std::size_t>(rho)]);
    }
  }
  std::vector<T> all_samples;
  for (auto& s : ctx.all_gather(samples)) all_samples.insert(all_samples.end(), s.begin(), s.end());
  std::sort(all_samples.begin(), all_samples.end(), less);

  std::vector<T> splitters;
  if (!all_samples.empty()) {
    splitters.reserve(static_cast<std::size_t>(rho - 1));
    for (int k = 1; k < rho; ++k) {
      splitters.push_back(
          all_samples[(static_cast<std::size_t>(k) * all_samples.size()) / static_cast<std::size_t>(rho)]);
    }
  }

  // Bucket i receives elements e with splitter[i-1] <= e < splitter[i].
  std::vector<std::vector<T>> buckets(static_cast<std::size_t>(rho));
  auto first = local.begin();
  for (std::size_t i = 0; i < static_cast<std::size_t>(rho); ++i) {
    auto last = i < splitters.size() ? std::lower_bound(first, local.end(), splitters[i], less)
                                     : local.end();
    buckets[i].assign(std::make_move_iterator(first), std::make_move_iterator(last));
    first = last;
  }
  local.clear();
  local.shrink_to_fit();
  return detail::merge_runs(ctx.all_to_all_runs(buckets), less);
}

/// Sorts by `key(element)`, which must return a totally ordered value that
/// covers every field (e.g. a std::tuple).
template <class T, class KeyFn>
std::vector<T> samplesort_by(TeamContext& ctx, std::vector<T> local, KeyFn key) {
  return samplesort(ctx, std::move(local), [&key](const T& a, const T& b) { return key(a) < key(b); });
}

}  // namespace parcc
