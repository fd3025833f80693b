#pragma once

// SPMD worker team. `run_team(n, fn)` runs `fn(ctx)` on n workers; workers
// share nothing except through the collectives on TeamContext, each of which
// is a full barrier. Every rank must call the same collectives in the same
// order; a mismatch raises ProtocolFault on all ranks.

#include <algorithm>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <typeinfo>
#include <vector>

#include "parcc/graph_model.hpp"

namespace parcc {

struct ProtocolFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised on surviving ranks when another rank failed; never the root cause.
struct TeamAborted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Associative combine with an identity element.
template <class T, class F>
struct ScanOperator {
  F combine;
  T identity;

  T operator()(const T& a, const T& b) const { return combine(a, b); }
};

template <class T, class F>
ScanOperator<T, F> make_scan_op(F combine, T identity) {
  return {std::move(combine), std::move(identity)};
}

namespace ops {

template <class T>
auto plus() {
  return make_scan_op([](const T& a, const T& b) { return static_cast<T>(a + b); }, T{});
}

template <class T>
auto min() {
  return make_scan_op([](const T& a, const T& b) { return std::min(a, b); },
                      std::numeric_limits<T>::max());
}

template <class T>
auto max() {
  return make_scan_op([](const T& a, const T& b) { return std::max(a, b); },
                      std::numeric_limits<T>::lowest());
}

inline auto logical_and() {
  return make_scan_op([](bool a, bool b) { return a && b; }, true);
}

inline auto logical_or() {
  return make_scan_op([](bool a, bool b) { return a || b; }, false);
}

/// Elementwise sum of vectors of possibly different lengths.
template <class T>
auto elementwise_plus() {
  return make_scan_op(
      [](const std::vector<T>& a, const std::vector<T>& b) {
        std::vector<T> out(std::max(a.size(), b.size()), T{});
        for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
        return out;
      },
      std::vector<T>{});
}

}  // namespace ops

namespace detail {

struct Slot {
  const void* data = nullptr;
  std::uint64_t epoch = 0;
  const char* kind = "";
  const std::type_info* type = nullptr;
};

class TeamState {
 public:
  explicit TeamState(int size) : size_(size), slots_(static_cast<std::size_t>(size)) {}

  int size() const noexcept { return size_; }
  Slot& slot(int rank) { return slots_[static_cast<std::size_t>(rank)]; }
  const Slot& slot(int rank) const { return slots_[static_cast<std::size_t>(rank)]; }

  void barrier();
  void depart(int rank);
  void abort(const std::string& reason);

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  int size_;
  int arrived_ = 0;
  int departed_ = 0;
  std::uint64_t generation_ = 0;
  bool aborted_ = false;
  bool fault_ = false;
  std::string reason_;
  std::vector<Slot> slots_;
};

}  // namespace detail

class TeamContext {
 public:
  TeamContext(detail::TeamState& state, int rank) : state_(&state), rank_(rank) {}

  TeamContext(const TeamContext&) = delete;
  TeamContext& operator=(const TeamContext&) = delete;

  int rank() const noexcept { return rank_; }
  int size() const noexcept { return state_->size(); }
  /// Number of collectives completed by this rank.
  std::uint64_t epoch() const noexcept { return epoch_; }

  void barrier() {
    exchange<char>("barrier", nullptr, [](auto&&) {});
  }

  template <class T>
  std::vector<T> all_gather(const T& value) {
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(size()));
    exchange<T>("all_gather", &value, [&](auto&& peer) {
      for (int i = 0; i < size(); ++i) out.push_back(peer(i));
    });
    return out;
  }

  /// Rank j receives, ordered by source rank, every rank's bucket j.
  template <class T>
  std::vector<T> all_to_all_v(const std::vector<std::vector<T>>& buckets) {
    std::vector<T> out;
    for (auto& run : all_to_all_runs(buckets)) {
      out.insert(out.end(), std::make_move_iterator(run.begin()),
                 std::make_move_iterator(run.end()));
    }
    return out;
  }

  /// Like all_to_all_v but keeps the received runs separate (one per source).
  template <class T>
  std::vector<std::vector<T>> all_to_all_runs(const std::vector<std::vector<T>>& buckets) {
    if (static_cast<int>(buckets.size()) != size()) {
      throw ContractViolation("all_to_all_v: expected " + std::to_string(size()) +
                                   " buckets, got " + std::to_string(buckets.size()));
    }
    std::vector<std::vector<T>> out(static_cast<std::size_t>(size()));
    exchange<std::vector<std::vector<T>>>("all_to_all_v", &buckets, [&](auto&& peer) {
      for (int i = 0; i < size(); ++i) out[static_cast<std::size_t>(i)] = peer(i)[static_cast<std::size_t>(rank_)];
    });
    return out;
  }

  /// Rank i receives the fold of ranks 0..i-1; rank 0 receives op.identity.
  template <class T, class Op>
  T exclusive_scan(const T& value, const Op& op) {
    T acc = op.identity;
    exchange<T>("exclusive_scan", &value, [&](auto&& peer) {
      for (int i = 0; i < rank_; ++i) acc = op(acc, peer(i));
    });
    return acc;
  }

  /// Mirror of exclusive_scan: rank i receives the fold of ranks
  /// size-1 down to i+1; the last rank receives op.identity.
  template <class T, class Op>
  T reverse_exclusive_scan(const T& value, const Op& op) {
    T acc = op.identity;
    exchange<T>("reverse_exclusive_scan", &value, [&](auto&& peer) {
      for (int i = size() - 1; i > rank_; --i) acc = op(acc, peer(i));
    });
    return acc;
  }

  template <class T, class Op>
  T all_reduce(const T& value, const Op& op) {
    T acc = op.identity;
    exchange<T>("all_reduce", &value, [&](auto&& peer) {
      for (int i = 0; i < size(); ++i) acc = op(acc, peer(i));
    });
    return acc;
  }

  template <class T>
  T broadcast(const T& value, int root) {
    T out{};
    exchange<T>("broadcast", &value, [&](auto&& peer) { out = peer(root); });
    return out;
  }

  /// Redistributes to the block distribution of the global concatenation,
  /// preserving order.
  template <class T>
  std::vector<T> rebalance_blocks(std::vector<T> local) {
    const auto counts = all_gather<std::uint64_t>(local.size());
    std::uint64_t total = 0;
    std::uint64_t mine = 0;
    for (int i = 0; i < size(); ++i) {
      if (i == rank_) mine = total;
      total += counts[static_cast<std::size_t>(i)];
    }
    std::vector<std::vector<T>> buckets(static_cast<std::size_t>(size()));
    std::uint64_t pos = mine;
    std::size_t taken = 0;
    while (taken < local.size()) {
      const int dest = block_owner(total, size(), pos);
      const std::uint64_t dest_end = block_begin(total, size(), dest + 1);
      const std::size_t n = static_cast<std::size_t>(
          std::min<std::uint64_t>(dest_end - pos, local.size() - taken));
      auto& b = buckets[static_cast<std::size_t>(dest)];
      b.insert(b.end(), std::make_move_iterator(local.begin() + static_cast<std::ptrdiff_t>(taken)),
               std::make_move_iterator(local.begin() + static_cast<std::ptrdiff_t>(taken + n)));
      taken += n;
      pos += n;
    }
    return all_to_all_v(buckets);
  }

 private:
  // Publishes `mine`, waits for all ranks, verifies the call is matched,
  // lets `read` access peers' published values, then waits again so every
  // published value outlives all readers.
  template <class T, class Read>
  void exchange(const char* kind, const T* mine, Read&& read) {
    auto& s = state_->slot(rank_);
    s.data = mine;
    s.epoch = epoch_;
    s.kind = kind;
    s.type = &typeid(T);
    state_->barrier();
    verify_matched(kind, typeid(T));
    auto peer = [this](int i) -> const T& { return *static_cast<const T*>(state_->slot(i).data); };
    read(peer);
    state_->barrier();
    ++epoch_;
  }

  void verify_matched(const char* kind, const std::type_info& type);

  detail::TeamState* state_;
  int rank_;
  std::uint64_t epoch_ = 0;

};

namespace detail {
void run_workers(int workers, const std::function<void(TeamContext&)>& body);
}

/// Runs `fn(ctx)` on `workers` ranks and returns each rank's result in rank
/// order. The first root-cause exception from any rank is rethrown.
template <class Fn>
auto run_team(int workers, Fn&& fn) {
  using R = std::invoke_result_t<Fn&, TeamContext&>;
  if constexpr (std::is_void_v<R>) {
    detail::run_workers(workers, [&](TeamContext& ctx) { fn(ctx); });
  } else {
    std::vector<R> results(static_cast<std::size_t>(workers > 0 ? workers : 0));
    detail::run_workers(workers, [&](TeamContext& ctx) {
      results[static_cast<std::size_t>(ctx.rank())] = fn(ctx);
    });
    return results;
  }
}

}  // namespace parcc
