#include "parcc/team.hpp"

#include <cstdio>
#include <sstream>

namespace parcc {
namespace detail {

void TeamState::barrier() {
  std::unique_lock lock(mutex_);
  if (aborted_) {
    if (fault_) throw ProtocolFault(reason_);
    throw TeamAborted(reason_);
  }
  if (departed_ > 0) {
    fault_ = aborted_ = true;
    reason_ = "protocol fault: collective called after a rank exited the team";
    cv_.notify_all();
    throw ProtocolFault(reason_);
  }
  const std::uint64_t gen = generation_;
  if (++arrived_ == size_) {
    arrived_ = 0;
    ++generation_;
    cv_.notify_all();
    return;
  }
  cv_.wait(lock, [&] { return generation_ != gen || aborted_; });
  if (generation_ == gen) {
    if (fault_) throw ProtocolFault(reason_);
    throw TeamAborted(reason_);
  }
}

void TeamState::depart(int rank) {
  std::lock_guard lock(mutex_);
  ++departed_;
  if (arrived_ > 0 && !aborted_) {
    fault_ = aborted_ = true;
    reason_ = "protocol fault: rank " + std::to_string(rank) +
              " exited while a collective was pending on other ranks";
    cv_.notify_all();
  }
}

void TeamState::abort(const std::string& reason) {
  std::lock_guard lock(mutex_);
  if (aborted_) return;
  aborted_ = true;
  reason_ = reason;
  cv_.notify_all();
}

void run_workers(int workers, const std::function<void(TeamContext&)>& body) {
  if (workers < 1) throw ContractViolation("team size must be >= 1");
  TeamState state(workers);
  std::mutex error_mutex;
  std::exception_ptr root_error;
  std::exception_ptr secondary_error;

  auto worker = [&](int rank) {
    try {
      TeamContext ctx(state, rank);
      body(ctx);
      state.depart(rank);
    } catch (const TeamAborted&) {
      std::lock_guard lock(error_mutex);
      if (!secondary_error) secondary_error = std::current_exception();
    } catch (const std::exception& e) {
      {
        std::lock_guard lock(error_mutex);
        if (!root_error) root_error = std::current_exception();
      }
      state.abort(std::string("rank ") + std::to_string(rank) + " failed: " + e.what());
    } catch (...) {
      {
        std::lock_guard lock(error_mutex);
        if (!root_error) root_error = std::current_exception();
      }
      state.abort("rank " + std::to_string(rank) + " failed");
    }
  };

  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int r = 0; r < workers; ++r) threads.emplace_back(worker, r);
  }
  if (root_error) std::rethrow_exception(root_error);
  if (secondary_error) std::rethrow_exception(secondary_error);
}

}  // namespace detail

void TeamContext::verify_matched(const char* kind, const std::type_info& type) {
  for (int i = 0; i < size(); ++i) {
    const auto& s = state_->slot(i);
    if (s.epoch != epoch_ || std::string_view(s.kind) != kind || *s.type != type) {
      std::ostringstream msg;
      msg << "protocol fault: rank " << rank_ << " called " << kind << " (collective #" << epoch_
          << ") but rank " << i << " called " << s.kind << " (collective #" << s.epoch << ")";
      if (std::string_view(s.kind) == kind && *s.type != type) msg << " with a different element type";
      // Every rank observes the same slots, so every rank raises the fault.
      if (rank_ == 0) std::fprintf(stderr, "%s\n", msg.str().c_str());
      throw ProtocolFault(msg.str());
    }
  }
}

}  // namespace parcc
