#pragma once

// Sequential union-find used as the reference partition in tests.

#include <cstdint>
#include <vector>

#include "parcc/graph_model.hpp"

namespace parcc {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);

  std::size_t find(std::size_t x);
  /// Returns false if x and y were already joined.
  bool unite(std::size_t x, std::size_t y);
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

/// Components of the graph spanned by `edges` (either orientation). Entries
/// cover every endpoint, sorted by vertex; label = minimum vertex id.
ComponentLabeling union_find_oracle(const std::vector<Edge>& edges);

}  // namespace parcc
