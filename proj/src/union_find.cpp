#include "parcc/union_find.hpp"

#include <algorithm>
#include <numeric>

namespace parcc {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) x = std::exchange(parent_[x], root);
  return root;
}

bool DisjointSets::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (rank_[x] < rank_[y]) std::swap(x, y);
  parent_[y] = x;
  if (rank_[x] == rank_[y]) ++rank_[x];
  return true;
}

ComponentLabeling union_find_oracle(const std::vector<Edge>& edges) {
  std::vector<VertexId> ids;
  ids.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    ids.push_back(e.src);
    ids.push_back(e.dst);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto index = [&](VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };

  DisjointSets sets(ids.size());
  for (const auto& e : edges) sets.unite(index(e.src), index(e.dst));

  // ids is sorted, so the first member seen of each set is its minimum.
  std::vector<VertexId> min_id(ids.size(), 0);
  std::vector<bool> seen(ids.size(), false);
  ComponentLabeling out;
  out.entries.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto root = sets.find(i);
    if (!seen[root]) {
      seen[root] = true;
      min_id[root] = ids[i];
      ++out.component_count;
    }
    out.entries.push_back({ids[i], min_id[root]});
  }
  return out;
}

}  // namespace parcc
