// Single-array reference of the SV iteration, written directly from the
// sequential formulation (no team, no bucket scans). Used by tests and the
// benchmark as the baseline the team implementation must agree with.

#include <algorithm>
#include <tuple>

#include "parcc/sv.hpp"

namespace parcc::reference {

namespace {

struct Tuple {
  VertexId p, q, r;
  bool vertex = false;
  bool temporary = false;
  bool potentially_completed = false;
  bool completed = false;
};

void nominate(std::vector<Tuple>& a) {
  std::sort(a.begin(), a.end(), [](const Tuple& x, const Tuple& y) {
    return std::tie(x.r, x.p) < std::tie(y.r, y.p);
  });
  for (std::size_t i = 0; i < a.size();) {
    std::size_t j = i;
    while (j < a.size() && a[j].r == a[i].r) ++j;
    const VertexId umin = a[i].p;  // sorted by p within the bucket
    const bool single = a[j - 1].p == umin;
    for (std::size_t k = i; k < j; ++k) {
      a[k].q = umin;
      a[k].potentially_completed = single;
    }
    i = j;
  }
}

// Returns true iff every partition was stable.
bool join(std::vector<Tuple>& a, std::vector<VertexId>* pmins) {
  std::sort(a.begin(), a.end(), [](const Tuple& x, const Tuple& y) {
    return std::tie(x.p, x.q) < std::tie(y.p, y.q);
  });
  bool stable = true;
  for (std::size_t i = 0; i < a.size();) {
    std::size_t j = i;
    bool all_pc = true;
    for (; j < a.size() && a[j].p == a[i].p; ++j) all_pc = all_pc && a[j].potentially_completed;
    const VertexId pmin = a[i].q;
    if (pmin != a[i].p) stable = false;
    for (std::size_t k = i; k < j; ++k) {
      a[k].p = pmin;
      a[k].completed = all_pc;
    }
    if (pmins) pmins->push_back(pmin);
    i = j;
  }
  return stable;
}

}  // namespace

SerialSvResult serial_sv(const std::vector<Edge>& arcs, bool pointer_doubling,
                         bool exclude_completed) {
  std::vector<Tuple> active;
  std::vector<VertexId> vertices;
  for (const auto& e : arcs) vertices.push_back(e.src);
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  for (VertexId v : vertices) active.push_back({v, v, v, true});
  for (const auto& e : arcs) active.push_back({e.src, e.src, e.dst});

  SerialSvResult out;
  std::vector<Tuple> retired;
  bool converged = false;
  while (!converged && !active.empty()) {
    ++out.iterations;
    out.active_per_iteration.push_back(active.size());
    std::vector<VertexId> pmins;
    nominate(active);
    converged = join(active, &pmins);
    if (pointer_doubling) {
      for (VertexId p : pmins) active.push_back({p, p, p, false, true});
      nominate(active);
      converged = join(active, nullptr) && converged;
      std::erase_if(active, [](const Tuple& t) { return t.temporary; });
    }
    if (exclude_completed) {
      for (const auto& t : active) {
        if (t.completed) retired.push_back(t);
      }
      std::erase_if(active, [](const Tuple& t) { return t.completed; });
    }
  }
  for (const auto* part : {&active, &retired}) {
    for (const auto& t : *part) {
      if (t.vertex) out.labels.push_back({t.r, t.p});
    }
  }
  std::sort(out.labels.begin(), out.labels.end());
  return out;
}

}  // namespace parcc::reference
