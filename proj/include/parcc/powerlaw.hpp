#pragma once

// Degree distribution and discrete power-law goodness of fit, used to decide
// whether a graph looks scale-free.

#include <cstdint>
#include <map>
#include <vector>

#include "parcc/graph_model.hpp"
#include "parcc/team.hpp"

namespace parcc {

/// degree (>= 1) -> number of vertices with that degree. Degrees count arc
/// multiplicity, so parallel edges and self-loops contribute.
struct DegreeHistogram {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t max_degree = 0;
  std::uint64_t vertex_total = 0;

  std::uint64_t degree_sum() const;
};

struct PowerLawFit {
  double alpha = 0.0;
  std::uint64_t x_min = 0;
  double ks_stat = 1.0;
  std::uint64_t tail_size = 0;
  bool degenerate = true;  // no admissible x_min; ks_stat is 1 by convention
};

inline constexpr double kDefaultTau = 0.05;

DegreeHistogram degree_histogram(TeamContext& ctx, const EdgeList& edges);

/// Same, for arcs already sorted by source across the team.
DegreeHistogram degree_histogram_sorted(TeamContext& ctx, const std::vector<Edge>& sorted_arcs);

/// Fits P(x) = x^-alpha / zeta(alpha, x_min) to the tail x >= x_min.
///
/// For every admissible x_min (a distinct degree at or below the 95th
/// percentile of distinct degrees, with >= 50 tail samples spread over at
/// least two distinct degrees) alpha is the approximate discrete MLE
///   alpha = 1 + N / sum_{x >= x_min} ln(x / (x_min - 0.5))
/// and the fit with the smallest Kolmogorov-Smirnov distance wins.
PowerLawFit fit_power_law(const DegreeHistogram& hist);

/// True iff ks_stat < tau.
bool classify_scale_free(const PowerLawFit& fit, double tau = kDefaultTau);

/// Hurwitz zeta(s, a) = sum_{k>=0} (a + k)^-s for s > 1, a > 0.
double hurwitz_zeta(double s, double a);

}  // namespace parcc
