#include "parcc/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parcc/buckets.hpp"
#include "parcc/samplesort.hpp"

namespace parcc {

std::uint64_t DegreeHistogram::degree_sum() const {
  std::uint64_t s = 0;
  for (const auto& [degree, count] : counts) s += degree * count;
  return s;
}

DegreeHistogram degree_histogram(TeamContext& ctx, const EdgeList& edges) {
  return degree_histogram_sorted(ctx, samplesort(ctx, edges.arcs));
}

DegreeHistogram degree_histogram_sorted(TeamContext& ctx, const std::vector<Edge>& sorted_arcs) {
  const auto runs = reduce_buckets(
      ctx, std::span<const Edge>(sorted_arcs), [](const Edge& e) { return e.src; },
      [](const Edge&) { return std::uint64_t{1}; },
      [](std::uint64_t a, std::uint64_t b) { return a + b; });

  std::uint64_t local_max = 0;
  for (const auto& r : runs) {
    if (r.owns_first) local_max = std::max(local_max, r.value);
  }
  const auto max_degree = ctx.all_reduce(local_max, ops::max<std::uint64_t>());

  std::vector<std::uint64_t> local(max_degree + 1, 0);
  for (const auto& r : runs) {
    if (r.owns_first) ++local[r.value];
  }
  const auto global = ctx.all_reduce(local, ops::elementwise_plus<std::uint64_t>());

  DegreeHistogram hist;
  hist.max_degree = max_degree;
  for (std::uint64_t d = 1; d < global.size(); ++d) {
    if (global[d] == 0) continue;
    hist.counts.emplace(d, global[d]);
    hist.vertex_total += global[d];
  }
  return hist;
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0) || !(a > 0.0)) throw std::domain_error("hurwitz_zeta requires s > 1 and a > 0");
  // Direct summation up to a + n >= 20 + s, then Euler-Maclaurin.
  const double threshold = 20.0 + s;
  double sum = 0.0;
  double x = a;
  for (; x < threshold; x += 1.0) sum += std::pow(x, -s);

  sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  // B_{2j} / (2j)!
  static constexpr double kCoeff[] = {
      1.0 / 12.0,                 // B2 / 2!
      -1.0 / 720.0,               // B4 / 4!
      1.0 / 30240.0,              // B6 / 6!
      -1.0 / 1209600.0,           // B8 / 8!
      1.0 / 47900160.0,           // B10 / 10!
      -691.0 / 1307674368000.0,   // B12 / 12!
      1.0 / 74724249600.0,        // B14 / 14!
  };
  double rising = s;             // s (s+1) ... (s + 2j - 2)
  double power = std::pow(x, -s - 1.0);  // x^(-s - 2j + 1)
  for (std::size_t j = 0; j < std::size(kCoeff); ++j) {
    sum += kCoeff[j] * rising * power;
    rising *= (s + 2.0 * static_cast<double>(j) + 1.0) * (s + 2.0 * static_cast<double>(j) + 2.0);
    power /= x * x;
  }
  return sum;
}

PowerLawFit fit_power_law(const DegreeHistogram& hist) {
  std::vector<double> degrees;
  std::vector<double> counts;
  for (const auto& [d, c] : hist.counts) {
    degrees.push_back(static_cast<double>(d));
    counts.push_back(static_cast<double>(c));
  }
  const std::size_t k = degrees.size();

  PowerLawFit best;
  if (k == 0) return best;
  best.x_min = static_cast<std::uint64_t>(degrees.front());
  best.tail_size = hist.vertex_total;

  std::vector<double> tail(k + 1, 0.0);
  for (std::size_t i = k; i-- > 0;) tail[i] = tail[i + 1] + counts[i];

  constexpr double kMinTail = 50.0;
  const std::size_t last_candidate =
      k >= 2 ? static_cast<std::size_t>(std::floor(0.95 * static_cast<double>(k - 1))) : 0;

  for (std::size_t i = 0; i <= last_candidate && k - i >= 2; ++i) {
    const double n = tail[i];
    if (n < kMinTail) break;
    const double x_min = degrees[i];

    double log_sum = 0.0;
    for (std::size_t j = i; j < k; ++j) log_sum += counts[j] * std::log(degrees[j] / (x_min - 0.5));
    const double alpha = 1.0 + n / log_sum;
    const double norm = hurwitz_zeta(alpha, x_min);

    // sup over integers x >= x_min of |empirical CDF - model CDF|
    double ks = 0.0;
    double model = 0.0;
    double empirical = 0.0;
    std::size_t j = i;
    for (double x = x_min; x <= degrees.back(); x += 1.0) {
      model += std::pow(x, -alpha) / norm;
      if (j < k && degrees[j] == x) empirical += counts[j++] / n;
      ks = std::max(ks, std::abs(empirical - model));
    }

    if (best.degenerate || ks < best.ks_stat) {
      best.alpha = alpha;
      best.x_min = static_cast<std::uint64_t>(x_min);
      best.ks_stat = ks;
      best.tail_size = static_cast<std::uint64_t>(n);
      best.degenerate = false;
    }
  }

  if (best.degenerate) {
    // Report the MLE at the smallest degree; the statistic stays at 1.
    double log_sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) log_sum += counts[j] * std::log(degrees[j] / (degrees[0] - 0.5));
    best.alpha = 1.0 + tail[0] / log_sum;
    best.ks_stat = 1.0;
  }
  return best;
}

bool classify_scale_free(const PowerLawFit& fit, double tau) { return fit.ks_stat < tau; }

}  // namespace parcc
