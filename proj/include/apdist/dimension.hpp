#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "apdist/fractal.hpp"
#include "apdist/geometry.hpp"

namespace apdist {

struct ScalePair {
  double R = 0.0;
  double r = 0.0;
  long long center_index = 0;

  ScalePair(double R_, double r_, long long ci) : R(R_), r(r_), center_index(ci) {
    if (!(r > 0.0 && r < R)) throw std::invalid_argument("ScalePair: need 0 < r < R");
  }
};

/// Greedy cover count of cloud \cap B(center, R) by balls of radius r:
/// repeatedly pick the first uncovered cloud point in the ball and cover
/// everything within r of it. Deterministic in the cloud ordering; within the
/// usual net-vs-cover factor of optimal. Refuses r below twice the cloud
/// resolution, where the count would be resolution-limited.
int covering_number(const PointCloud& cloud, const GridIndex& index, const Vec& center, double R,
                    double r);
int covering_number(const PointCloud& cloud, const Vec& center, double R, double r);

struct DimEstimate {
  double value = 0.0;   // sup of log N / log(R/r): a lower estimate of dim_A
  double spread = 0.0;  // interquartile range over the top decile of exponents
};

DimEstimate assouad_dim_estimate(const PointCloud& cloud, const std::vector<ScalePair>& pairs);

struct AikawaProbe {
  Vec center;
  double radius = 0.0;
  double alpha = 0.0;
  Estimate ratio;
};

/// Normalized distance-power integral over B(center, r):
///   [ integral_B delta_E^{-alpha} ] / [ r^{-alpha} mu(B) ].
Estimate aikawa_ratio(const DistanceOracle& oracle, const Vec& center, double r, double alpha,
                      const MCConfig& cfg);

struct CodimBracket {
  std::optional<double> lo;  // largest grid alpha with all ratios under the cap
  std::optional<double> hi;  // smallest grid alpha with a clear failure signal
  std::vector<AikawaProbe> probes;
  bool conclusive() const { return lo && hi && *lo <= *hi; }
};

/// Brackets the Aikawa/Assouad codimension: alpha below it keeps ratios
/// bounded, alpha above it makes them blow up. Divergence-flagged ratios
/// count as above the cap; the upper edge requires either a majority of
/// divergent probes or ratio growth by `growth_factor` across descending r
/// at some center. Inconclusive (empty) brackets are reported, not guessed.
CodimBracket aikawa_codim_estimate(const DistanceOracle& oracle,
                                   const std::vector<double>& alpha_grid,
                                   const std::vector<std::pair<Vec, double>>& probes,
                                   const MCConfig& cfg, double cap = 64.0,
                                   double growth_factor = 2.0);

/// Dyadic-cell cover sum  count * v_n * (2^-level)^(n - q)  over the cells
/// (half-open, side 2^-level) that meet the cloud, with all cover balls of
/// radius 2^-level. Decreasing in level, it upper-bounds the Hausdorff
/// content of codimension q at scale cap R_cap.
double hausdorff_content_codim(const PointCloud& cloud, double q, double R_cap, int grid_level);

}  // namespace apdist
