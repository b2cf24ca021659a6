#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "apdist/rng.hpp"

namespace apdist {

using Vec = Eigen::VectorXd;
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Ball {
  Vec center;
  double radius = 0.0;

  Ball() = default;
  Ball(Vec c, double r) : center(std::move(c)), radius(r) {
    if (radius <= 0.0) throw std::invalid_argument("Ball: radius must be positive");
    if (center.size() < 1) throw std::invalid_argument("Ball: empty center");
  }

  int dim() const { return static_cast<int>(center.size()); }
  bool contains(const Vec& x) const { return (x - center).norm() < radius; }
};

/// Closed/open endpoints are tracked so the p = 1 Muckenhoupt range [0, c)
/// can be represented faithfully.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(double x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
  }
  double length() const { return hi - lo; }
  double distance_to_edge(double x) const {
    double a = std::abs(x - lo);
    double b = std::abs(x - hi);
    return a < b ? a : b;
  }
};

struct MCConfig {
  std::uint64_t seed = 0x5eed0001ULL;
  int shells = 16;
  int samples_per_shell = 4096;
  McSequence sequence = McSequence::kPseudoRandom;

  void validate() const {
    if (shells < 1) throw std::invalid_argument("MCConfig: shells must be >= 1");
    if (samples_per_shell < 16)
      throw std::invalid_argument("MCConfig: samples_per_shell must be >= 16");
  }
  StreamKey root_key() const { return StreamKey(seed); }
};

/// Stochastic estimate with separate noise (std_error) and one-sided bias
/// (truncation_bound) accounting. A divergent flag replaces finite bounds
/// when the shell truncation cannot shrink.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  double truncation_bound = 0.0;
  long long samples_used = 0;
  bool divergent = false;
  bool insufficient_samples = false;

  bool finite() const { return !divergent; }
};

// First-order propagation helpers. Flags and sample counts accumulate.
Estimate estimate_scale(const Estimate& a, double c);
Estimate estimate_pow(const Estimate& a, double k);
Estimate estimate_product(const Estimate& a, const Estimate& b);
Estimate estimate_ratio(const Estimate& a, const Estimate& b);

/// Finite stand-in for a closed set E: points on E plus the Hausdorff-style
/// coverage bound `resolution` (every point of E is within resolution of the
/// cloud; cloud points lie on E).
struct PointCloud {
  int dim = 0;
  PointMatrix points;  // one row per point
  double resolution = 0.0;
  std::string set_tag;

  PointCloud() = default;
  PointCloud(int d, PointMatrix pts, double res, std::string tag = {});

  long long count() const { return points.rows(); }
  Vec point(long long i) const { return points.row(i).transpose(); }
  void validate() const;
};

// CSV: header "dim,<n>,resolution,<eps>", then one comma-separated point per line.
void save_point_cloud_csv(const PointCloud& cloud, const std::string& path);
PointCloud load_point_cloud_csv(const std::string& path);

// Stable shortest-roundtrip formatting used for every CSV/JSON number.
std::string format_double(double x);

double parse_double(const std::string& s);  // throws ConfigError with context

}  // namespace apdist
