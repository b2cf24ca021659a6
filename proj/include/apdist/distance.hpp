#pragma once

#include <memory>
#include <vector>

#include "apdist/types.hpp"

namespace apdist {

struct DistanceBand {
  double estimate = 0.0;  // computed value d
  double lo = 0.0;        // certified lower bound for the true quantity
  double hi = 0.0;        // certified upper bound
};

/// Spatial index over a point cloud: uniform grid buckets with an expanding
/// ring search, exact brute force below 512 points. Immutable after build.
class GridIndex {
 public:
  GridIndex() = default;
  explicit GridIndex(const PointMatrix& pts);

  double nearest_distance(const double* x, int dim) const;

  // Visits indices of all points within r of x (inclusive).
  void for_each_within(const double* x, int dim, double r,
                       const std::function<void(long long)>& fn) const;

  long long count() const { return pts_ ? pts_->rows() : 0; }

 private:
  std::shared_ptr<const PointMatrix> pts_;
  int dim_ = 0;
  bool brute_ = true;
  double cell_ = 1.0;
  Vec lo_, hi_;
  std::vector<int> cells_per_dim_;
  std::vector<std::int64_t> offsets_;  // CSR over flattened cells
  std::vector<long long> order_;

  std::int64_t cell_id(const std::vector<int>& c) const;
  double brute_nearest(const double* x, int dim) const;
};

/// Distance field of a closed set E. Exact closed forms for the sets that
/// admit one (point, affine subspace, sphere, unit-square boundary); a
/// grid-bucketed cloud index otherwise. Union and isometry wrappers compose
/// fields. Thread-safe: immutable after construction.
class DistanceOracle {
 public:
  DistanceOracle() = default;

  static DistanceOracle point(Vec p);
  static DistanceOracle subspace(int ambient_dim, int subspace_dim);  // first m coords, origin
  static DistanceOracle sphere(int ambient_dim, double radius);       // centered at origin
  static DistanceOracle square_boundary();                            // boundary of [0,1]^2
  static DistanceOracle cloud(PointCloud pc);
  static DistanceOracle union_of(std::vector<DistanceOracle> parts);
  // x -> inner(rot^T (x - shift)); rot must be orthogonal.
  static DistanceOracle transformed(DistanceOracle inner, Eigen::MatrixXd rot, Vec shift);

  bool valid() const { return impl_ != nullptr; }
  int dim() const;
  bool exact() const;
  double resolution() const;

  double estimate(const Vec& x) const;
  DistanceBand band(const Vec& x) const;

  DistanceBand inf_on_ball(const Ball& b) const;
  DistanceBand sup_on_ball(const Ball& b) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit DistanceOracle(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

inline double distance_to_set(const Vec& x, const DistanceOracle& oracle) {
  return oracle.estimate(x);
}
inline DistanceBand distance_to_set_band(const Vec& x, const DistanceOracle& oracle) {
  return oracle.band(x);
}
inline DistanceBand sup_distance_on_ball(const Ball& b, const DistanceOracle& oracle) {
  return oracle.sup_on_ball(b);
}
inline DistanceBand inf_distance_on_ball(const Ball& b, const DistanceOracle& oracle) {
  return oracle.inf_on_ball(b);
}

}  // namespace apdist
