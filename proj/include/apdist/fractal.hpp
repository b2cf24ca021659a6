#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "apdist/distance.hpp"
#include "apdist/types.hpp"

namespace apdist {

/// Contracting similarity x -> linear * x + translation, with ||linear|| equal
/// to the contraction ratio. Planar maps can be given as complex multipliers.
struct Similitude {
  Eigen::MatrixXd linear;
  Vec translation;
  double scale = 0.0;

  Similitude(Eigen::MatrixXd lin, Vec trans);
  static Similitude planar(std::complex<double> multiplier, std::complex<double> offset);

  Vec operator()(const Vec& x) const { return linear * x + translation; }
  Vec fixed_point() const;
};

struct IfsSystem {
  int dim = 0;
  std::vector<Similitude> maps;
  bool open_set_condition = false;

  void validate() const;
  double max_scale() const;
};

/// The four-map planar antenna system:
///   z/2,  z/2 + 1/2,  a*i*z + 1/2,  -a*i*z + 1/2 + a*i,   0 < a < 1/2.
IfsSystem antenna_ifs(double alpha);

/// Two-map system {r x, r x + (1 - r)} whose attractor is the middle Cantor
/// set on [0,1] with ratio r in (0, 1/2).
IfsSystem cantor_ifs(double ratio);

/// Ball B(base, radius) mapped into itself by every map; the attractor lies
/// inside, and iterating the bounding box of the map images gives a tight
/// invariant box.
struct AttractorBounds {
  Vec base_point;
  double ball_radius = 0.0;
  Vec box_lo, box_hi;
  double box_diam = 0.0;
};
AttractorBounds attractor_bounds(const IfsSystem& system);

/// All depth-fold compositions applied to the fixed point of map 0. Points lie
/// exactly on the attractor; resolution = (max scale)^depth * diam(bounding
/// box). With dedupe, points closer than resolution/4 collapse to the first
/// representative and the declared resolution widens accordingly.
PointCloud attractor_cloud(const IfsSystem& system, int depth, bool dedupe = false,
                           long long cap = 1 << 22);

struct CanonicalSet {
  enum class Kind { kPoint, kSubspace, kSphere, kCantor, kAntenna, kSquareBoundary, kIfsAttractor };

  Kind kind = Kind::kPoint;
  int ambient_dim = 2;
  double param = 0.0;     // Cantor ratio / Antenna alpha / Sphere radius
  int subspace_dim = 0;   // Subspace only
  std::shared_ptr<const IfsSystem> system;  // IfsAttractor only

  static CanonicalSet point(int n);
  static CanonicalSet subspace(int n, int m);
  static CanonicalSet sphere(int n, double radius);
  static CanonicalSet cantor(double ratio);          // ambient R^1
  static CanonicalSet antenna(double alpha);         // ambient R^2
  static CanonicalSet square_boundary();             // ambient R^2
  static CanonicalSet ifs_attractor(IfsSystem system);

  void validate() const;
  std::string format() const;
  // "point" | "subspace:m" | "sphere:r" | "cantor:r" | "antenna:a" | "square-boundary"
  static CanonicalSet parse(const std::string& spec, int ambient_dim);
};

/// Closed-form Assouad dimensions; the antenna value is the unique root
/// lambda in (1,2) of 2*2^-lambda + 2*alpha^lambda = 1, found by bisection to
/// 1e-10 after asserting a sign change. Generic IFS attractors return nullopt.
std::optional<double> theoretical_assouad_dim(const CanonicalSet& set);

/// Root of the antenna dimension equation for a given alpha in (0, 1/2).
double antenna_dimension_root(double alpha);

/// Discretization with resolution <= target_resolution. Unbounded sets are
/// windowed to [-window, window]^n (recorded in set_tag); multi-ratio IFS
/// attractors descend the composition tree until every cell is below target,
/// which keeps the point count near the information-theoretic minimum.
PointCloud canonical_cloud(const CanonicalSet& set, double target_resolution,
                           double window = 16.0, long long cap = 1 << 23);

/// Distance field for the set: exact closed forms where available, otherwise
/// a grid-indexed cloud at the requested resolution.
DistanceOracle canonical_oracle(const CanonicalSet& set, double target_resolution,
                                double window = 16.0);

/// A point of E to center probes on, and a construction for points at exact
/// distance d from E (used by the stress ball families).
Vec canonical_anchor(const CanonicalSet& set);
Vec canonical_surface_point(const CanonicalSet& set, CounterRng& rng, double window = 16.0);
Vec point_at_exact_distance(const CanonicalSet& set, const Vec& surface_point, double d);

/// The unit-square boundary with the four sides replaced by outward-pointing
/// isometric copies of the antenna attractor. Inside the square the distance
/// field coincides with the plain square-boundary field; the cloud components
/// certify that the spikes never come closer.
DistanceOracle antenna_sided_square_oracle(double alpha, double spike_resolution);

}  // namespace apdist
