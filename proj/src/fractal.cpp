#include "apdist/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace apdist {

// ---------------------------------------------------------------------------
// Similitude / IfsSystem

Similitude::Similitude(Eigen::MatrixXd lin, Vec trans)
    : linear(std::move(lin)), translation(std::move(trans)) {
  if (linear.rows() != linear.cols() || linear.rows() != translation.size())
    throw std::invalid_argument("Similitude: shape mismatch");
  Eigen::MatrixXd gram = linear.transpose() * linear;
  scale = std::sqrt(gram(0, 0));
  int n = static_cast<int>(linear.rows());
  if ((gram - scale * scale * Eigen::MatrixXd::Identity(n, n)).norm() > 1e-9 * (1.0 + scale))
    throw std::invalid_argument("Similitude: linear part is not a similarity");
  if (!(scale > 0.0 && scale < 1.0))
    throw std::invalid_argument("Similitude: contraction ratio must be in (0,1)");
}

Similitude Similitude::planar(std::complex<double> multiplier, std::complex<double> offset) {
  Eigen::MatrixXd lin(2, 2);
  lin << multiplier.real(), -multiplier.imag(), multiplier.imag(), multiplier.real();
  Vec t(2);
  t << offset.real(), offset.imag();
  return Similitude(std::move(lin), std::move(t));
}

Vec Similitude::fixed_point() const {
  int n = static_cast<int>(linear.rows());
  return (Eigen::MatrixXd::Identity(n, n) - linear).lu().solve(translation);
}

void IfsSystem::validate() const {
  if (maps.empty()) throw std::invalid_argument("IfsSystem: no maps");
  for (const auto& m : maps)
    if (m.linear.rows() != dim) throw std::invalid_argument("IfsSystem: dimension mismatch");
}

double IfsSystem::max_scale() const {
  double s = 0.0;
  for (const auto& m : maps) s = std::max(s, m.scale);
  return s;
}

IfsSystem antenna_ifs(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::invalid_argument("antenna_ifs: alpha must lie in (0, 1/2)");
  const std::complex<double> i(0.0, 1.0);
  IfsSystem sys;
  sys.dim = 2;
  sys.maps.push_back(Similitude::planar(0.5, 0.0));
  sys.maps.push_back(Similitude::planar(0.5, 0.5));
  sys.maps.push_back(Similitude::planar(alpha * i, 0.5));
  sys.maps.push_back(Similitude::planar(-alpha * i, 0.5 + alpha * i));
  sys.open_set_condition = true;
  return sys;
}

IfsSystem cantor_ifs(double ratio) {
  if (!(ratio > 0.0 && ratio < 0.5))
    throw std::invalid_argument("cantor_ifs: ratio must lie in (0, 1/2)");
  IfsSystem sys;
  sys.dim = 1;
  Eigen::MatrixXd lin(1, 1);
  lin << ratio;
  Vec t0(1), t1(1);
  t0 << 0.0;
  t1 << 1.0 - ratio;
  sys.maps.emplace_back(lin, t0);
  sys.maps.emplace_back(lin, t1);
  sys.open_set_condition = true;
  return sys;
}

AttractorBounds attractor_bounds(const IfsSystem& system) {
  system.validate();
  const int n = system.dim;
  AttractorBounds out;
  out.base_point = system.maps.front().fixed_point();
  double radius = 0.0;
  for (const auto& m : system.maps) {
    double move = (m(out.base_point) - out.base_point).norm();
    if (m.scale < 1.0) radius = std::max(radius, move / (1.0 - m.scale));
  }
  out.ball_radius = radius;

  // Shrink the invariant box: map a box through the affine maps via its
  // center/extent form and take the bounding box of the images.
  Vec center = out.base_point;
  Vec ext = Vec::Constant(n, radius);
  for (int it = 0; it < 256; ++it) {
    Vec lo = Vec::Constant(n, std::numeric_limits<double>::infinity());
    Vec hi = -lo;
    for (const auto& m : system.maps) {
      Vec c = m.linear * center + m.translation;
      Vec e = m.linear.cwiseAbs() * ext;
      lo = lo.cwiseMin(c - e);
      hi = hi.cwiseMax(c + e);
    }
    center = 0.5 * (lo + hi);
    ext = 0.5 * (hi - lo);
  }
  out.box_lo = center - ext;
  out.box_hi = center + ext;
  out.box_diam = (out.box_hi - out.box_lo).norm();
  return out;
}

PointCloud attractor_cloud(const IfsSystem& system, int depth, bool dedupe, long long cap) {
  system.validate();
  if (depth < 1) throw std::invalid_argument("attractor_cloud: depth >= 1 required");
  const int n = system.dim;
  const long long m = static_cast<long long>(system.maps.size());

  double total = 1.0;
  for (int d = 0; d < depth; ++d) total *= static_cast<double>(m);
  if (total > static_cast<double>(cap))
    throw BudgetError("attractor_cloud: " + std::to_string(total) + " points exceed cap " +
                      std::to_string(cap));

  AttractorBounds bounds = attractor_bounds(system);
  double base_res = bounds.box_diam;
  for (int d = 0; d < depth; ++d) base_res *= system.max_scale();

  PointMatrix pts(1, n);
  pts.row(0) = bounds.base_point.transpose();
  for (int level = 0; level < depth; ++level) {
    PointMatrix next(pts.rows() * m, n);
    for (long long i = 0; i < m; ++i) {
      const Similitude& map = system.maps[static_cast<std::size_t>(i)];
      // Word order: outermost map varies slowest, so rows stay in
      // lexicographic composition order (monotone for the Cantor system).
      next.middleRows(i * pts.rows(), pts.rows()) =
          (pts * map.linear.transpose()).rowwise() + map.translation.transpose();
    }
    pts = std::move(next);
  }

  bool merged = false;
  if (dedupe && base_res > 0.0) {
    const double cell = base_res / 4.0 / std::sqrt(static_cast<double>(n));
    std::unordered_set<std::string> seen;
    std::vector<long long> keep;
    std::string key;
    for (long long i = 0; i < pts.rows(); ++i) {
      key.clear();
      for (int d = 0; d < n; ++d) {
        auto c = static_cast<long long>(std::floor(pts(i, d) / cell));
        key.append(reinterpret_cast<const char*>(&c), sizeof(c));
      }
      if (seen.insert(key).second) keep.push_back(i);
    }
    if (static_cast<long long>(keep.size()) < pts.rows()) {
      merged = true;
      PointMatrix compact(static_cast<long long>(keep.size()), n);
      for (std::size_t i = 0; i < keep.size(); ++i) compact.row(static_cast<long long>(i)) = pts.row(keep[i]);
      pts = std::move(compact);
    }
  }

  double resolution = merged ? base_res * 1.25 : base_res;
  return PointCloud(n, std::move(pts), resolution, "ifs:depth=" + std::to_string(depth));
}

// ---------------------------------------------------------------------------
// CanonicalSet

CanonicalSet CanonicalSet::point(int n) {
  CanonicalSet s;
  s.kind = Kind::kPoint;
  s.ambient_dim = n;
  s.validate();
  return s;
}

CanonicalSet CanonicalSet::subspace(int n, int m) {
  CanonicalSet s;
  s.kind = Kind::kSubspace;
  s.ambient_dim = n;
  s.subspace_dim = m;
  s.validate();
  return s;
}

CanonicalSet CanonicalSet::sphere(int n, double radius) {
  CanonicalSet s;
  s.kind = Kind::kSphere;
  s.ambient_dim = n;
  s.param = radius;
  s.validate();
  return s;
}

CanonicalSet CanonicalSet::cantor(double ratio) {
  CanonicalSet s;
  s.kind = Kind::kCantor;
  s.ambient_dim = 1;
  s.param = ratio;
  s.validate();
  return s;
}

CanonicalSet CanonicalSet::antenna(double alpha) {
  CanonicalSet s;
  s.kind = Kind::kAntenna;
  s.ambient_dim = 2;
  s.param = alpha;
  s.validate();
  return s;
}

CanonicalSet CanonicalSet::square_boundary() {
  CanonicalSet s;
  s.kind = Kind::kSquareBoundary;
  s.ambient_dim = 2;
  s.validate();
  return s;
}

CanonicalSet CanonicalSet::ifs_attractor(IfsSystem system) {
  system.validate();
  CanonicalSet s;
  s.kind = Kind::kIfsAttractor;
  s.ambient_dim = system.dim;
  s.system = std::make_shared<IfsSystem>(std::move(system));
  return s;
}

void CanonicalSet::validate() const {
  if (ambient_dim < 1) throw std::invalid_argument("CanonicalSet: ambient_dim >= 1 required");
  switch (kind) {
    case Kind::kSubspace:
      if (subspace_dim < 0 || subspace_dim >= ambient_dim)
        throw std::invalid_argument("CanonicalSet: need 0 <= m < n for a subspace");
      break;
    case Kind::kSphere:
      if (!(param > 0.0)) throw std::invalid_argument("CanonicalSet: sphere radius must be > 0");
      break;
    case Kind::kCantor:
      if (!(param > 0.0 && param < 0.5))
        throw std::invalid_argument("CanonicalSet: Cantor ratio must lie in (0, 1/2)");
      if (ambient_dim != 1) throw std::invalid_argument("CanonicalSet: Cantor set lives in R^1");
      break;
    case Kind::kAntenna:
      if (!(param > 0.0 && param < 0.5))
        throw std::invalid_argument("CanonicalSet: antenna alpha must lie in (0, 1/2)");
      if (ambient_dim != 2) throw std::invalid_argument("CanonicalSet: antenna set lives in R^2");
      break;
    case Kind::kSquareBoundary:
      if (ambient_dim != 2)
        throw std::invalid_argument("CanonicalSet: square boundary lives in R^2");
      break;
    case Kind::kIfsAttractor:
      if (!system) throw std::invalid_argument("CanonicalSet: missing IFS system");
      break;
    case Kind::kPoint:
      break;
  }
}

std::string CanonicalSet::format() const {
  switch (kind) {
    case Kind::kPoint:
      return "point";
    case Kind::kSubspace:
      return "subspace:" + std::to_string(subspace_dim);
    case Kind::kSphere:
      return "sphere:" + format_double(param);
    case Kind::kCantor:
      return "cantor:" + format_double(param);
    case Kind::kAntenna:
      return "antenna:" + format_double(param);
    case Kind::kSquareBoundary:
      return "square-boundary";
    case Kind::kIfsAttractor:
      return "ifs";
  }
  return "?";
}

CanonicalSet CanonicalSet::parse(const std::string& spec, int ambient_dim) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto need_arg = [&]() {
    if (arg.empty()) throw ConfigError("set '" + head + "' needs a parameter, e.g. '" + head + ":0.25'");
    return parse_double(arg);
  };
  if (head == "point") return point(ambient_dim);
  if (head == "subspace") return subspace(ambient_dim, static_cast<int>(need_arg()));
  if (head == "sphere") return sphere(ambient_dim, need_arg());
  if (head == "cantor") return cantor(need_arg());
  if (head == "antenna") return antenna(need_arg());
  if (head == "square-boundary") return square_boundary();
  throw ConfigError("unknown set spec '" + spec + "'");
}

double antenna_dimension_root(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::invalid_argument("antenna_dimension_root: alpha must lie in (0, 1/2)");
  auto f = [alpha](double lambda) {
    return 2.0 * std::pow(2.0, -lambda) + 2.0 * std::pow(alpha, lambda) - 1.0;
  };
  double lo = 1.0, hi = 2.0;
  double flo = f(lo), fhi = f(hi);
  if (!(flo > 0.0 && fhi < 0.0))
    throw std::runtime_error("antenna_dimension_root: no sign change on (1,2)");
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<double> theoretical_assouad_dim(const CanonicalSet& set) {
  switch (set.kind) {
    case CanonicalSet::Kind::kPoint:
      return 0.0;
    case CanonicalSet::Kind::kSubspace:
      return static_cast<double>(set.subspace_dim);
    case CanonicalSet::Kind::kSphere:
      return static_cast<double>(set.ambient_dim - 1);
    case CanonicalSet::Kind::kSquareBoundary:
      return 1.0;
    case CanonicalSet::Kind::kCantor:
      return std::log(2.0) / std::log(1.0 / set.param);
    case CanonicalSet::Kind::kAntenna:
      return antenna_dimension_root(set.param);
    case CanonicalSet::Kind::kIfsAttractor:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

PointCloud adaptive_ifs_cloud(const IfsSystem& system, double target, long long cap,
                              const std::string& tag) {
  AttractorBounds bounds = attractor_bounds(system);
  const int n = system.dim;
  std::vector<Vec> emitted;

  struct Node {
    Eigen::MatrixXd lin;
    Vec trans;
    double scale;
  };
  std::vector<Node> stack;
  stack.push_back({Eigen::MatrixXd::Identity(n, n), Vec::Zero(n), 1.0});
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (node.scale * bounds.box_diam <= target || node.scale < 1e-15) {
      emitted.push_back(node.lin * bounds.base_point + node.trans);
      if (static_cast<long long>(emitted.size()) > cap)
        throw BudgetError("canonical_cloud: attractor discretization exceeds cap");
      continue;
    }
    // Push in reverse so children pop in map order.
    for (auto it = system.maps.rbegin(); it != system.maps.rend(); ++it) {
      stack.push_back({node.lin * it->linear, node.lin * it->translation + node.trans,
                       node.scale * it->scale});
    }
  }

  PointMatrix pts(static_cast<long long>(emitted.size()), n);
  for (std::size_t i = 0; i < emitted.size(); ++i)
    pts.row(static_cast<long long>(i)) = emitted[i].transpose();
  return PointCloud(n, std::move(pts), target, tag);
}

}  // namespace

PointCloud canonical_cloud(const CanonicalSet& set, double target_resolution, double window,
                           long long cap) {
  set.validate();
  if (!(target_resolution > 0.0))
    throw std::invalid_argument("canonical_cloud: target_resolution > 0 required");
  const int n = set.ambient_dim;

  switch (set.kind) {
    case CanonicalSet::Kind::kPoint: {
      PointMatrix pts = PointMatrix::Zero(1, n);
      return PointCloud(n, std::move(pts), 0.0, "point");
    }
    case CanonicalSet::Kind::kSubspace: {
      const int m = set.subspace_dim;
      std::string tag = set.format() + ";W=" + format_double(window);
      if (m == 0) {
        PointMatrix pts = PointMatrix::Zero(1, n);
        return PointCloud(n, std::move(pts), 0.0, tag);
      }
      double h = 2.0 * target_resolution / std::sqrt(static_cast<double>(m));
      long long g = static_cast<long long>(std::ceil(2.0 * window / h)) + 1;
      double total = std::pow(static_cast<double>(g), m);
      if (total > static_cast<double>(cap))
        throw BudgetError("canonical_cloud: subspace grid exceeds cap");
      long long rows = static_cast<long long>(total);
      PointMatrix pts = PointMatrix::Zero(rows, n);
      for (long long i = 0; i < rows; ++i) {
        long long rem = i;
        for (int d = 0; d < m; ++d) {
          long long idx = rem % g;
          rem /= g;
          pts(i, d) = -window + 2.0 * window * static_cast<double>(idx) / static_cast<double>(g - 1);
        }
      }
      return PointCloud(n, std::move(pts), target_resolution, tag);
    }
    case CanonicalSet::Kind::kSphere: {
      const double rho = set.param;
      if (n == 1) {
        PointMatrix pts(2, 1);
        pts << -rho, rho;
        return PointCloud(n, std::move(pts), 0.0, set.format());
      }
      if (n == 2) {
        long long count = static_cast<long long>(std::ceil(2.0 * M_PI * rho / target_resolution));
        if (count > cap) throw BudgetError("canonical_cloud: sphere grid exceeds cap");
        PointMatrix pts(count, 2);
        for (long long i = 0; i < count; ++i) {
          double a = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(count);
          pts(i, 0) = rho * std::cos(a);
          pts(i, 1) = rho * std::sin(a);
        }
        return PointCloud(n, std::move(pts), target_resolution, set.format());
      }
      if (n == 3) {
        // Latitude rings with along-ring spacing <= h and ring spacing <= h.
        double h = target_resolution;
        long long rings = static_cast<long long>(std::ceil(M_PI * rho / h));
        std::vector<double> coords;
        for (long long j = 0; j < rings; ++j) {
          double theta = M_PI * (static_cast<double>(j) + 0.5) / static_cast<double>(rings);
          double ring_r = rho * std::sin(theta);
          long long k = std::max<long long>(
              1, static_cast<long long>(std::ceil(2.0 * M_PI * ring_r / h)));
          for (long long i = 0; i < k; ++i) {
            double phi = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(k);
            coords.push_back(ring_r * std::cos(phi));
            coords.push_back(ring_r * std::sin(phi));
            coords.push_back(rho * std::cos(theta));
          }
          if (static_cast<long long>(coords.size() / 3) > cap)
            throw BudgetError("canonical_cloud: sphere grid exceeds cap");
        }
        long long rows = static_cast<long long>(coords.size() / 3);
        PointMatrix pts(rows, 3);
        for (long long i = 0; i < rows; ++i)
          for (int d = 0; d < 3; ++d) pts(i, d) = coords[static_cast<std::size_t>(3 * i + d)];
        return PointCloud(n, std::move(pts), target_resolution, set.format());
      }
      throw std::invalid_argument("canonical_cloud: sphere supported for n <= 3");
    }
    case CanonicalSet::Kind::kSquareBoundary: {
      long long per_side = static_cast<long long>(std::ceil(1.0 / target_resolution));
      if (4 * per_side > cap) throw BudgetError("canonical_cloud: square grid exceeds cap");
      PointMatrix pts(4 * per_side, 2);
      for (long long i = 0; i < per_side; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(per_side);
        pts.row(i) << t, 0.0;
        pts.row(per_side + i) << 1.0, t;
        pts.row(2 * per_side + i) << 1.0 - t, 1.0;
        pts.row(3 * per_side + i) << 0.0, 1.0 - t;
      }
      return PointCloud(n, std::move(pts), target_resolution, set.format());
    }
    case CanonicalSet::Kind::kCantor: {
      IfsSystem sys = cantor_ifs(set.param);
      AttractorBounds b = attractor_bounds(sys);
      int depth = 1;
      double res = b.box_diam * set.param;
      while (res > target_resolution) {
        ++depth;
        res *= set.param;
      }
      PointCloud cloud = attractor_cloud(sys, depth, false, cap);
      cloud.set_tag = set.format();
      return cloud;
    }
    case CanonicalSet::Kind::kAntenna:
      return adaptive_ifs_cloud(antenna_ifs(set.param), target_resolution, cap, set.format());
    case CanonicalSet::Kind::kIfsAttractor:
      return adaptive_ifs_cloud(*set.system, target_resolution, cap, set.format());
  }
  throw std::logic_error("canonical_cloud: unreachable");
}

DistanceOracle canonical_oracle(const CanonicalSet& set, double target_resolution, double window) {
  set.validate();
  switch (set.kind) {
    case CanonicalSet::Kind::kPoint:
      return DistanceOracle::point(Vec::Zero(set.ambient_dim));
    case CanonicalSet::Kind::kSubspace:
      return DistanceOracle::subspace(set.ambient_dim, set.subspace_dim);
    case CanonicalSet::Kind::kSphere:
      return DistanceOracle::sphere(set.ambient_dim, set.param);
    case CanonicalSet::Kind::kSquareBoundary:
      return DistanceOracle::square_boundary();
    default:
      return DistanceOracle::cloud(canonical_cloud(set, target_resolution, window));
  }
}

Vec canonical_anchor(const CanonicalSet& set) {
  const int n = set.ambient_dim;
  switch (set.kind) {
    case CanonicalSet::Kind::kPoint:
    case CanonicalSet::Kind::kSubspace:
    case CanonicalSet::Kind::kCantor:
      return Vec::Zero(n);
    case CanonicalSet::Kind::kSphere: {
      Vec p = Vec::Zero(n);
      p[0] = set.param;
      return p;
    }
    case CanonicalSet::Kind::kAntenna:
      return Vec::Zero(2);
    case CanonicalSet::Kind::kSquareBoundary: {
      Vec p(2);
      p << 0.5, 0.0;
      return p;
    }
    case CanonicalSet::Kind::kIfsAttractor:
      return set.system->maps.front().fixed_point();
  }
  return Vec::Zero(n);
}

Vec canonical_surface_point(const CanonicalSet& set, CounterRng& rng, double window) {
  const int n = set.ambient_dim;
  switch (set.kind) {
    case CanonicalSet::Kind::kPoint:
      return Vec::Zero(n);
    case CanonicalSet::Kind::kSubspace: {
      Vec p = Vec::Zero(n);
      for (int d = 0; d < set.subspace_dim; ++d)
        p[d] = (2.0 * rng.next_unit() - 1.0) * 0.5 * window;
      return p;
    }
    case CanonicalSet::Kind::kSphere: {
      const double rho = set.param;
      Vec p = Vec::Zero(n);
      if (n == 1) {
        p[0] = rng.next_unit() < 0.5 ? -rho : rho;
      } else if (n == 2) {
        double a = 2.0 * M_PI * rng.next_unit();
        p << rho * std::cos(a), rho * std::sin(a);
      } else {
        double z = 2.0 * rng.next_unit() - 1.0;
        double a = 2.0 * M_PI * rng.next_unit();
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        p[0] = rho * r * std::cos(a);
        p[1] = rho * r * std::sin(a);
        p[2] = rho * z;
      }
      return p;
    }
    case CanonicalSet::Kind::kSquareBoundary: {
      double u = rng.next_unit() * 4.0;
      int side = std::min(3, static_cast<int>(u));
      double t = std::clamp(u - side, 0.02, 0.98);
      Vec p(2);
      switch (side) {
        case 0: p << t, 0.0; break;
        case 1: p << 1.0, t; break;
        case 2: p << 1.0 - t, 1.0; break;
        default: p << 0.0, 1.0 - t; break;
      }
      return p;
    }
    case CanonicalSet::Kind::kCantor: {
      const double r = set.param;
      double x = 0.0;
      double w = 1.0 - r;
      double f = 1.0;
      for (int i = 0; i < 48; ++i) {
        if (rng.next_u64() & 1) x += w * f;
        f *= r;
      }
      Vec p(1);
      p << x;
      return p;
    }
    case CanonicalSet::Kind::kAntenna:
    case CanonicalSet::Kind::kIfsAttractor: {
      const IfsSystem sys =
          set.kind == CanonicalSet::Kind::kAntenna ? antenna_ifs(set.param) : *set.system;
      Vec p = sys.maps.front().fixed_point();
      for (int i = 0; i < 48; ++i) {
        std::size_t k = static_cast<std::size_t>(rng.next_u64() % sys.maps.size());
        p = sys.maps[k](p);
      }
      return p;
    }
  }
  return Vec::Zero(n);
}

Vec point_at_exact_distance(const CanonicalSet& set, const Vec& surface_point, double d) {
  if (!(d > 0.0)) throw std::invalid_argument("point_at_exact_distance: d > 0 required");
  const int n = set.ambient_dim;
  Vec p = surface_point;
  switch (set.kind) {
    case CanonicalSet::Kind::kPoint:
      p[0] += d;
      return p;
    case CanonicalSet::Kind::kSubspace:
      p[n - 1] += d;
      return p;
    case CanonicalSet::Kind::kSphere:
      return surface_point * (1.0 + d / set.param);
    case CanonicalSet::Kind::kSquareBoundary: {
      Vec nu(2);
      if (surface_point[1] == 0.0)
        nu << 0.0, -1.0;
      else if (surface_point[0] == 1.0)
        nu << 1.0, 0.0;
      else if (surface_point[1] == 1.0)
        nu << 0.0, 1.0;
      else if (surface_point[0] == 0.0)
        nu << -1.0, 0.0;
      else
        throw std::invalid_argument("point_at_exact_distance: point not on the square boundary");
      return surface_point + d * nu;
    }
    case CanonicalSet::Kind::kCantor: {
      // The set lies in [0, min(surface)..]; stepping left of 0 is exact.
      Vec q(1);
      q << -d;
      return q;
    }
    case CanonicalSet::Kind::kAntenna: {
      // The baseline [0,1]x{0} lies in the attractor and every other point
      // sits above it, so dropping below the baseline realizes the distance.
      Vec q(2);
      q << std::clamp(surface_point[0], 0.0, 1.0), -d;
      return q;
    }
    case CanonicalSet::Kind::kIfsAttractor:
      throw std::invalid_argument(
          "point_at_exact_distance: no exact construction for a generic attractor");
  }
  return p;
}

DistanceOracle antenna_sided_square_oracle(double alpha, double spike_resolution) {
  DistanceOracle spikes =
      DistanceOracle::cloud(canonical_cloud(CanonicalSet::antenna(alpha), spike_resolution));
  Eigen::MatrixXd flip_y(2, 2), rot_left(2, 2), swap_xy(2, 2);
  flip_y << 1, 0, 0, -1;
  rot_left << 0, -1, 1, 0;
  swap_xy << 0, 1, 1, 0;
  Vec zero = Vec::Zero(2), up(2), right(2);
  up << 0, 1;
  right << 1, 0;
  std::vector<DistanceOracle> parts;
  parts.push_back(DistanceOracle::square_boundary());
  parts.push_back(DistanceOracle::transformed(spikes, flip_y, zero));                  // bottom
  parts.push_back(DistanceOracle::transformed(spikes, Eigen::MatrixXd::Identity(2, 2), up));  // top
  parts.push_back(DistanceOracle::transformed(spikes, rot_left, zero));                // left
  parts.push_back(DistanceOracle::transformed(spikes, swap_xy, right));                // right
  return DistanceOracle::union_of(std::move(parts));
}

}  // namespace apdist
