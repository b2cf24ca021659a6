#include "apdist/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace apdist {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// GridIndex

GridIndex::GridIndex(const PointMatrix& pts) {
  pts_ = std::make_shared<PointMatrix>(pts);
  dim_ = static_cast<int>(pts.cols());
  long long n = pts.rows();
  brute_ = n < 512;
  if (brute_) return;

  lo_ = pts.colwise().minCoeff().transpose();
  hi_ = pts.colwise().maxCoeff().transpose();

  // Aim for ~2 points per occupied cell along dimensions with real extent.
  double volume = 1.0;
  int live_dims = 0;
  for (int d = 0; d < dim_; ++d) {
    double ext = hi_[d] - lo_[d];
    if (ext > 0.0) {
      volume *= ext;
      ++live_dims;
    }
  }
  if (live_dims == 0) {
    brute_ = true;  // all points coincide
    return;
  }
  cell_ = std::pow(volume * 2.0 / static_cast<double>(n), 1.0 / live_dims);

  for (;;) {
    cells_per_dim_.assign(static_cast<std::size_t>(dim_), 1);
    double total = 1.0;
    for (int d = 0; d < dim_; ++d) {
      double ext = hi_[d] - lo_[d];
      int m = ext > 0.0 ? static_cast<int>(std::ceil(ext / cell_)) : 1;
      m = std::clamp(m, 1, 1 << 20);
      cells_per_dim_[static_cast<std::size_t>(d)] = m;
      total *= m;
    }
    if (total <= 4.0 * static_cast<double>(n) + 64.0) break;
    cell_ *= 1.5;
  }

  std::int64_t total_cells = 1;
  for (int m : cells_per_dim_) total_cells *= m;

  std::vector<std::int64_t> ids(static_cast<std::size_t>(n));
  std::vector<int> c(static_cast<std::size_t>(dim_));
  for (long long i = 0; i < n; ++i) {
    for (int d = 0; d < dim_; ++d) {
      int m = cells_per_dim_[static_cast<std::size_t>(d)];
      int cd = static_cast<int>(std::floor((pts(i, d) - lo_[d]) / cell_));
      c[static_cast<std::size_t>(d)] = std::clamp(cd, 0, m - 1);
    }
    ids[static_cast<std::size_t>(i)] = cell_id(c);
  }

  offsets_.assign(static_cast<std::size_t>(total_cells) + 1, 0);
  for (long long i = 0; i < n; ++i) ++offsets_[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)]) + 1];
  for (std::size_t k = 1; k < offsets_.size(); ++k) offsets_[k] += offsets_[k - 1];
  order_.resize(static_cast<std::size_t>(n));
  std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (long long i = 0; i < n; ++i) {
    std::int64_t id = ids[static_cast<std::size_t>(i)];
    order_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(id)]++)] = i;
  }
}

std::int64_t GridIndex::cell_id(const std::vector<int>& c) const {
  std::int64_t id = 0;
  for (int d = 0; d < dim_; ++d) {
    id = id * cells_per_dim_[static_cast<std::size_t>(d)] + c[static_cast<std::size_t>(d)];
  }
  return id;
}

double GridIndex::brute_nearest(const double* x, int dim) const {
  const PointMatrix& pts = *pts_;
  double best = kInf;
  for (long long i = 0; i < pts.rows(); ++i) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
      double t = pts(i, d) - x[d];
      s += t * t;
    }
    if (s < best) best = s;
  }
  return std::sqrt(best);
}

double GridIndex::nearest_distance(const double* x, int dim) const {
  if (brute_) return brute_nearest(x, dim);
  const PointMatrix& pts = *pts_;

  std::vector<int> cx(static_cast<std::size_t>(dim));
  int ring_limit = 0;
  for (int d = 0; d < dim; ++d) {
    int m = cells_per_dim_[static_cast<std::size_t>(d)];
    int cd = static_cast<int>(std::floor((x[d] - lo_[d]) / cell_));
    cx[static_cast<std::size_t>(d)] = cd;
    ring_limit = std::max(ring_limit, std::max(cd, m - 1 - cd) + 1);
  }

  double best2 = kInf;
  std::vector<int> c(static_cast<std::size_t>(dim));

  auto scan_cell = [&](const std::vector<int>& cc) {
    std::int64_t id = cell_id(cc);
    for (std::int64_t k = offsets_[static_cast<std::size_t>(id)];
         k < offsets_[static_cast<std::size_t>(id) + 1]; ++k) {
      long long i = order_[static_cast<std::size_t>(k)];
      double s = 0.0;
      for (int d = 0; d < dim; ++d) {
        double t = pts(i, d) - x[d];
        s += t * t;
      }
      if (s < best2) best2 = s;
    }
  };

  for (int ring = 0; ring <= ring_limit; ++ring) {
    if (ring > 0 && best2 <= static_cast<double>(ring - 1) * (ring - 1) * cell_ * cell_) break;
    // Enumerate cells at Chebyshev distance == ring from cx (clipped to grid).
    std::function<void(int, bool)> recurse = [&](int d, bool on_shell) {
      if (d == dim) {
        if (on_shell) scan_cell(c);
        return;
      }
      int m = cells_per_dim_[static_cast<std::size_t>(d)];
      int base = cx[static_cast<std::size_t>(d)];
      for (int dd = -ring; dd <= ring; ++dd) {
        int v = base + dd;
        if (v < 0 || v >= m) continue;
        c[static_cast<std::size_t>(d)] = v;
        recurse(d + 1, on_shell || std::abs(dd) == ring);
      }
    };
    recurse(0, ring == 0);
  }
  return std::sqrt(best2);
}

void GridIndex::for_each_within(const double* x, int dim, double r,
                                const std::function<void(long long)>& fn) const {
  const PointMatrix& pts = *pts_;
  double r2 = r * r;
  auto check = [&](long long i) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
      double t = pts(i, d) - x[d];
      s += t * t;
    }
    if (s <= r2) fn(i);
  };
  if (brute_) {
    for (long long i = 0; i < pts.rows(); ++i) check(i);
    return;
  }
  std::vector<int> clo(static_cast<std::size_t>(dim)), chi(static_cast<std::size_t>(dim)),
      c(static_cast<std::size_t>(dim));
  for (int d = 0; d < dim; ++d) {
    int m = cells_per_dim_[static_cast<std::size_t>(d)];
    clo[static_cast<std::size_t>(d)] =
        std::clamp(static_cast<int>(std::floor((x[d] - r - lo_[d]) / cell_)), 0, m - 1);
    chi[static_cast<std::size_t>(d)] =
        std::clamp(static_cast<int>(std::floor((x[d] + r - lo_[d]) / cell_)), 0, m - 1);
  }
  std::function<void(int)> recurse = [&](int d) {
    if (d == dim) {
      std::int64_t id = cell_id(c);
      for (std::int64_t k = offsets_[static_cast<std::size_t>(id)];
           k < offsets_[static_cast<std::size_t>(id) + 1]; ++k)
        check(order_[static_cast<std::size_t>(k)]);
      return;
    }
    for (int v = clo[static_cast<std::size_t>(d)]; v <= chi[static_cast<std::size_t>(d)]; ++v) {
      c[static_cast<std::size_t>(d)] = v;
      recurse(d + 1);
    }
  };
  recurse(0);
}

// ---------------------------------------------------------------------------
// DistanceOracle

struct DistanceOracle::Impl {
  enum class Kind { kPoint, kSubspace, kSphere, kSquareBoundary, kCloud, kUnion, kTransformed };
  Kind kind = Kind::kPoint;
  int dim = 0;
  double resolution = 0.0;

  Vec anchor;           // kPoint
  int subspace_dim = 0; // kSubspace
  double radius = 0.0;  // kSphere

  PointCloud cloud;  // kCloud
  GridIndex index;

  std::vector<DistanceOracle> parts;  // kUnion

  DistanceOracle inner;  // kTransformed
  Eigen::MatrixXd rot;
  Vec shift;

  double eval(const double* x) const;
  DistanceBand eval_band(const double* x) const;
};

namespace {

// Signed distance of (x,y) to the boundary of [0,1]^2: negative inside.
double square_signed(double x, double y) {
  double ex = std::max({-x, x - 1.0, 0.0});
  double ey = std::max({-y, y - 1.0, 0.0});
  if (ex > 0.0 || ey > 0.0) return std::hypot(ex, ey);
  return -std::min(std::min(x, 1.0 - x), std::min(y, 1.0 - y));
}

double tail_norm(const double* x, int from, int dim) {
  double s = 0.0;
  for (int d = from; d < dim; ++d) s += x[d] * x[d];
  return std::sqrt(s);
}

double full_norm(const double* x, int dim) { return tail_norm(x, 0, dim); }

}  // namespace

double DistanceOracle::Impl::eval(const double* x) const {
  switch (kind) {
    case Kind::kPoint: {
      double s = 0.0;
      for (int d = 0; d < dim; ++d) {
        double t = x[d] - anchor[d];
        s += t * t;
      }
      return std::sqrt(s);
    }
    case Kind::kSubspace:
      return tail_norm(x, subspace_dim, dim);
    case Kind::kSphere:
      return std::abs(full_norm(x, dim) - radius);
    case Kind::kSquareBoundary:
      return std::abs(square_signed(x[0], x[1]));
    case Kind::kCloud:
      return index.nearest_distance(x, dim);
    case Kind::kUnion: {
      double best = kInf;
      for (const auto& p : parts) best = std::min(best, p.impl_->eval(x));
      return best;
    }
    case Kind::kTransformed: {
      double b[8];
      for (int i = 0; i < dim; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim; ++j) s += rot(j, i) * (x[j] - shift[j]);
        b[i] = s;
      }
      return inner.impl_->eval(b);
    }
  }
  return kInf;
}

DistanceBand DistanceOracle::Impl::eval_band(const double* x) const {
  if (kind == Kind::kUnion) {
    DistanceBand out{kInf, kInf, kInf};
    for (const auto& p : parts) {
      DistanceBand b = p.impl_->eval_band(x);
      out.estimate = std::min(out.estimate, b.estimate);
      out.lo = std::min(out.lo, b.lo);
      out.hi = std::min(out.hi, b.hi);
    }
    return out;
  }
  if (kind == Kind::kTransformed) {
    double b[8];
    for (int i = 0; i < dim; ++i) {
      double s = 0.0;
      for (int j = 0; j < dim; ++j) s += rot(j, i) * (x[j] - shift[j]);
      b[i] = s;
    }
    return inner.impl_->eval_band(b);
  }
  double d = eval(x);
  if (kind == Kind::kCloud) return {d, std::max(d - resolution, 0.0), d};
  return {d, d, d};
}

DistanceOracle DistanceOracle::point(Vec p) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::kPoint;
  impl->dim = static_cast<int>(p.size());
  impl->anchor = std::move(p);
  return DistanceOracle(impl);
}

DistanceOracle DistanceOracle::subspace(int ambient_dim, int subspace_dim) {
  if (subspace_dim < 0 || subspace_dim >= ambient_dim)
    throw std::invalid_argument("subspace: need 0 <= m < n");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::kSubspace;
  impl->dim = ambient_dim;
  impl->subspace_dim = subspace_dim;
  return DistanceOracle(impl);
}

DistanceOracle DistanceOracle::sphere(int ambient_dim, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("sphere: radius must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::kSphere;
  impl->dim = ambient_dim;
  impl->radius = radius;
  return DistanceOracle(impl);
}

DistanceOracle DistanceOracle::square_boundary() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::kSquareBoundary;
  impl->dim = 2;
  return DistanceOracle(impl);
}

DistanceOracle DistanceOracle::cloud(PointCloud pc) {
  pc.validate();
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::kCloud;
  impl->dim = pc.dim;
  impl->resolution = pc.resolution;
  impl->index = GridIndex(pc.points);
  impl->cloud = std::move(pc);
  return DistanceOracle(impl);
}

DistanceOracle DistanceOracle::union_of(std::vector<DistanceOracle> parts) {
  if (parts.empty()) throw std::invalid_argument("union_of: no parts");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::kUnion;
  impl->dim = parts.front().dim();
  for (const auto& p : parts) {
    if (p.dim() != impl->dim) throw std::invalid_argument("union_of: dimension mismatch");
    impl->resolution = std::max(impl->resolution, p.resolution());
  }
  impl->parts = std::move(parts);
  return DistanceOracle(impl);
}

DistanceOracle DistanceOracle::transformed(DistanceOracle inner_oracle, Eigen::MatrixXd rot,
                                           Vec shift) {
  int n = inner_oracle.dim();
  if (rot.rows() != n || rot.cols() != n || shift.size() != n)
    throw std::invalid_argument("transformed: shape mismatch");
  if ((rot.transpose() * rot - Eigen::MatrixXd::Identity(n, n)).norm() > 1e-9)
    throw std::invalid_argument("transformed: rotation must be orthogonal");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::kTransformed;
  impl->dim = n;
  impl->resolution = inner_oracle.resolution();
  impl->inner = std::move(inner_oracle);
  impl->rot = std::move(rot);
  impl->shift = std::move(shift);
  return DistanceOracle(impl);
}

int DistanceOracle::dim() const { return impl_->dim; }

double DistanceOracle::resolution() const { return impl_->resolution; }

bool DistanceOracle::exact() const { return impl_->resolution == 0.0; }

double DistanceOracle::estimate(const Vec& x) const { return impl_->eval(x.data()); }

DistanceBand DistanceOracle::band(const Vec& x) const { return impl_->eval_band(x.data()); }

DistanceBand DistanceOracle::inf_on_ball(const Ball& b) const {
  const Impl& im = *impl_;
  auto exact_band = [](double v) { return DistanceBand{v, v, v}; };
  switch (im.kind) {
    case Impl::Kind::kPoint:
    case Impl::Kind::kSubspace: {
      double d = im.eval(b.center.data());
      return exact_band(std::max(0.0, d - b.radius));
    }
    case Impl::Kind::kSphere: {
      double u = b.center.norm();
      double lo = std::max(0.0, u - b.radius);
      double hi = u + b.radius;
      if (im.radius >= lo && im.radius <= hi) return exact_band(0.0);
      return exact_band(std::min(std::abs(lo - im.radius), std::abs(hi - im.radius)));
    }
    case Impl::Kind::kSquareBoundary: {
      double s = square_signed(b.center[0], b.center[1]);
      return exact_band(std::abs(s) <= b.radius ? 0.0 : std::abs(s) - b.radius);
    }
    case Impl::Kind::kCloud: {
      double d = im.eval(b.center.data());
      double v = std::max(0.0, d - b.radius);
      return {v, std::max(0.0, v - im.resolution), v};
    }
    case Impl::Kind::kUnion: {
      DistanceBand out{kInf, kInf, kInf};
      for (const auto& p : im.parts) {
        DistanceBand q = p.inf_on_ball(b);
        out.estimate = std::min(out.estimate, q.estimate);
        out.lo = std::min(out.lo, q.lo);
        out.hi = std::min(out.hi, q.hi);
      }
      return out;
    }
    case Impl::Kind::kTransformed: {
      Vec c = im.rot.transpose() * (b.center - im.shift);
      return im.inner.inf_on_ball(Ball(c, b.radius));
    }
  }
  return exact_band(0.0);
}

DistanceBand DistanceOracle::sup_on_ball(const Ball& b) const {
  const Impl& im = *impl_;
  auto exact_band = [](double v) { return DistanceBand{v, v, v}; };
  switch (im.kind) {
    case Impl::Kind::kPoint:
    case Impl::Kind::kSubspace: {
      double d = im.eval(b.center.data());
      return exact_band(d + b.radius);
    }
    case Impl::Kind::kSphere: {
      double u = b.center.norm();
      double lo = std::max(0.0, u - b.radius);
      double hi = u + b.radius;
      return exact_band(std::max(std::abs(lo - im.radius), std::abs(hi - im.radius)));
    }
    case Impl::Kind::kSquareBoundary: {
      double s = square_signed(b.center[0], b.center[1]);
      double a = std::max(s - b.radius, -0.5);  // signed depth is bounded below by -1/2
      double c = s + b.radius;
      return exact_band(std::max(std::abs(a), std::abs(c)));
    }
    case Impl::Kind::kTransformed: {
      Vec c = im.rot.transpose() * (b.center - im.shift);
      return im.inner.sup_on_ball(Ball(c, b.radius));
    }
    default:
      break;
  }

  // Cloud / union: deterministic grid scan with a 1-Lipschitz padding bound.
  int n = im.dim;
  int m = n == 1 ? 4096 : (n == 2 ? 64 : 16);
  double h = 2.0 * b.radius / m;
  double pad = 0.5 * h * std::sqrt(static_cast<double>(n));

  DistanceBand out{0.0, 0.0, 0.0};
  {
    DistanceBand cb = im.eval_band(b.center.data());
    out = {cb.estimate, cb.lo, cb.hi + pad};
  }
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  Vec node(n);
  double in_r2 = b.radius * b.radius;
  double pad_r = b.radius + pad;
  double pad_r2 = pad_r * pad_r;
  for (;;) {
    double d2 = 0.0;
    for (int d = 0; d < n; ++d) {
      node[d] = b.center[d] - b.radius + (idx[static_cast<std::size_t>(d)] + 0.5) * h;
      double t = node[d] - b.center[d];
      d2 += t * t;
    }
    if (d2 <= pad_r2) {
      DistanceBand q = im.eval_band(node.data());
      out.hi = std::max(out.hi, q.hi + pad);
      if (d2 <= in_r2) {
        out.estimate = std::max(out.estimate, q.estimate);
        out.lo = std::max(out.lo, q.lo);
      }
    }
    int d = 0;
    for (; d < n; ++d) {
      if (++idx[static_cast<std::size_t>(d)] < m) break;
      idx[static_cast<std::size_t>(d)] = 0;
    }
    if (d == n) break;
  }
  return out;
}

}  // namespace apdist
