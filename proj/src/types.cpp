#include "apdist/types.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace apdist {

namespace {

bool both_finite(const Estimate& a, const Estimate& b) { return a.finite() && b.finite(); }

Estimate merge_flags(Estimate out, const Estimate& a, const Estimate& b) {
  out.samples_used = a.samples_used + b.samples_used;
  out.divergent = a.divergent || b.divergent;
  out.insufficient_samples = a.insufficient_samples || b.insufficient_samples;
  return out;
}

}  // namespace

Estimate estimate_scale(const Estimate& a, double c) {
  Estimate out = a;
  out.value = a.value * c;
  out.std_error = std::abs(c) * a.std_error;
  out.truncation_bound = std::abs(c) * a.truncation_bound;
  return out;
}

Estimate estimate_pow(const Estimate& a, double k) {
  Estimate out = a;
  out.value = std::pow(a.value, k);
  double d = a.value > 0.0 ? std::abs(k) * std::pow(a.value, k - 1.0) : 0.0;
  out.std_error = d * a.std_error;
  out.truncation_bound = d * a.truncation_bound;
  return out;
}

Estimate estimate_product(const Estimate& a, const Estimate& b) {
  Estimate out;
  out.value = a.value * b.value;
  out.std_error = std::hypot(a.std_error * b.value, b.std_error * a.value);
  out.truncation_bound =
      std::abs(a.value) * b.truncation_bound + std::abs(b.value) * a.truncation_bound;
  if (!both_finite(a, b)) out.truncation_bound = 0.0;
  return merge_flags(out, a, b);
}

Estimate estimate_ratio(const Estimate& a, const Estimate& b) {
  Estimate out;
  out.value = a.value / b.value;
  double bv = std::abs(b.value);
  out.std_error = std::hypot(a.std_error / bv, a.value * b.std_error / (b.value * b.value));
  out.truncation_bound =
      a.truncation_bound / bv + std::abs(a.value) * b.truncation_bound / (bv * bv);
  return merge_flags(out, a, b);
}

PointCloud::PointCloud(int d, PointMatrix pts, double res, std::string tag)
    : dim(d), points(std::move(pts)), resolution(res), set_tag(std::move(tag)) {
  validate();
}

void PointCloud::validate() const {
  if (dim < 1) throw std::invalid_argument("PointCloud: dim must be >= 1");
  if (points.rows() < 1) throw std::invalid_argument("PointCloud: no points");
  if (points.cols() != dim) throw std::invalid_argument("PointCloud: column/dim mismatch");
  if (!(resolution >= 0.0)) throw std::invalid_argument("PointCloud: negative resolution");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw ConfigError("trailing characters in number '" + s + "'");
    return v;
  } catch (const std::invalid_argument&) {
    throw ConfigError("not a number: '" + s + "'");
  } catch (const std::out_of_range&) {
    throw ConfigError("number out of range: '" + s + "'");
  }
}

void save_point_cloud_csv(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "dim," << cloud.dim << ",resolution," << format_double(cloud.resolution) << "\n";
  for (long long i = 0; i < cloud.count(); ++i) {
    for (int d = 0; d < cloud.dim; ++d) {
      if (d) out << ",";
      out << format_double(cloud.points(i, d));
    }
    out << "\n";
  }
}

PointCloud load_point_cloud_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path + ": empty point cloud file");

  std::stringstream header(line);
  std::string tok;
  std::getline(header, tok, ',');
  if (tok != "dim") throw ConfigError(path + ": expected 'dim' in header");
  std::getline(header, tok, ',');
  int dim = static_cast<int>(parse_double(tok));
  std::getline(header, tok, ',');
  if (tok != "resolution") throw ConfigError(path + ": expected 'resolution' in header");
  std::getline(header, tok, ',');
  double res = parse_double(tok);

  std::vector<double> values;
  long long rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    int got = 0;
    while (std::getline(row, tok, ',')) {
      values.push_back(parse_double(tok));
      ++got;
    }
    if (got != dim) throw ConfigError(path + ": point with wrong coordinate count");
    ++rows;
  }
  if (rows == 0) throw ConfigError(path + ": no points");

  PointMatrix pts(rows, dim);
  for (long long i = 0; i < rows; ++i)
    for (int d = 0; d < dim; ++d) pts(i, d) = values[static_cast<std::size_t>(i * dim + d)];
  return PointCloud(dim, std::move(pts), res);
}

}  // namespace apdist
