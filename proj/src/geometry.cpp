#include "apdist/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "apdist/parallel.hpp"

namespace apdist {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double unit_ball_volume(int n) {
  if (n < 0) throw std::invalid_argument("unit_ball_volume: n >= 0 required");
  // Gamma-function recurrence v_n = v_{n-2} * 2*pi / n.
  double even = 1.0;  // v_0
  double odd = 2.0;   // v_1
  if (n == 0) return even;
  if (n == 1) return odd;
  for (int k = 2; k <= n; ++k) {
    double next = (k % 2 == 0 ? even : odd) * 2.0 * M_PI / k;
    if (k % 2 == 0)
      even = next;
    else
      odd = next;
  }
  return n % 2 == 0 ? even : odd;
}

double lebesgue_ball_measure(int n, double r) {
  if (n < 1) throw std::invalid_argument("lebesgue_ball_measure: n >= 1 required");
  if (!(r > 0.0)) throw std::invalid_argument("lebesgue_ball_measure: r > 0 required");
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= r;  // keeps (2r)^n == 2^n r^n bit-exact
  return unit_ball_volume(n) * p;
}

StreamKey ball_stream(StreamKey root, const Ball& ball) {
  StreamKey k = root.with("ball").with(ball.radius);
  for (int d = 0; d < ball.dim(); ++d) k = k.with(ball.center[d]);
  return k;
}

namespace {

// Uniform-in-ball sampler: rejection from the bounding cube.
class BallSampler {
 public:
  BallSampler(const Ball& ball, McSequence seq, StreamKey key)
      : ball_(ball), sampler_(seq, key, ball.dim()) {}

  void next(Vec& y) {
    const int n = ball_.dim();
    double u[Sampler::kMaxDim];
    for (;;) {
      sampler_.next_unit(u);
      double d2 = 0.0;
      for (int d = 0; d < n; ++d) {
        double c = 2.0 * u[d] - 1.0;
        u[d] = c;
        d2 += c * c;
      }
      if (d2 <= 1.0) {
        for (int d = 0; d < n; ++d) y[d] = ball_.center[d] + ball_.radius * u[d];
        return;
      }
    }
  }

 private:
  const Ball& ball_;
  Sampler sampler_;
};

struct ShellResult {
  bool skipped = false;
  long long hits = 0;
  double sum = 0.0;
  double sumsq = 0.0;
  double cmax = 0.0;                // max |f| * dist^alpha over own-stratum samples
  std::vector<long long> histogram; // pooled classification of the whole batch
};

}  // namespace

Estimate integrate_over_ball(const Ball& ball, const Integrand& integrand,
                             const DistanceOracle& oracle, const MCConfig& cfg,
                             StreamKey stream) {
  cfg.validate();
  const int n = ball.dim();
  if (oracle.dim() != n) throw std::invalid_argument("integrate_over_ball: dim mismatch");
  const double volume = lebesgue_ball_measure(n, ball.radius);
  const double alpha = integrand.singular_exponent;

  const DistanceBand supb = oracle.sup_on_ball(ball);
  const DistanceBand infb = oracle.inf_on_ball(ball);
  const double D = supb.hi;
  const double dmin = infb.lo;
  const double eps = oracle.resolution();

  Estimate out;
  if (!(D > 0.0)) {
    // delta vanishes a.e. on the ball; only a bounded integrand makes sense.
    out.divergent = alpha > 0.0;
    if (out.divergent) {
      out.truncation_bound = kInf;
      return out;
    }
    Estimate avg = ball_average(
        ball, [&](const Vec& y) { return integrand.eval(y, 0.0); },
        static_cast<long long>(cfg.shells) * cfg.samples_per_shell, cfg.sequence,
        stream.with("flat"));
    out = avg;
    out.value *= volume;
    out.std_error *= volume;
    return out;
  }

  int K = cfg.shells;
  if (eps > 0.0) {
    // Below ~8 eps the discretized field no longer resolves E; deeper strata
    // would sample an artifact, so they are folded into the core bound.
    int kmax = static_cast<int>(std::floor(std::log2(D / (8.0 * eps))));
    K = std::clamp(kmax, 1, K);
  }
  const bool core_stratum = alpha <= 0.0;
  const int strata = K + (core_stratum ? 1 : 0);
  const long long N = cfg.samples_per_shell;

  std::vector<double> edge(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) edge[static_cast<std::size_t>(k)] = std::ldexp(D, -k);

  std::vector<ShellResult> results(static_cast<std::size_t>(strata));

  parallel_for(static_cast<std::size_t>(strata), [&](std::size_t sk) {
    const int k = static_cast<int>(sk);
    ShellResult& res = results[sk];
    res.histogram.assign(static_cast<std::size_t>(K) + 1, 0);
    const bool is_core = k == K;
    const double upper = is_core ? edge[static_cast<std::size_t>(K)]
                                 : edge[static_cast<std::size_t>(k)];
    if (upper <= dmin) {  // certified empty by 1-Lipschitzness of delta_E
      res.skipped = true;
      return;
    }
    BallSampler sampler(ball, cfg.sequence, stream.with("shell").with(k));
    Vec y(n);
    const double lo_edge = is_core ? 0.0 : edge[static_cast<std::size_t>(k) + 1];
    const double hi_edge = upper;
    for (long long i = 0; i < N; ++i) {
      sampler.next(y);
      const double dist = oracle.estimate(y);
      int j = K;
      if (dist > 0.0) {
        double l = std::log2(D / dist);
        j = l < 0.0 ? 0 : std::min(K, static_cast<int>(l));
      }
      ++res.histogram[static_cast<std::size_t>(j)];
      const bool own = is_core ? (dist < hi_edge) : (dist >= lo_edge && dist < hi_edge);
      if (own) {
        const double v = integrand.eval(y, dist);
        res.sum += v;
        res.sumsq += v * v;
        ++res.hits;
        if (dist > 0.0) res.cmax = std::max(res.cmax, std::abs(v) * std::pow(dist, alpha));
      }
    }
  });

  // Fixed-order reduction.
  std::vector<long long> pooled(static_cast<std::size_t>(K) + 1, 0);
  long long total_pooled = 0;
  double c_est = 0.0;
  for (const ShellResult& res : results) {
    if (res.skipped) continue;
    total_pooled += N;
    for (std::size_t j = 0; j < pooled.size(); ++j) pooled[j] += res.histogram[j];
    c_est = std::max(c_est, res.cmax);
  }

  double value = 0.0;
  double var = 0.0;
  long long used = 0;
  std::vector<int> empty_shells;
  for (int k = 0; k < strata; ++k) {
    const ShellResult& res = results[static_cast<std::size_t>(k)];
    if (res.skipped) continue;
    used += N;
    if (res.hits > 0) {
      const double mean = res.sum / static_cast<double>(N);
      value += volume * mean;
      if (N > 1) {
        const double s2 =
            std::max(0.0, (res.sumsq - res.sum * res.sum / static_cast<double>(N)) /
                              static_cast<double>(N - 1));
        var += volume * volume * s2 / static_cast<double>(N);
      }
    } else if (k < K) {
      empty_shells.push_back(k);
    }
  }

  // Geometric decay of the near-E measure, fitted from the pooled histogram.
  double rho = std::pow(2.0, -0.5 * n);
  int k_ref = K - 1;
  double p_ref = 3.0 / std::max<long long>(total_pooled, 1);
  {
    std::vector<std::pair<int, double>> obs;
    for (int k = 0; k < K; ++k) {
      if (pooled[static_cast<std::size_t>(k)] >= 16)
        obs.emplace_back(k, static_cast<double>(pooled[static_cast<std::size_t>(k)]) /
                                static_cast<double>(total_pooled));
    }
    if (obs.size() >= 2) {
      std::size_t first = obs.size() > 5 ? obs.size() - 5 : 0;
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      double m = 0;
      for (std::size_t i = first; i < obs.size(); ++i) {
        double x = obs[i].first;
        double yv = std::log2(obs[i].second);
        sx += x;
        sy += yv;
        sxx += x * x;
        sxy += x * yv;
        m += 1;
      }
      double denom = m * sxx - sx * sx;
      if (denom > 0) {
        double slope = (m * sxy - sx * sy) / denom;
        rho = std::clamp(std::pow(2.0, slope), std::pow(2.0, -n - 1.0), 0.999);
      }
      k_ref = obs.back().first;
      p_ref = obs.back().second;
    }
  }

  double trunc = 0.0;
  bool insufficient = false;
  bool divergent = false;

  auto stratum_measure_guess = [&](int k) {
    double p_meas = static_cast<double>(pooled[static_cast<std::size_t>(k)]) /
                    static_cast<double>(std::max<long long>(total_pooled, 1));
    double p_ext = k > k_ref ? p_ref * std::pow(rho, k - k_ref)
                             : 3.0 / static_cast<double>(std::max<long long>(total_pooled, 1));
    return volume * std::max(p_meas, p_ext);
  };

  for (int k : empty_shells) {
    const double sup_edge =
        alpha >= 0.0 ? edge[static_cast<std::size_t>(k) + 1] : edge[static_cast<std::size_t>(k)];
    trunc += c_est * std::pow(sup_edge, -alpha) * stratum_measure_guess(k);
    insufficient = true;
  }

  if (!core_stratum) {
    const double t_core = edge[static_cast<std::size_t>(K)];
    if (t_core > dmin) {  // core not certifiably empty
      double p_core_meas = static_cast<double>(pooled[static_cast<std::size_t>(K)]) /
                           static_cast<double>(std::max<long long>(total_pooled, 1));
      double p_core_ext = p_ref * std::pow(rho, std::max(0, K - k_ref)) / (1.0 - rho);
      double m_core = volume * std::max(p_core_meas, p_core_ext);
      const bool meets = dmin <= std::max(2.0 * eps, 1e-9 * D);
      const double x = rho * std::pow(2.0, alpha);
      if (meets && (alpha >= static_cast<double>(n) || x >= 0.995)) {
        // The core bound at K+4 shells would be x^4 times the bound at K:
        // it does not shrink, so the integral cannot be certified finite.
        divergent = true;
        trunc = kInf;
      } else if (dmin > 0.0) {
        trunc += c_est * std::pow(dmin, -alpha) * m_core;
      } else {
        trunc += c_est * std::pow(t_core, -alpha) * m_core / std::max(1.0 - x, 0.005);
      }
    }
  }

  out.value = value;
  out.std_error = std::sqrt(var);
  out.truncation_bound = trunc;
  out.samples_used = used;
  out.divergent = divergent;
  out.insufficient_samples = insufficient && !divergent;
  return out;
}

Estimate ball_average(const Ball& ball, const std::function<double(const Vec&)>& fn,
                      long long n_samples, McSequence seq, StreamKey stream) {
  if (n_samples < 2) throw std::invalid_argument("ball_average: need n_samples >= 2");
  const int workers = 8;  // fixed split so results do not depend on thread count
  const long long chunk = (n_samples + workers - 1) / workers;
  struct Acc {
    double sum = 0, sumsq = 0;
    long long count = 0;
  };
  std::vector<Acc> acc(workers);
  parallel_for(static_cast<std::size_t>(workers), [&](std::size_t w) {
    long long lo = static_cast<long long>(w) * chunk;
    long long hi = std::min(n_samples, lo + chunk);
    if (lo >= hi) return;
    BallSampler sampler(ball, seq, stream.with("avg").with(static_cast<std::uint64_t>(w)));
    Vec y(ball.dim());
    Acc& a = acc[w];
    for (long long i = lo; i < hi; ++i) {
      sampler.next(y);
      double v = fn(y);
      a.sum += v;
      a.sumsq += v * v;
      ++a.count;
    }
  });
  double sum = 0, sumsq = 0;
  long long count = 0;
  for (const Acc& a : acc) {
    sum += a.sum;
    sumsq += a.sumsq;
    count += a.count;
  }
  Estimate out;
  out.value = sum / static_cast<double>(count);
  double s2 = std::max(0.0, (sumsq - sum * sum / static_cast<double>(count)) /
                                static_cast<double>(count - 1));
  out.std_error = std::sqrt(s2 / static_cast<double>(count));
  out.samples_used = count;
  return out;
}

}  // namespace apdist
