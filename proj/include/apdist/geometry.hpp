#pragma once

#include <functional>

#include "apdist/distance.hpp"
#include "apdist/types.hpp"

namespace apdist {

/// Exact Lebesgue measure of an n-ball of radius r.
double lebesgue_ball_measure(int n, double r);
double unit_ball_volume(int n);

/// Integrand over a ball. `eval(y, dist)` receives the oracle's distance
/// value alongside the point so the field is computed once per sample.
/// `singular_exponent` declares the strength of the blow-up near E:
/// |eval| should behave like C * dist^{-singular_exponent} there. Values
/// <= 0 promise a bounded integrand near E.
struct Integrand {
  std::function<double(const Vec& y, double dist)> eval;
  double singular_exponent = 0.0;
};

/// Shell-stratified Monte Carlo over a ball for integrands that are singular
/// on E. The ball is split into dyadic distance shells
///   S_k = { y in B : 2^{-k-1} D <= delta_E(y) < 2^{-k} D },  D = sup_B delta_E,
/// each estimated by uniform rejection sampling in B and scaled by the ball
/// volume. The residual core { delta_E < 2^{-K} D } contributes an estimated
/// bound to truncation_bound; the estimate is flagged divergent when that
/// bound does not shrink between K and K+4 shells. Shells that are provably
/// empty (1-Lipschitz bound) are skipped; non-empty shells with zero hits
/// push their upper bound into truncation_bound rather than zero into value.
/// Deterministic for a fixed (cfg, stream) at any worker-thread count.
Estimate integrate_over_ball(const Ball& ball, const Integrand& integrand,
                             const DistanceOracle& oracle, const MCConfig& cfg,
                             StreamKey stream);

/// Plain MC mean of fn over the ball (no distance stratification).
Estimate ball_average(const Ball& ball, const std::function<double(const Vec&)>& fn,
                      long long n_samples, McSequence seq, StreamKey stream);

StreamKey ball_stream(StreamKey root, const Ball& ball);

}  // namespace apdist
