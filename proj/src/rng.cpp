#include "apdist/rng.hpp"

#include <cassert>
#include <cmath>

namespace apdist {

namespace {

constexpr std::array<int, Sampler::kMaxDim> kBases = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double x = 0.0;
  while (i > 0) {
    x += static_cast<double>(i % base) * f;
    i /= base;
    f *= inv;
  }
  return x;
}

}  // namespace

Sampler::Sampler(McSequence seq, StreamKey key, int dim)
    : seq_(seq), dim_(dim), rng_(key) {
  assert(dim >= 1 && dim <= kMaxDim);
  if (seq_ == McSequence::kLowDiscrepancy) {
    // Seed-dependent rotation and start index keep distinct streams unrelated
    // while preserving the low-discrepancy structure within a stream.
    CounterRng setup(key.with("halton-setup"));
    for (int d = 0; d < dim_; ++d) shift_[d] = setup.next_unit();
    halton_index_ = 1 + (setup.next_u64() & 0xffff);
  }
}

void Sampler::next_unit(double* u) {
  if (seq_ == McSequence::kPseudoRandom) {
    for (int d = 0; d < dim_; ++d) u[d] = rng_.next_unit();
    return;
  }
  ++halton_index_;
  for (int d = 0; d < dim_; ++d) {
    double x = radical_inverse(halton_index_, kBases[static_cast<std::size_t>(d)]) + shift_[d];
    x -= std::floor(x);
    if (x >= 1.0) x = 0.0;
    u[d] = x;
  }
}

}  // namespace apdist
