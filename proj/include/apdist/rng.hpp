#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string_view>

namespace apdist {

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// Domain-separated stream key. Every stochastic estimate derives its own key
/// by chaining the global seed with the quantities that identify the estimate
/// (ball coordinates, exponents, shell index, ...). Equal inputs give equal
/// streams; any differing component gives an unrelated stream.
class StreamKey {
 public:
  StreamKey() = default;
  explicit constexpr StreamKey(std::uint64_t v) : v_(v) {}

  constexpr std::uint64_t value() const { return v_; }

  constexpr StreamKey with(std::uint64_t x) const {
    return StreamKey(mix64(v_ + kGolden + mix64(x + kGolden)));
  }
  constexpr StreamKey with(int x) const { return with(static_cast<std::uint64_t>(x)); }
  StreamKey with(double x) const { return with(std::bit_cast<std::uint64_t>(x)); }
  StreamKey with(std::string_view s) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return with(h);
  }

 private:
  std::uint64_t v_ = 0;
};

/// Counter-based generator: output i is mix64(key + i*golden). Stateless in
/// substance, so parallel streams keyed by disjoint StreamKeys never interact
/// and results cannot depend on thread scheduling.
class CounterRng {
 public:
  explicit CounterRng(StreamKey key) : key_(key.value()) {}

  std::uint64_t next_u64() { return mix64(key_ + kGolden * ++counter_); }

  // Uniform in [0,1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

enum class McSequence { kPseudoRandom, kLowDiscrepancy };

/// Uniform samples on the unit cube [0,1)^dim from either a counter-based
/// pseudo-random stream or a Cranley-Patterson rotated Halton sequence.
/// Both are fully determined by (sequence, key, dim).
class Sampler {
 public:
  static constexpr int kMaxDim = 8;

  Sampler(McSequence seq, StreamKey key, int dim);

  void next_unit(double* u);

  int dim() const { return dim_; }

 private:
  McSequence seq_;
  int dim_;
  CounterRng rng_;
  std::uint64_t halton_index_ = 0;
  std::array<double, kMaxDim> shift_{};
};

}  // namespace apdist
