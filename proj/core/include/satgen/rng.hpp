#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace satgen {

/// SplitMix64 finalizer; the mixing primitive behind seed derivation.
std::uint64_t mix64(std::uint64_t z);

/// Deterministically derives a child seed from a base seed, a stream tag and
/// up to two indices. All randomness in the library flows from one user seed
/// through this rule, so any sub-stream (instance i of a generation run,
/// sample s of an evaluation, validation set of curriculum step (t, i)) can
/// be reproduced in isolation.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag,
                          std::uint64_t a = 0, std::uint64_t b = 0);

/// Stream tags used across the library. Disjoint tags keep sibling streams
/// independent even when their indices collide.
enum StreamTag : std::uint64_t {
  kStreamInstance = 1,  // constructor: one child per instance attempt
  kStreamPool = 2,      // constructor: pooled-mode pair pool
  kStreamVal = 3,       // curriculum: validation sets, indexed (iteration, step)
  kStreamTrain = 4,     // curriculum: training batches, indexed (iteration, step)
  kStreamMock = 5,      // mock learner: per (instance, sample) draws
  kStreamSplit = 6,     // dataset builder: one child per (split, level)
};

/// Seedable deterministic generator.
///
/// The engine is std::mt19937_64, whose output sequence for a given seed is
/// fixed by the C++ standard and therefore portable. Bounded draws and
/// shuffles are implemented here rather than with std::uniform_int_distribution
/// or std::shuffle, because the standard leaves those unspecified across
/// implementations and datasets must be byte-identical everywhere.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }

  /// Unbiased uniform draw from [0, bound). bound must be >= 1.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  /// Fisher-Yates shuffle driven by below().
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// count distinct indices drawn uniformly from [0, universe), in the random
  /// order produced by a partial Fisher-Yates pass.
  std::vector<int> sample_distinct(int universe, int count);

  /// Child generator for an independent sub-stream. Derivation uses the
  /// original seed, not engine state, so children are position-addressable.
  Rng child(std::uint64_t tag, std::uint64_t a = 0, std::uint64_t b = 0) const {
    return Rng(derive_seed(seed_, tag, a, b));
  }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace satgen
