#include "satgen/rng.hpp"

#include "satgen/errors.hpp"

namespace satgen {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag,
                          std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = mix64(base);
  h = mix64(h ^ tag);
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  return h;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ContractError("Rng::below: bound must be >= 1");
  // Reject the biased tail of the 2^64 range.
  std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::vector<int> Rng::sample_distinct(int universe, int count) {
  if (count < 0 || universe < count)
    throw ContractError("Rng::sample_distinct: need 0 <= count <= universe");
  std::vector<int> pool(static_cast<std::size_t>(universe));
  for (int i = 0; i < universe; ++i) pool[static_cast<std::size_t>(i)] = i;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(below(universe - i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    out.push_back(pool[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace satgen
