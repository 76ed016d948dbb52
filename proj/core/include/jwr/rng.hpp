#ifndef JWR_RNG_HPP
#define JWR_RNG_HPP

#include <cstdint>
#include <string_view>

namespace jwr {

// Deterministic 64-bit generator (splitmix64, Vigna 2015). One instance per
// sampler; copyable value type so sampler state can be snapshotted and
// replayed. The algorithm is fixed: identical seeds give identical streams
// on every platform, which the schedule reproducibility contract relies on.
class SplitMix64 {
 public:
  SplitMix64() = default;
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, n). Rejection sampling, n >= 1.
  std::uint64_t next_below(std::uint64_t n) noexcept {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t r;
    do {
      r = next();
    } while (r < threshold);
    return r % n;
  }

  friend bool operator==(const SplitMix64&, const SplitMix64&) = default;

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 0;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Stream splitting: seed_child = derive_seed(master, purpose, index).
// The derivation is mix64(mix64(mix64(master ^ FNV(purpose)) ^ index)); it is
// part of the reproducibility contract, so adding trials or new purposes
// never perturbs seeds already handed out.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose,
                                 std::uint64_t index) noexcept {
  std::uint64_t z = detail::mix64(master ^ detail::fnv1a64(purpose));
  z = detail::mix64(z ^ 0x9e3779b97f4a7c15ULL);
  return detail::mix64(z ^ index);
}

}  // namespace jwr

#endif  // JWR_RNG_HPP
