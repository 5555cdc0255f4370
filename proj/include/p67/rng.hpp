#ifndef P67_RNG_HPP
#define P67_RNG_HPP

#include <cstdint>

namespace p67 {

// splitmix64: the output of this generator is part of the report format and
// must stay bit-identical across platforms and releases. State advances by
// the fixed odd constant; the mixer is the standard finalizer. No
// platform-dependent library distribution is ever layered on top.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform draw from [0, bound) by rejection; bound > 0. Avoids the modulo
  // bias and never consults implementation-defined std distributions.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = ~0ULL - (~0ULL % bound + 1) % bound;
    for (;;) {
      std::uint64_t v = next();
      if (v <= limit) return v % bound;
    }
  }

  // Integer in [lo, hi], inclusive; lo <= hi.
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::uint64_t state_;
};

// Mixes a trial index into a plan seed so per-trial streams are independent
// of each other and of trial execution order. Part of the report contract.
inline std::uint64_t trial_seed(std::uint64_t plan_seed, std::uint64_t trial_index) {
  SplitMix64 g(plan_seed ^ (0x6a09e667f3bcc909ULL + trial_index * 0x9e3779b97f4a7c15ULL));
  return g.next();
}

}  // namespace p67

#endif  // P67_RNG_HPP
