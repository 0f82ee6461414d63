#pragma once

#include <cstdint>

namespace tgb::sysgen {

// Counter-based SplitMix64. Children are derived from the parent's seed and a
// tag, never from its position, so sibling streams do not depend on how much
// of each other was consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t next();
  // Uniform in [0, n); n must be > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  double uniform();  // [0, 1)
  bool chance(double p) { return uniform() < p; }

  Rng child(std::uint64_t tag) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace tgb::sysgen
