#include "tgb/sysgen/rng.hpp"

namespace tgb::sysgen {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next() { return mix64(seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span));
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Rng Rng::child(std::uint64_t tag) const { return Rng(mix64(seed_ ^ mix64(tag + 0x632BE59BD9B4E019ULL))); }

}  // namespace tgb::sysgen
