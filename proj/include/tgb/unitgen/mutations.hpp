#pragma once

#include <cstdint>
#include <vector>

#include "tgb/snapshot/context.hpp"
#include "tgb/sysgen/rng.hpp"

namespace tgb::unitgen {

using sysgen::Rng;
using vm::Bytes;

std::int64_t flip_bit(std::int64_t v, unsigned pos);

// Round-robin over bit flips of v, uniform 64-bit values, and the constants
// 0, INT64_MAX, INT64_MIN (each once).
class IntMutations {
 public:
  IntMutations(std::int64_t v, Rng rng) : v_(v), rng_(rng) {}
  std::int64_t next();
  const char* family() const { return family_; }

 private:
  std::int64_t v_;
  Rng rng_;
  std::size_t turn_ = 0;
  std::size_t constants_ = 0;
  const char* family_ = "";
};

// Every Bytes leaf and the decimal form of every Int leaf, first occurrence
// order, duplicates and empty strings dropped.
std::vector<Bytes> harvest_values(const snapshot::Context& c);

// Round-robin over: harvested values (each once), bit flips of v, random
// bytes, random ASCII, all-0x00, all-0xFF, and repetitions of substrings of v
// (v+v first). Generated lengths come from {1, |v|, |v|-1, |v|+1, 2|v|}, >= 1.
class BytesMutations {
 public:
  BytesMutations(Bytes v, std::vector<Bytes> harvest, Rng rng);
  Bytes next();
  const char* family() const { return family_; }

 private:
  std::size_t pick_length();

  Bytes v_;
  std::vector<Bytes> harvest_;
  std::size_t harvested_ = 0;
  bool doubled_ = false;
  Rng rng_;
  std::size_t turn_ = 0;
  const char* family_ = "";
};

IntMutations int_mutations(std::int64_t v, Rng rng);
// Harvests from ctx, excluding v itself.
BytesMutations bytes_mutations(const Bytes& v, const snapshot::Context& ctx, Rng rng);

}  // namespace tgb::unitgen
