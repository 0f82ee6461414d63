#include "tgb/unitgen/mutations.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace tgb::unitgen {

std::int64_t flip_bit(std::int64_t v, unsigned pos) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(v) ^ (std::uint64_t{1} << (pos % 64)));
}

std::int64_t IntMutations::next() {
  static constexpr std::int64_t kConstants[] = {0, std::numeric_limits<std::int64_t>::max(),
                                               std::numeric_limits<std::int64_t>::min()};
  for (;;) {
    switch (turn_++ % 3) {
      case 0: family_ = "int-bitflip"; return flip_bit(v_, static_cast<unsigned>(rng_.below(64)));
      case 1: family_ = "int-random"; return static_cast<std::int64_t>(rng_.next());
      default:
        if (constants_ < 3) {
          family_ = "int-constant";
          return kConstants[constants_++];
        }
    }
  }
}

std::vector<Bytes> harvest_values(const snapshot::Context& c) {
  std::vector<Bytes> out;
  std::set<Bytes> seen;
  for (const auto& leaf : snapshot::enumerate_leaves(c)) {
    Bytes b;
    if (leaf.value->is(vm::ValueKind::Bytes)) b = leaf.value->as_bytes();
    else if (leaf.value->is(vm::ValueKind::Int)) b = vm::decimal(leaf.value->as_int());
    else continue;
    if (!b.empty() && seen.insert(b).second) out.push_back(std::move(b));
  }
  return out;
}

BytesMutations::BytesMutations(Bytes v, std::vector<Bytes> harvest, Rng rng)
    : v_(std::move(v)), harvest_(std::move(harvest)), rng_(rng) {
  harvest_.erase(std::remove(harvest_.begin(), harvest_.end(), v_), harvest_.end());
}

std::size_t BytesMutations::pick_length() {
  const std::size_t n = v_.size();
  std::vector<std::size_t> lens{1};
  for (std::size_t l : {n, n - 1, n + 1, 2 * n})
    if (n > 0 && l >= 1 && std::find(lens.begin(), lens.end(), l) == lens.end()) lens.push_back(l);
  return lens[rng_.below(lens.size())];
}

Bytes BytesMutations::next() {
  for (;;) {
    switch (turn_++ % 7) {
      case 0:
        if (harvested_ < harvest_.size()) {
          family_ = "harvested";
          return harvest_[harvested_++];
        }
        break;
      case 1:
        if (!v_.empty()) {
          family_ = "bytes-bitflip";
          Bytes out = v_;
          const auto bit = rng_.below(v_.size() * 8);
          out[bit / 8] = static_cast<char>(static_cast<unsigned char>(out[bit / 8]) ^ (1u << (bit % 8)));
          return out;
        }
        break;
      case 2: {
        family_ = "random-bytes";
        Bytes out(pick_length(), '\0');
        for (auto& c : out) c = static_cast<char>(rng_.below(256));
        return out;
      }
      case 3: {
        family_ = "random-ascii";
        Bytes out(pick_length(), ' ');
        for (auto& c : out) c = static_cast<char>(0x20 + rng_.below(0x5F));
        return out;
      }
      case 4: family_ = "zeros"; return Bytes(pick_length(), '\0');
      case 5: family_ = "ones"; return Bytes(pick_length(), '\xFF');
      default:
        if (!v_.empty()) {
          family_ = "repetition";
          if (!doubled_) {
            doubled_ = true;
            return v_ + v_;
          }
          const auto start = rng_.below(v_.size());
          const auto len = 1 + rng_.below(v_.size() - start);
          const auto times = 2 + rng_.below(7);
          Bytes out;
          for (std::uint64_t i = 0; i < times; ++i) out += v_.substr(start, len);
          return out;
        }
        break;
    }
  }
}

IntMutations int_mutations(std::int64_t v, Rng rng) { return IntMutations(v, rng); }

BytesMutations bytes_mutations(const Bytes& v, const snapshot::Context& ctx, Rng rng) {
  return BytesMutations(v, harvest_values(ctx), rng);
}

}  // namespace tgb::unitgen
