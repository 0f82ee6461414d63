#include "tgb/sysgen/mutators.hpp"

#include <algorithm>

namespace tgb::sysgen {

namespace {

char random_byte(Rng& rng) { return static_cast<char>(rng.below(256)); }
char random_ascii(Rng& rng) { return static_cast<char>(0x20 + rng.below(0x5F)); }

Bytes insert_random(const Bytes& in, Rng& rng) {
  Bytes out = in;
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(rng.below(in.size() + 1)), random_byte(rng));
  return out;
}

Bytes bit_flip(const Bytes& in, Rng& rng) {
  if (in.empty()) return insert_random(in, rng);
  Bytes out = in;
  const auto bit = rng.below(in.size() * 8);
  out[bit / 8] = static_cast<char>(static_cast<unsigned char>(out[bit / 8]) ^ (1u << (bit % 8)));
  return out;
}

Bytes byte_random(const Bytes& in, Rng& rng) {
  if (in.empty()) return insert_random(in, rng);
  Bytes out = in;
  out[rng.below(in.size())] = random_byte(rng);
  return out;
}

Bytes byte_insert(const Bytes& in, Rng& rng) { return insert_random(in, rng); }

Bytes byte_delete(const Bytes& in, Rng& rng) {
  if (in.empty()) return insert_random(in, rng);
  Bytes out = in;
  out.erase(rng.below(in.size()), 1);
  return out;
}

Bytes byte_duplicate(const Bytes& in, Rng& rng) {
  if (in.empty()) return insert_random(in, rng);
  Bytes out = in;
  const auto at = rng.below(in.size());
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), out[at]);
  return out;
}

// [start, start+len) with len in [1, min(size, 64)]
std::pair<std::size_t, std::size_t> random_chunk(const Bytes& in, Rng& rng) {
  const auto len = 1 + rng.below(std::min<std::size_t>(in.size(), 64));
  const auto start = rng.below(in.size() - len + 1);
  return {start, len};
}

Bytes chunk_swap(const Bytes& in, Rng& rng) {
  if (in.size() < 2) return insert_random(in, rng);
  auto [a, alen] = random_chunk(in, rng);
  auto [b, blen] = random_chunk(in, rng);
  if (a > b) {
    std::swap(a, b);
    std::swap(alen, blen);
  }
  if (a + alen > b) return in.substr(0, a) + in.substr(b, blen) + in.substr(a, alen) + in.substr(std::min(in.size(), b + blen));
  return in.substr(0, a) + in.substr(b, blen) + in.substr(a + alen, b - a - alen) + in.substr(a, alen) +
         in.substr(b + blen);
}

Bytes chunk_repeat(const Bytes& in, Rng& rng) {
  if (in.empty()) return insert_random(in, rng);
  const auto [start, len] = random_chunk(in, rng);
  const auto times = 2 + rng.below(15);
  Bytes chunk = in.substr(start, len);
  Bytes rep;
  for (std::uint64_t i = 0; i < times; ++i) rep += chunk;
  return in.substr(0, start) + rep + in.substr(start + len);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

Bytes ascii_int(const Bytes& in, Rng& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < in.size();) {
    if (!is_digit(in[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < in.size() && is_digit(in[j])) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  if (runs.empty()) {
    Bytes out = in;
    out.insert(rng.below(in.size() + 1), vm::decimal(static_cast<std::int64_t>(rng.below(1000))));
    return out;
  }
  auto [s, e] = runs[rng.below(runs.size())];
  if (s > 0 && in[s - 1] == '-') --s;
  // long runs are clamped to 18 digits so the value fits
  const std::size_t digits_from = in[s] == '-' ? s + 1 : s;
  const std::size_t stop = std::min(e, digits_from + 18);
  std::int64_t v = 0;
  for (std::size_t i = digits_from; i < stop; ++i) v = v * 10 + (in[i] - '0');
  if (in[s] == '-') v = -v;
  switch (rng.below(5)) {
    case 0: v += 1; break;
    case 1: v -= 1; break;
    case 2: v += 16; break;
    case 3: v -= 16; break;
    default: v = -v; break;
  }
  return in.substr(0, s) + vm::decimal(v) + in.substr(stop);
}

std::vector<Bytes> split_lines(const Bytes& in) {
  std::vector<Bytes> lines;
  std::size_t at = 0;
  while (at < in.size()) {
    auto nl = in.find('\n', at);
    if (nl == Bytes::npos) nl = in.size() - 1;
    lines.push_back(in.substr(at, nl - at + 1));
    at = nl + 1;
  }
  return lines;
}

Bytes join(const std::vector<Bytes>& lines) {
  Bytes out;
  for (const auto& l : lines) out += l;
  return out;
}

Bytes line_delete(const Bytes& in, Rng& rng) {
  auto lines = split_lines(in);
  if (lines.empty()) return insert_random(in, rng);
  lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(rng.below(lines.size())));
  return join(lines);
}

Bytes line_duplicate(const Bytes& in, Rng& rng) {
  auto lines = split_lines(in);
  if (lines.empty()) return insert_random(in, rng);
  const auto i = rng.below(lines.size());
  Bytes copy = lines[i];
  if (copy.empty() || copy.back() != '\n') copy.push_back('\n');
  lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(i), copy);
  return join(lines);
}

Bytes line_shuffle(const Bytes& in, Rng& rng) {
  auto lines = split_lines(in);
  if (lines.empty()) return insert_random(in, rng);
  if (!lines.back().empty() && lines.back().back() != '\n') lines.back().push_back('\n');
  for (std::size_t i = lines.size(); i > 1; --i) std::swap(lines[i - 1], lines[rng.below(i)]);
  return join(lines);
}

Bytes truncate(const Bytes& in, Rng& rng) {
  if (in.empty()) return insert_random(in, rng);
  return in.substr(0, rng.below(in.size()));
}

Bytes append_ascii(const Bytes& in, Rng& rng) {
  Bytes out = in;
  const auto n = 1 + rng.below(16);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(random_ascii(rng));
  return out;
}

}  // namespace

const std::vector<SysMutator>& mutators() {
  static const std::vector<SysMutator> all = {
      {"bit-flip", bit_flip},         {"byte-random", byte_random},     {"byte-insert", byte_insert},
      {"byte-delete", byte_delete},   {"byte-duplicate", byte_duplicate}, {"chunk-swap", chunk_swap},
      {"chunk-repeat", chunk_repeat}, {"ascii-int", ascii_int},         {"line-delete", line_delete},
      {"line-duplicate", line_duplicate}, {"line-shuffle", line_shuffle}, {"truncate", truncate},
      {"append-ascii", append_ascii},
  };
  return all;
}

vm::SystemInput mutate_input(const vm::SystemInput& s, Rng& rng, const MutateOptions& opts) {
  std::vector<std::size_t> eligible;
  if (opts.argv)
    for (std::size_t i = 0; i < s.argv.size(); ++i) eligible.push_back(i);
  if (opts.stdin_data || eligible.empty()) eligible.push_back(s.argv.size());

  vm::SystemInput out = s;
  Bytes& target = out.element(eligible[rng.below(eligible.size())]);
  const std::size_t ops = rng.chance(opts.stack_probability) ? 2 + rng.below(3) : 1;
  const auto& all = mutators();
  for (std::size_t i = 0; i < ops; ++i) target = all[rng.below(all.size())].apply(target, rng);
  return out;
}

std::vector<vm::SystemInput> generate_batch(const std::vector<vm::SystemInput>& seeds, std::size_t n_per_seed,
                                            Rng& rng, const MutateOptions& opts) {
  if (seeds.empty()) throw EmptySeedSet("no seed inputs to mutate");
  std::vector<vm::SystemInput> out;
  out.reserve(seeds.size() * n_per_seed);
  for (const auto& seed : seeds)
    for (std::size_t i = 0; i < n_per_seed; ++i) out.push_back(mutate_input(seed, rng, opts));
  return out;
}

}  // namespace tgb::sysgen
