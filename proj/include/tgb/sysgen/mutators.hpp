#pragma once

#include <string>
#include <vector>

#include "tgb/sysgen/rng.hpp"
#include "tgb/util/error.hpp"
#include "tgb/vm/vm.hpp"

namespace tgb::sysgen {

using vm::Bytes;

struct SysMutator {
  const char* name;
  Bytes (*apply)(const Bytes& in, Rng& rng);
};

// bit-flip, byte-random, byte-insert, byte-delete, byte-duplicate,
// chunk-swap, chunk-repeat, ascii-int, line-delete, line-duplicate,
// line-shuffle, truncate, append-ascii
const std::vector<SysMutator>& mutators();

class EmptySeedSet : public Error {
 public:
  using Error::Error;
};

struct MutateOptions {
  bool argv = true;
  bool stdin_data = true;
  double stack_probability = 0.25;  // chance of stacking 2-4 operators
};

// Mutates one element of s (argv element or stdin, uniformly among the
// enabled ones) with one operator, or a stack of 2-4.
vm::SystemInput mutate_input(const vm::SystemInput& s, Rng& rng, const MutateOptions& opts = {});

// |seeds| * n_per_seed inputs, seed-major. Throws EmptySeedSet.
std::vector<vm::SystemInput> generate_batch(const std::vector<vm::SystemInput>& seeds, std::size_t n_per_seed,
                                            Rng& rng, const MutateOptions& opts = {});

}  // namespace tgb::sysgen
