#pragma once

#include <string>
#include <vector>

#include "tgb/vm/vm.hpp"

namespace tgb::sysgen {

// File format: a first line holding {"argv": [<base64>...]}, then the raw
// stdin bytes up to end of file.
std::string encode_input_file(const vm::SystemInput& s);
vm::SystemInput decode_input_file(const std::string& contents);

vm::SystemInput read_input_file(const std::string& path);
void write_input_file(const std::string& path, const vm::SystemInput& s);

// All `*.input` files of a directory, in file name order.
std::vector<vm::SystemInput> read_corpus(const std::string& dir);

// Writes inputs as NNN.input starting at `first_index`; returns the paths.
std::vector<std::string> write_corpus(const std::string& dir, const std::vector<vm::SystemInput>& inputs,
                                      std::size_t first_index = 0);

std::string corpus_file_name(std::size_t index);

}  // namespace tgb::sysgen
