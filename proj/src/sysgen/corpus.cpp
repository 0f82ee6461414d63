#include "tgb/sysgen/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tgb/util/base64.hpp"
#include "tgb/util/error.hpp"

namespace tgb::sysgen {

namespace fs = std::filesystem;

std::string encode_input_file(const vm::SystemInput& s) {
  nlohmann::json argv = nlohmann::json::array();
  for (const auto& a : s.argv) argv.push_back(util::base64_encode(a));
  return nlohmann::json{{"argv", argv}}.dump() + "\n" + s.stdin_data;
}

vm::SystemInput decode_input_file(const std::string& contents) {
  const auto nl = contents.find('\n');
  const std::string header = contents.substr(0, nl);
  vm::SystemInput s;
  try {
    auto j = nlohmann::json::parse(header);
    for (const auto& a : j.at("argv")) s.argv.push_back(util::base64_decode(a.get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad input file header: ") + e.what());
  }
  if (nl != std::string::npos) s.stdin_data = contents.substr(nl + 1);
  return s;
}

vm::SystemInput read_input_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return decode_input_file(buf.str());
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_input_file(const std::string& path, const vm::SystemInput& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << encode_input_file(s);
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<vm::SystemInput> read_corpus(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("'" + dir + "' is not a directory");
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".input") files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  std::vector<vm::SystemInput> out;
  for (const auto& f : files) out.push_back(read_input_file(f));
  return out;
}

std::string corpus_file_name(std::size_t index) {
  std::string n = std::to_string(index);
  if (n.size() < 3) n.insert(0, 3 - n.size(), '0');
  return n + ".input";
}

std::vector<std::string> write_corpus(const std::string& dir, const std::vector<vm::SystemInput>& inputs,
                                      std::size_t first_index) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir + "': " + ec.message());
  std::vector<std::string> paths;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto path = (fs::path(dir) / corpus_file_name(first_index + i)).string();
    write_input_file(path, inputs[i]);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace tgb::sysgen
