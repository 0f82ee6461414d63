#include "goal_scanner.hpp"

#include <cctype>
#include <vector>

namespace oracle {

GoalCount scan_goals(const std::string& src) {
  std::vector<std::string> words;
  std::vector<char> puncts;  // parallel: 0 for words
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (c == '"') {
      ++i;
      while (i < src.size() && src[i] != '"') i += src[i] == '\\' ? 2 : 1;
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      words.push_back(src.substr(i, j - i));
      puncts.push_back(0);
      i = j;
    } else if (c == '{' || c == '}') {
      words.emplace_back();
      puncts.push_back(c);
      ++i;
    } else {
      ++i;
    }
  }

  GoalCount out;
  std::string fn;
  int depth = 0;
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (puncts[k] == '{') {
      ++depth;
    } else if (puncts[k] == '}') {
      if (--depth == 0) fn.clear();
    } else if (depth == 0 && words[k] == "fn" && k + 1 < words.size()) {
      fn = words[k + 1];
      out.per_function[fn];
    } else if (!fn.empty() && (words[k] == "if" || words[k] == "while")) {
      out.total += 2;
      out.per_function[fn] += 2;
    }
  }
  return out;
}

}  // namespace oracle
