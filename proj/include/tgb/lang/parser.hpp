#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tgb/lang/ast.hpp"
#include "tgb/util/error.hpp"

namespace tgb::lang {

struct Diagnostic {
  enum class Kind { Syntax, DuplicateDefinition, UnresolvedReference };
  Kind kind = Kind::Syntax;
  SourcePos pos;
  std::string message;
};

std::string to_string(const Diagnostic& d);

// Thrown by parse(); carries every diagnostic found. The exception type is
// chosen by the first diagnostic.
class ParseError : public Error {
 public:
  explicit ParseError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class DuplicateDefinition : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnresolvedReference : public ParseError {
 public:
  using ParseError::ParseError;
};

// Parses and resolves MiniLang source. Pure and deterministic.
Program parse(std::string_view source);

// Reads and parses a file; throws IoError when unreadable.
Program parse_file(const std::string& path);

}  // namespace tgb::lang
