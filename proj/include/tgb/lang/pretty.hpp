#pragma once

#include <string>

#include "tgb/lang/ast.hpp"

namespace tgb::lang {

// Renders a program back to MiniLang source. parse(pretty_print(p)) is
// structurally equal to p.
std::string pretty_print(const Program& p);

// Compares two programs ignoring source positions.
bool structurally_equal(const Program& a, const Program& b);

}  // namespace tgb::lang
