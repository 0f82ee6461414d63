#pragma once

#include <string>
#include <string_view>

namespace tgb::util {

// Standard alphabet, '=' padded.
std::string base64_encode(std::string_view bytes);

// Throws FormatError on characters outside the alphabet or bad padding.
std::string base64_decode(std::string_view text);

}  // namespace tgb::util
