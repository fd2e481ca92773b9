#pragma once

#include <string_view>

namespace patternforge::assets {

/// Transcribed digraphs of named patterns (JSON) and its SHA-256.
std::string_view figures_json();
std::string_view figures_sha256();

/// Realizing matrices of the no-proper-2-cycle order-4 table (JSON) and its SHA-256.
std::string_view appendix_json();
std::string_view appendix_sha256();

}  // namespace patternforge::assets
