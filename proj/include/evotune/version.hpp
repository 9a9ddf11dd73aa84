#pragma once

namespace evotune {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace evotune
