#pragma once

namespace spinchaos {

inline constexpr const char* kToolName = "spinchaos";
inline constexpr const char* kVersionString = "0.1.0";

}  // namespace spinchaos
