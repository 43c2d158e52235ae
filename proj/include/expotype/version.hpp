#pragma once

namespace expotype {

inline constexpr const char* kToolName = "expotype";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace expotype
