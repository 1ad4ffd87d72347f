#pragma once

namespace belab {

inline constexpr const char* kToolName = "belab";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace belab
