#pragma once

namespace pvaudit {

inline constexpr const char* kToolName = "pvaudit";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace pvaudit
