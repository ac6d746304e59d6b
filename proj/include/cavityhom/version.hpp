#pragma once

namespace cavityhom {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cavityhom
