#pragma once

namespace szego {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace szego
