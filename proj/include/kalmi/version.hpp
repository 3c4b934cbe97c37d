#pragma once

namespace kalmi {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kalmi
