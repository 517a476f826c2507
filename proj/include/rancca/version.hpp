#pragma once

namespace rancca {

inline constexpr const char* kVersion = "0.1.0";

} // namespace rancca
