#pragma once

namespace tsgkit {

inline constexpr const char* kVersion = "0.1.0";

} // namespace tsgkit
