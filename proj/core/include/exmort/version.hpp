#pragma once

namespace exmort {

inline constexpr const char* kVersion = "0.1.0";

} // namespace exmort
