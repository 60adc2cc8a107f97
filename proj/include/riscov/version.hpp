#pragma once

namespace riscov {

inline constexpr const char* kVersion = "0.1.0";

} // namespace riscov
