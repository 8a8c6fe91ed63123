#pragma once

namespace slicesim {

inline constexpr const char* kVersion = "0.1.0";

} // namespace slicesim
