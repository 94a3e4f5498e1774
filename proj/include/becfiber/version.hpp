#pragma once

namespace becfiber {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace becfiber
