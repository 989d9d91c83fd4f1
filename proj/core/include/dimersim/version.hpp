#pragma once

namespace dimersim {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace dimersim
