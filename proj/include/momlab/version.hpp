#pragma once

namespace momlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace momlab
