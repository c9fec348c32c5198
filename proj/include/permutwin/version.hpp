#pragma once

namespace permutwin {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace permutwin
