#pragma once

namespace hail {

inline constexpr const char* kVersion = "hailstorm 1.0.0";
inline constexpr const char* kSeedDerivation =
    "replicate i uses splitmix64(base_seed xor (i+1)*0x9E3779B97F4A7C15)";

}  // namespace hail
