#pragma once

namespace dipole_noise {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dipole_noise
