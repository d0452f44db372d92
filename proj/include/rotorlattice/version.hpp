#pragma once

namespace rotor {

inline constexpr const char* kProjectName = "rotorlattice";
inline constexpr const char* kVersion = "1.0.0";

}  // namespace rotor
