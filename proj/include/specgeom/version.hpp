#pragma once

namespace specgeom {

inline constexpr const char* kVersion = "0.1.0";

} // namespace specgeom
