#pragma once

namespace ectmol {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ectmol
