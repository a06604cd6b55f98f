#pragma once

namespace qaudit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qaudit
