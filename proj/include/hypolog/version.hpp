#pragma once

namespace hypolog {

inline constexpr const char* kVersion = "0.1.0";

} // namespace hypolog
