#pragma once

namespace ajj {

inline constexpr const char* version = "0.1.0";

} // namespace ajj
