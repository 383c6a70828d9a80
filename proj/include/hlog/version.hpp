#pragma once

namespace hlog {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hlog
