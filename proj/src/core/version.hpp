#pragma once

namespace v2x {

inline constexpr const char* kVersionString = "1.0.0";

} // namespace v2x
