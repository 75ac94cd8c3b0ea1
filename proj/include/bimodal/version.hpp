#pragma once

namespace bimodal {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bimodal
