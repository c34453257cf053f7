#pragma once

namespace tenstruct {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tenstruct
