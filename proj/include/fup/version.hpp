#pragma once

namespace fup {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fup
