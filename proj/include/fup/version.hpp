#pragma once

namespace fup {
inline constexpr const char* kVersion = "1.0.0";
}
