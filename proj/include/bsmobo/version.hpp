#pragma once

namespace bsmobo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bsmobo
