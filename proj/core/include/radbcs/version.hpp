#pragma once

namespace radbcs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace radbcs
