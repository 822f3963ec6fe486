#pragma once

namespace frobsieve {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace frobsieve
