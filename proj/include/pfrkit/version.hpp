#pragma once

namespace pfrkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pfrkit
