#pragma once

namespace semmap {

inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace semmap
