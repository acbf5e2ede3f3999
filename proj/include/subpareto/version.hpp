#pragma once

namespace subpareto {

inline constexpr const char* kVersion = "0.1.0";

} // namespace subpareto
