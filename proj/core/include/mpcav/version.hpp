#pragma once

namespace mpcav {

inline constexpr const char* kVersion = "0.1.0";

} // namespace mpcav
