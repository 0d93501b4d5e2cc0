#pragma once

#include <string_view>

namespace flexfet {

inline constexpr std::string_view tool_name = "flexfet";
inline constexpr std::string_view tool_version = "0.1.0";

} // namespace flexfet
