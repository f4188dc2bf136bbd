#pragma once

#include <string_view>

namespace qoct {

inline constexpr std::string_view version_string = "1.0.0";

}  // namespace qoct
