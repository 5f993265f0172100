#pragma once

#include <string_view>

namespace hurstlab {

inline constexpr std::string_view kVersionString = "hurstlab/0.3.0";

}  // namespace hurstlab
