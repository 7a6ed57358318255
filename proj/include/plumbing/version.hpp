#pragma once

#include <string_view>

namespace plumbing {
inline constexpr std::string_view kToolVersion = "0.1.0";
}
