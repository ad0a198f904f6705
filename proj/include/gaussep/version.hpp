#pragma once

#include <string_view>

namespace gaussep {

#ifndef GAUSSEP_VERSION_STRING
#define GAUSSEP_VERSION_STRING "0.0.0"
#endif

inline constexpr std::string_view kVersion = GAUSSEP_VERSION_STRING;

}  // namespace gaussep
