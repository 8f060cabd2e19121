#pragma once

namespace symform {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace symform
