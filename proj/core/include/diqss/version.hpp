#pragma once

namespace diqss {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace diqss
