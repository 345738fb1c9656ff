#pragma once

namespace cqed {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cqed
