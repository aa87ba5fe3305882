#pragma once

namespace lohseg {

inline constexpr const char* kVersion = "0.1.0";

} // namespace lohseg
