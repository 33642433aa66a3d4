#pragma once

namespace sklab {

inline constexpr const char* kVersion = "0.1.0";

}
