#pragma once

namespace magnomech {
inline constexpr const char* project_version = "1.0.0";
}
