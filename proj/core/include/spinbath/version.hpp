#pragma once

namespace spinbath {

inline const char* version_string() { return "0.1.0"; }

}  // namespace spinbath
