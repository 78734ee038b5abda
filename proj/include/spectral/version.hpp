#pragma once

namespace spectral {

inline constexpr const char* kToolName = "spectral-bounds";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

}  // namespace spectral
