#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "spinbath/propagator.hpp"

namespace spinbath {

/// Trajectory CSV: header t,re_rho11,re_rho22,re_rho12,im_rho12,trace_drift,
/// one row per grid point, 17 significant digits (round-trip exact).
/// Written atomically (temp file + rename).
void write_trajectory_csv(const Trajectory& traj,
                          const std::filesystem::path& path);

std::string trajectory_csv(const Trajectory& traj);

/// Two-column (t, value) file for plotting; column is one of
/// re_rho11, re_rho22, re_rho12, im_rho12, abs_rho12.
void write_column(const Trajectory& traj, const std::string& column,
                  const std::filesystem::path& path);

/// Metadata sidecar next to a trajectory CSV: parameters (caller
/// supplied key/value pairs), grid, kmax, warnings and library version.
void write_metadata_json(const Trajectory& traj,
                         const std::map<std::string, std::string>& params,
                         const std::filesystem::path& path);

/// Atomic text write used by the serializers above; exposed for the CLI.
void write_text_atomic(const std::string& content,
                       const std::filesystem::path& path);

/// Format one double with 17 significant digits.
std::string format_g17(double v);

}  // namespace spinbath
