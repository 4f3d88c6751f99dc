#include "spinbath/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "spinbath/version.hpp"

namespace spinbath {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_atomic(const std::string& content,
                       const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << content;
    if (!os) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t,re_rho11,re_rho22,re_rho12,im_rho12,trace_drift\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const DensityMatrix& rho = traj.states[k];
    os << format_g17(traj.time(static_cast<int>(k))) << ','
       << format_g17(rho(0, 0).real()) << ',' << format_g17(rho(1, 1).real())
       << ',' << format_g17(rho(0, 1).real()) << ','
       << format_g17(rho(0, 1).imag()) << ','
       << format_g17(traj.trace_drift[k]) << '\n';
  }
  return os.str();
}

void write_trajectory_csv(const Trajectory& traj,
                          const std::filesystem::path& path) {
  write_text_atomic(trajectory_csv(traj), path);
}

void write_column(const Trajectory& traj, const std::string& column,
                  const std::filesystem::path& path) {
  std::ostringstream os;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const DensityMatrix& rho = traj.states[k];
    double v;
    if (column == "re_rho11") v = rho(0, 0).real();
    else if (column == "re_rho22") v = rho(1, 1).real();
    else if (column == "re_rho12") v = rho(0, 1).real();
    else if (column == "im_rho12") v = rho(0, 1).imag();
    else if (column == "abs_rho12") v = std::abs(rho(0, 1));
    else throw std::invalid_argument("write_column: unknown column " + column);
    os << format_g17(traj.time(static_cast<int>(k))) << ' ' << format_g17(v)
       << '\n';
  }
  write_text_atomic(os.str(), path);
}

void write_metadata_json(const Trajectory& traj,
                         const std::map<std::string, std::string>& params,
                         const std::filesystem::path& path) {
  nlohmann::json j;
  j["version"] = version_string();
  j["grid"] = {{"dt", traj.grid.dt}, {"steps", traj.grid.steps}};
  j["kmax"] = traj.kmax;
  j["system"] = {{"epsilon", traj.system.epsilon}, {"delta", traj.system.delta}};
  j["params"] = params;
  j["warnings"] = traj.warnings;
  write_text_atomic(j.dump(2) + "\n", path);
}

}  // namespace spinbath
