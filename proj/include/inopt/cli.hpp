#pragma once

#include <string>
#include <vector>

namespace inopt::cli {

// Exit codes: 0 clean, 1 failed checks, 2 usage/config/schema error,
// 3 numeric failure (partial outputs written).
int cmd_run(const std::string& config_path, const std::string& out_dir);
int cmd_alpha_sweep(const std::string& config_path, const std::vector<double>& alphas,
                    const std::string& out_dir, int parallel);
int cmd_ctheta(double theta_min, double theta_max, int points, const std::string& out_path);
int cmd_verify(const std::string& trace_path, const std::string& constants_path,
               const std::string& out_path);

}  // namespace inopt::cli
