#include "inopt/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "inopt/errors.hpp"
#include "inopt/noise.hpp"
#include "inopt/runner.hpp"
#include "inopt/trace_io.hpp"

namespace inopt::cli {

namespace {

int report_error(const std::exception& e, int code) {
  std::cerr << "error: " << e.what() << "\n";
  return code;
}

}  // namespace

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  try {
    RunConfig rc = load_run_config(config_path);
    RunArtifacts art = execute_run(rc, out_dir);
    std::cout << "trace:  " << art.trace_path << "\n"
              << "report: " << art.report_path << "\n";
    if (art.result.trace.status == RunStatus::numeric_failure) {
      std::cerr << "error: run ended with non-finite values; partial outputs written\n";
      return 3;
    }
    std::cout << "verdict: " << to_string(art.report.verdict)
              << "  descent violations: " << art.report.descent_violations.size()
              << "  relative-error violations: " << art.report.relerr_violations.size() << "\n";
    return art.checks_clean ? 0 : 1;
  } catch (const ConfigError& e) {
    return report_error(e, 2);
  } catch (const SchemaError& e) {
    return report_error(e, 2);
  } catch (const std::invalid_argument& e) {
    return report_error(e, 2);
  } catch (const NumericError& e) {
    return report_error(e, 3);
  }
}

int cmd_alpha_sweep(const std::string& config_path, const std::vector<double>& alphas,
                    const std::string& out_dir, int parallel) {
  if (alphas.empty()) {
    std::cerr << "error: alpha-sweep needs a nonempty list of exponents\n";
    return 2;
  }
  try {
    RunConfig base = load_run_config(config_path);
    if (base.solver_config.noise.kind != ScheduleKind::power_law)
      throw ConfigError("alpha-sweep: base config must use a power_law schedule");
    validate_pairing(base);
    std::filesystem::create_directories(out_dir);

    struct Row {
      double alpha = 0.0;
      double path_length = 0.0;
      double final_witness = 0.0;
      std::string verdict;
      int status = 0;
    };
    std::vector<Row> rows(alphas.size());

    auto run_one = [&](std::size_t i) {
      RunConfig rc = base;
      rc.solver_config.noise = NoiseSchedule::power_law(base.solver_config.noise.c, alphas[i]);
      rc.solver_config.noise.direction = base.solver_config.noise.direction;
      rc.solver_config.noise.dir_seed = base.solver_config.noise.dir_seed;
      rc.solver_config.noise.fixed_dir = base.solver_config.noise.fixed_dir;
      rc.solver_config.noise.start_index = base.solver_config.noise.start_index;
      if (rc.solver == SolverKind::iadmm &&
          base.solver_config.noise2.kind == ScheduleKind::power_law) {
        double c2 = base.solver_config.noise2.c;
        auto dir = base.solver_config.noise2.direction;
        auto seed = base.solver_config.noise2.dir_seed;
        rc.solver_config.noise2 = NoiseSchedule::power_law(c2, alphas[i]);
        rc.solver_config.noise2.direction = dir;
        rc.solver_config.noise2.dir_seed = seed;
      }
      rc.options.eta_summable = rc.solver_config.noise.summable();
      rc.expect_divergence = false;
      std::ostringstream name;
      name << base.prefix << "_alpha_" << alphas[i];
      rc.prefix = name.str();
      Row row;
      row.alpha = alphas[i];
      try {
        RunArtifacts art = execute_run(rc, out_dir);
        row.path_length = art.report.path_length_partial.back();
        row.final_witness = art.report.final_witness_norm;
        row.verdict = to_string(art.report.verdict);
        row.status = art.result.trace.status == RunStatus::ok ? 0 : 3;
      } catch (const std::exception& e) {
        row.verdict = std::string("error: ") + e.what();
        row.status = 2;
      }
      rows[i] = row;
    };

    if (parallel > 1) {
      std::vector<std::thread> pool;
      for (int t = 0; t < parallel && t < static_cast<int>(alphas.size()); ++t)
        pool.emplace_back([&, t]() {
          for (std::size_t i = static_cast<std::size_t>(t); i < alphas.size();
               i += static_cast<std::size_t>(parallel))
            run_one(i);
        });
      for (auto& th : pool) th.join();
    } else {
      for (std::size_t i = 0; i < alphas.size(); ++i) run_one(i);
    }

    std::string summary_path = out_dir + "/sweep_summary.csv";
    std::ofstream sum(summary_path);
    sum << "alpha,path_length,final_witness_norm,verdict\n";
    std::cout << "alpha     path_length    final_witness   verdict\n";
    int rcode = 0;
    for (const auto& row : rows) {
      sum << format_double(row.alpha) << ',' << format_double(row.path_length) << ','
          << format_double(row.final_witness) << ',' << row.verdict << '\n';
      std::printf("%-9g %-14.6g %-15.6g %s\n", row.alpha, row.path_length, row.final_witness,
                  row.verdict.c_str());
      rcode = std::max(rcode, row.status);
    }
    std::cout << "summary: " << summary_path << "\n";
    return rcode;
  } catch (const ConfigError& e) {
    return report_error(e, 2);
  } catch (const SchemaError& e) {
    return report_error(e, 2);
  } catch (const std::invalid_argument& e) {
    return report_error(e, 2);
  }
}

int cmd_ctheta(double theta_min, double theta_max, int points, const std::string& out_path) {
  if (!(theta_min > 1.0) || !(theta_min < theta_max) || points < 2) {
    std::cerr << "error: ctheta needs 1 < min < max and points >= 2\n";
    return 2;
  }
  std::ostringstream body;
  body << "theta,c_theta\n";
  for (int i = 0; i < points; ++i) {
    double theta = theta_min + i * (theta_max - theta_min) / (points - 1);
    body << format_double(theta) << ',' << format_double(c_theta(theta)) << '\n';
  }
  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    if (auto dir = std::filesystem::path(out_path).parent_path(); !dir.empty())
      std::filesystem::create_directories(dir);
    std::ofstream out(out_path);
    out << body.str();
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& trace_path, const std::string& constants_path,
               const std::string& out_path) {
  try {
    bool clean = false;
    DiagnosticsReport rep = reaudit(trace_path, constants_path, &clean);
    nlohmann::json j = report_to_json(rep);
    if (out_path.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      write_json_file(out_path, j);
      std::cout << "report: " << out_path << "\n";
    }
    std::cout << "verdict: " << to_string(rep.verdict)
              << "  descent violations: " << rep.descent_violations.size()
              << "  relative-error violations: " << rep.relerr_violations.size() << "\n";
    return clean ? 0 : 1;
  } catch (const SchemaError& e) {
    return report_error(e, 2);
  } catch (const NotSummableError& e) {
    return report_error(e, 2);
  } catch (const std::invalid_argument& e) {
    return report_error(e, 2);
  }
}

}  // namespace inopt::cli
