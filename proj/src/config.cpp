#include "inopt/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "inopt/errors.hpp"
#include "inopt/problems.hpp"
#include "inopt/trace_io.hpp"

namespace inopt {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_num(const std::string& s, const std::string& where) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *trim(end).c_str() != '\0')
    throw ConfigError("config: bad numeric value '" + s + "' for " + where);
  return v;
}

}  // namespace

bool ConfigFile::has(const std::string& sec, const std::string& key) const {
  auto it = sections.find(sec);
  return it != sections.end() && it->second.count(key) > 0;
}

std::string ConfigFile::get_str(const std::string& sec, const std::string& key) const {
  auto it = sections.find(sec);
  if (it == sections.end() || !it->second.count(key))
    throw ConfigError("config: missing key [" + sec + "] " + key);
  return it->second.at(key);
}

std::string ConfigFile::get_str(const std::string& sec, const std::string& key,
                                const std::string& fallback) const {
  return has(sec, key) ? sections.at(sec).at(key) : fallback;
}

double ConfigFile::get_num(const std::string& sec, const std::string& key) const {
  return to_num(get_str(sec, key), sec + "." + key);
}

double ConfigFile::get_num(const std::string& sec, const std::string& key,
                           double fallback) const {
  return has(sec, key) ? get_num(sec, key) : fallback;
}

long ConfigFile::get_int(const std::string& sec, const std::string& key, long fallback) const {
  return has(sec, key) ? static_cast<long>(get_num(sec, key)) : fallback;
}

bool ConfigFile::get_bool(const std::string& sec, const std::string& key, bool fallback) const {
  if (!has(sec, key)) return fallback;
  std::string v = get_str(sec, key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: bad boolean '" + v + "' for [" + sec + "] " + key);
}

std::vector<double> ConfigFile::get_list(const std::string& sec, const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(get_str(sec, key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_num(item, sec + "." + key));
  }
  return out;
}

ConfigFile parse_config_text(const std::string& text) {
  ConfigFile cfg;
  std::string section;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config: malformed section header: " + line);
      section = trim(line.substr(1, line.size() - 2));
      cfg.sections[section];
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config: expected key=value, got: " + line);
    if (section.empty()) throw ConfigError("config: key outside any section: " + line);
    cfg.sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

ConfigFile parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

NoiseSchedule schedule_from_section(const ConfigFile& f, const std::string& sec) {
  if (!f.sections.count(sec)) return NoiseSchedule::zero();
  const std::string kind = f.get_str(sec, "kind", "zero");
  NoiseSchedule s;
  if (kind == "zero") {
    s = NoiseSchedule::zero();
  } else if (kind == "power_law") {
    s = NoiseSchedule::power_law(f.get_num(sec, "c"), f.get_num(sec, "alpha"));
  } else if (kind == "constant") {
    s = NoiseSchedule::constant(f.get_num(sec, "c"));
  } else if (kind == "explicit") {
    s = NoiseSchedule::explicit_list(f.get_list(sec, "values"));
  } else {
    throw ConfigError("config: unknown noise kind '" + kind + "' in [" + sec + "]");
  }
  const std::string dir = f.get_str(sec, "direction", "random_sphere");
  if (dir == "random_sphere") {
    s.with_random_sphere(static_cast<std::uint64_t>(f.get_int(sec, "dir_seed", 0)));
  } else if (dir == "adversarial_positive") {
    s.with_adversarial_positive();
  } else if (dir == "fixed") {
    s.with_fixed(f.get_list(sec, "fixed_dir"));
  } else {
    throw ConfigError("config: unknown noise direction '" + dir + "' in [" + sec + "]");
  }
  s.start_index = f.get_int(sec, "start_index", 1);
  return s;
}

nlohmann::json problem_spec_from_section(const ConfigFile& f) {
  const std::string kind = f.get_str("problem", "kind");
  nlohmann::json spec{{"kind", kind}};
  if (kind == "sparse_regression") {
    spec["n_rows"] = static_cast<int>(f.get_num("problem", "n_rows"));
    spec["n_cols"] = static_cast<int>(f.get_num("problem", "n_cols"));
    spec["sparsity"] = static_cast<int>(f.get_num("problem", "sparsity"));
    spec["reg_weight"] = f.get_num("problem", "reg_weight");
    spec["reg_kind"] = f.get_str("problem", "reg_kind", "l1");
    spec["seed"] = static_cast<std::uint64_t>(f.get_int("problem", "seed", 0));
  } else if (kind == "zero_composite") {
    spec["dimension"] = static_cast<int>(f.get_num("problem", "dimension"));
  } else if (kind == "consensus_block") {
    spec["dimension"] = static_cast<int>(f.get_num("problem", "dimension"));
    spec["w_y"] = f.get_num("problem", "w_y");
    spec["w_z"] = f.get_num("problem", "w_z");
    spec["seed"] = static_cast<std::uint64_t>(f.get_int("problem", "seed", 0));
  } else if (kind == "reweighted_log") {
    spec["dimension"] = static_cast<int>(f.get_num("problem", "dimension"));
    spec["reg"] = f.get_num("problem", "reg");
    spec["anchor_scale"] = f.get_num("problem", "anchor_scale");
    spec["seed"] = static_cast<std::uint64_t>(f.get_int("problem", "seed", 0));
  } else if (kind == "reweighted_linear") {
    spec["dimension"] = static_cast<int>(f.get_num("problem", "dimension"));
    spec["weight"] = f.get_num("problem", "weight");
    spec["anchor_scale"] = f.get_num("problem", "anchor_scale");
    spec["seed"] = static_cast<std::uint64_t>(f.get_int("problem", "seed", 0));
  } else if (kind == "dc_quadratic") {
    spec["dimension"] = static_cast<int>(f.get_num("problem", "dimension"));
    spec["h_curvature"] = f.get_num("problem", "h_curvature");
    spec["reg_weight"] = f.get_num("problem", "reg_weight");
    spec["anchor"] = f.get_str("problem", "anchor", "seeded");
    spec["seed"] = static_cast<std::uint64_t>(f.get_int("problem", "seed", 0));
  } else if (kind == "admm_quadratic") {
    spec["target"] = f.get_num("problem", "target");
    spec["dimension"] = static_cast<int>(f.get_num("problem", "dimension", 1));
  } else {
    throw ConfigError("config: unknown problem kind '" + kind + "'");
  }
  return spec;
}

}  // namespace

RunConfig run_config_from_file(const ConfigFile& f) {
  RunConfig rc;
  rc.problem_spec = problem_spec_from_section(f);
  rc.solver = solver_kind_from_name(f.get_str("solver", "kind"));

  SolverConfig& sc = rc.solver_config;
  sc.h = f.get_num("solver", "h", 0.0);
  sc.gamma = f.get_num("solver", "gamma", 0.0);
  sc.lambda = f.get_num("solver", "lambda", 0.0);
  sc.mu = f.get_num("solver", "mu", 0.0);
  sc.admm_alpha = f.get_num("solver", "alpha", 0.0);
  sc.admm_beta = f.get_num("solver", "beta", 0.0);
  sc.max_iters = static_cast<int>(f.get_int("solver", "max_iters", 1000));
  sc.stop_tol = f.get_num("solver", "stop_tol", 0.0);
  rc.step_fraction = f.get_num("solver", "step_fraction", 0.0);

  sc.noise = schedule_from_section(f, "noise");
  sc.noise2 = schedule_from_section(f, f.sections.count("noise2") ? "noise2" : "noise");

  rc.theta = f.get_num("diagnostics", "theta", 2.0);
  rc.options.rel_tol = f.get_num("diagnostics", "tol", 1e-9);
  rc.options.window = static_cast<int>(f.get_int("diagnostics", "window", 100));
  rc.options.cauchy_tol = f.get_num("diagnostics", "cauchy_tol", 1e-6);
  rc.options.escape_radius = f.get_num("diagnostics", "escape_radius", 1e6);
  rc.options.witness_threshold = f.get_num("diagnostics", "witness_threshold", 1e-4);
  rc.expect_divergence = f.get_bool("diagnostics", "expect_divergence", false);
  rc.prefix = f.get_str("output", "prefix", "run");

  const bool two_streams = rc.solver == SolverKind::iadmm;
  rc.options.eta_summable =
      sc.noise.summable() && (!two_streams || sc.noise2.summable());
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  return run_config_from_file(parse_config_file(path));
}

}  // namespace inopt
