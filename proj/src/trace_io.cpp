#include "inopt/trace_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "inopt/errors.hpp"

namespace inopt {

namespace {

const char* kBaseHeader = "k,obj,step_norm,eta,witness_norm,t_k,xi";
const char* kPireHeader = "k,obj,step_norm,eta,witness_norm,t_k,xi,w_min,w_max";
const char* kAdmmHeader =
    "k,obj,step_norm,eta,witness_norm,t_k,xi,dual_step,y_step,e1_norm,e2_norm,e2_diff_norm";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw SchemaError("trace: bad numeric field '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(const std::string& path, const IterateTrace& trace) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot open trace file for writing: " + path);
  const bool pire = trace.scheme == SolverKind::pire;
  const bool admm = trace.scheme == SolverKind::iadmm;
  out << (pire ? kPireHeader : admm ? kAdmmHeader : kBaseHeader) << '\n';
  for (const auto& r : trace.records) {
    out << r.k << ',' << format_double(r.obj) << ',' << format_double(r.step_norm) << ','
        << format_double(r.eta) << ',' << format_double(r.witness_norm) << ','
        << format_double(r.t) << ',' << format_double(r.xi);
    if (pire) out << ',' << format_double(r.w_min) << ',' << format_double(r.w_max);
    if (admm)
      out << ',' << format_double(r.dual_step) << ',' << format_double(r.y_step) << ','
          << format_double(r.e1_norm) << ',' << format_double(r.e2_norm) << ','
          << format_double(r.e2_diff_norm);
    out << '\n';
  }
  if (!out) throw SchemaError("short write to trace file: " + path);
}

IterateTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open trace file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw SchemaError("trace file is empty: " + path);
  IterateTrace trace;
  std::size_t ncols = 0;
  if (header == kBaseHeader) {
    trace.scheme = SolverKind::ipg;
    ncols = 7;
  } else if (header == kPireHeader) {
    trace.scheme = SolverKind::pire;
    ncols = 9;
  } else if (header == kAdmmHeader) {
    trace.scheme = SolverKind::iadmm;
    ncols = 12;
  } else {
    throw SchemaError("trace: unrecognized header: " + header);
  }
  std::string line;
  long expected_k = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != ncols) throw SchemaError("trace: wrong column count in row: " + line);
    IterateRecord r;
    r.k = static_cast<long>(parse_double(f[0]));
    if (r.k != expected_k) throw SchemaError("trace: non-consecutive iteration index");
    ++expected_k;
    r.obj = parse_double(f[1]);
    r.step_norm = parse_double(f[2]);
    r.eta = parse_double(f[3]);
    r.witness_norm = parse_double(f[4]);
    r.t = parse_double(f[5]);
    r.xi = parse_double(f[6]);
    if (ncols == 9) {
      r.w_min = parse_double(f[7]);
      r.w_max = parse_double(f[8]);
    } else if (ncols == 12) {
      r.dual_step = parse_double(f[7]);
      r.y_step = parse_double(f[8]);
      r.e1_norm = parse_double(f[9]);
      r.e2_norm = parse_double(f[10]);
      r.e2_diff_norm = parse_double(f[11]);
    }
    trace.records.push_back(std::move(r));
  }
  if (trace.records.empty()) throw SchemaError("trace: no data rows: " + path);
  return trace;
}

nlohmann::json schedule_to_json(const NoiseSchedule& s) {
  nlohmann::json j;
  switch (s.kind) {
    case ScheduleKind::zero: j["kind"] = "zero"; break;
    case ScheduleKind::power_law:
      j["kind"] = "power_law";
      j["c"] = s.c;
      j["alpha"] = s.alpha;
      break;
    case ScheduleKind::constant:
      j["kind"] = "constant";
      j["c"] = s.c;
      break;
    case ScheduleKind::explicit_list:
      j["kind"] = "explicit";
      j["values"] = s.values;
      break;
  }
  switch (s.direction) {
    case DirectionKind::random_sphere:
      j["direction"] = "random_sphere";
      j["dir_seed"] = s.dir_seed;
      break;
    case DirectionKind::fixed:
      j["direction"] = "fixed";
      j["fixed_dir"] = s.fixed_dir;
      break;
    case DirectionKind::adversarial_positive:
      j["direction"] = "adversarial_positive";
      break;
  }
  j["start_index"] = s.start_index;
  return j;
}

NoiseSchedule schedule_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    NoiseSchedule s;
    if (kind == "zero") {
      s = NoiseSchedule::zero();
    } else if (kind == "power_law") {
      s = NoiseSchedule::power_law(j.at("c").get<double>(), j.at("alpha").get<double>());
    } else if (kind == "constant") {
      s = NoiseSchedule::constant(j.at("c").get<double>());
    } else if (kind == "explicit") {
      s = NoiseSchedule::explicit_list(j.at("values").get<std::vector<double>>());
    } else {
      throw SchemaError("schedule: unknown kind: " + kind);
    }
    const std::string dir = j.value("direction", "random_sphere");
    if (dir == "random_sphere") {
      s.with_random_sphere(j.value("dir_seed", std::uint64_t{0}));
    } else if (dir == "fixed") {
      s.with_fixed(j.at("fixed_dir").get<Vec>());
    } else if (dir == "adversarial_positive") {
      s.with_adversarial_positive();
    } else {
      throw SchemaError("schedule: unknown direction: " + dir);
    }
    s.start_index = j.value("start_index", 1L);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("schedule: ") + e.what());
  }
}

nlohmann::json constants_to_json(const LemmaConstants& c) {
  return nlohmann::json{{"a", c.a}, {"b", c.b}, {"c", c.c}, {"d", c.d}, {"tau", c.tau}};
}

LemmaConstants constants_from_json(const nlohmann::json& j) {
  try {
    LemmaConstants c;
    c.a = j.at("a").get<double>();
    c.b = j.at("b").get<double>();
    c.c = j.at("c").get<double>();
    c.d = j.at("d").get<double>();
    c.tau = j.at("tau").get<int>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("constants: ") + e.what());
  }
}

std::string solver_kind_name(SolverKind k) {
  switch (k) {
    case SolverKind::ipg: return "ipg";
    case SolverKind::ipalm: return "ipalm";
    case SolverKind::pire: return "pire";
    case SolverKind::idc: return "idc";
    case SolverKind::iadmm: return "iadmm";
  }
  return "ipg";
}

SolverKind solver_kind_from_name(const std::string& name) {
  if (name == "ipg") return SolverKind::ipg;
  if (name == "ipalm") return SolverKind::ipalm;
  if (name == "pire") return SolverKind::pire;
  if (name == "idc") return SolverKind::idc;
  if (name == "iadmm") return SolverKind::iadmm;
  throw SchemaError("unknown solver kind: " + name);
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot open json file for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw SchemaError("short write to json file: " + path);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open json file: " + path);
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("json parse: ") + e.what());
  }
}

}  // namespace inopt
