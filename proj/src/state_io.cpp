#include "vstates/state_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace vstates {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw FormatError("trailing characters in number '" + s + "'");
  return v;
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("state file lacks field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("state file field '") + key + "': " + e.what());
  }
}

}  // namespace

VortexContourCoeffs StateFile::coeffs() const {
  VortexContourCoeffs c;
  c.b = b;
  c.fold = m;
  c.a1 = a1;
  c.a2 = a2;
  return c;
}

StateFile make_state_file(const SolveReport& report, int nodes) {
  StateFile s;
  s.b = report.coeffs.b;
  s.m = report.coeffs.fold;
  s.omega = report.omega;
  s.modes = report.coeffs.modes();
  s.nodes = nodes;
  s.a1 = report.coeffs.a1;
  s.a2 = report.coeffs.a2;
  s.residual_max = report.residual_max;
  s.iterations = report.iterations;
  s.converged = report.converged;
  s.trivial = report.trivial;
  s.status = to_string(report.status);
  return s;
}

std::string serialize_state(const StateFile& s) {
  json j;
  j["schema_version"] = s.schema_version;
  j["kind"] = "vstate";
  if (s.created) j["created"] = *s.created;
  j["b"] = s.b;
  j["m"] = s.m;
  j["omega"] = s.omega;
  j["M"] = s.modes;
  j["N"] = s.nodes;
  j["a1"] = s.a1;
  j["a2"] = s.a2;
  j["residual_max"] = s.residual_max;
  j["iterations"] = s.iterations;
  j["converged"] = s.converged;
  j["trivial"] = s.trivial;
  j["status"] = s.status;
  return j.dump(2) + "\n";
}

StateFile parse_state(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("state file is not valid JSON: ") + e.what());
  }
  StateFile s;
  s.schema_version = field<int>(j, "schema_version");
  if (s.schema_version != StateFile::kSchemaVersion) {
    throw FormatError("unsupported state schema_version " + std::to_string(s.schema_version));
  }
  if (j.contains("created")) s.created = field<std::string>(j, "created");
  s.b = field<double>(j, "b");
  s.m = field<int>(j, "m");
  s.omega = field<double>(j, "omega");
  s.modes = field<int>(j, "M");
  s.nodes = field<int>(j, "N");
  s.a1 = field<std::vector<double>>(j, "a1");
  s.a2 = field<std::vector<double>>(j, "a2");
  s.residual_max = field<double>(j, "residual_max");
  s.iterations = field<int>(j, "iterations");
  s.converged = field<bool>(j, "converged");
  s.trivial = j.contains("trivial") ? field<bool>(j, "trivial") : false;
  s.status = j.contains("status") ? field<std::string>(j, "status") : std::string{};
  if (static_cast<int>(s.a1.size()) != s.modes || static_cast<int>(s.a2.size()) != s.modes) {
    throw FormatError("coefficient arrays do not match M");
  }
  return s;
}

void write_state(const std::filesystem::path& path, const StateFile& s) {
  write_text(path, serialize_state(s));
}

StateFile read_state(const std::filesystem::path& path) { return parse_state(read_text(path)); }

BranchFile make_branch_file(const Branch& branch, int nodes) {
  BranchFile f;
  f.b = branch.b;
  f.m = branch.m;
  f.origin = to_string(branch.origin);
  f.step = branch.step;
  f.nodes = nodes;
  for (const BranchRecord& r : branch.records) {
    const auto& c = r.report.coeffs;
    f.rows.push_back({r.omega, r.distance, r.report.iterations, c.modes() > 0 ? c.a1[0] : 0.0,
                      c.modes() > 0 ? c.a2[0] : 0.0, r.report.converged});
  }
  if (branch.terminated_at) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    f.rows.push_back({*branch.terminated_at, nan, branch.termination_iterations, nan, nan, false});
  }
  return f;
}

std::string serialize_branch(const BranchFile& f) {
  std::ostringstream os;
  os << "# vstates branch v1\n";
  if (f.created) os << "# created=" << *f.created << "\n";
  os << "# b=" << fmt17(f.b) << "\n";
  os << "# m=" << f.m << "\n";
  os << "# origin=" << f.origin << "\n";
  os << "# step=" << fmt17(f.step) << "\n";
  os << "# nodes=" << f.nodes << "\n";
  os << "omega,distance,iterations,a1_1,a2_1,converged\n";
  for (const BranchRow& r : f.rows) {
    os << fmt17(r.omega) << ',' << fmt17(r.distance) << ',' << r.iterations << ','
       << fmt17(r.a1_1) << ',' << fmt17(r.a2_1) << ',' << (r.converged ? 1 : 0) << '\n';
  }
  return os.str();
}

BranchFile parse_branch(const std::string& text) {
  BranchFile f;
  std::istringstream in(text);
  std::string line;
  bool seen_columns = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string val = line.substr(eq + 1);
      if (key == "created") f.created = val;
      else if (key == "b") f.b = parse_double(val);
      else if (key == "m") f.m = std::stoi(val);
      else if (key == "origin") f.origin = val;
      else if (key == "step") f.step = parse_double(val);
      else if (key == "nodes") f.nodes = std::stoi(val);
      continue;
    }
    if (!seen_columns) {
      if (line != "omega,distance,iterations,a1_1,a2_1,converged") {
        throw FormatError("unexpected branch column header: " + line);
      }
      seen_columns = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw FormatError("branch row has " + std::to_string(cells.size()) + " cells");
    BranchRow r;
    r.omega = parse_double(cells[0]);
    r.distance = parse_double(cells[1]);
    r.iterations = std::stoi(cells[2]);
    r.a1_1 = parse_double(cells[3]);
    r.a2_1 = parse_double(cells[4]);
    r.converged = cells[5] == "1";
    f.rows.push_back(r);
  }
  if (!seen_columns) throw FormatError("branch file has no column header");
  return f;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("write failed for " + path.string());
}

std::string timestamp_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace vstates
