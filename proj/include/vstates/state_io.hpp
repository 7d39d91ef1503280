#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vstates/continuation.hpp"
#include "vstates/solver.hpp"

namespace vstates {

class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// One solved (or attempted) state as written by `vstates solve`.
struct StateFile {
  static constexpr int kSchemaVersion = 1;

  int schema_version = kSchemaVersion;
  double b = 0.0;
  int m = 0;
  double omega = 0.0;
  int modes = 0;
  int nodes = 0;
  std::vector<double> a1;
  std::vector<double> a2;
  double residual_max = 0.0;
  int iterations = 0;
  bool converged = false;
  bool trivial = false;
  std::string status;
  std::optional<std::string> created;  // timestamp, omitted for golden output

  VortexContourCoeffs coeffs() const;
  bool operator==(const StateFile&) const = default;
};

StateFile make_state_file(const SolveReport& report, int nodes);

/// JSON document; doubles are written with enough digits to round-trip exactly.
std::string serialize_state(const StateFile& s);
StateFile parse_state(const std::string& text);

void write_state(const std::filesystem::path& path, const StateFile& s);
StateFile read_state(const std::filesystem::path& path);

struct BranchRow {
  double omega = 0.0;
  double distance = 0.0;
  int iterations = 0;
  double a1_1 = 0.0;
  double a2_1 = 0.0;
  bool converged = false;

  bool operator==(const BranchRow&) const = default;
};

/// CSV with a '#'-commented header. A branch that terminated gets one extra
/// row at terminated_at with converged = 0 and NaN geometry columns.
struct BranchFile {
  double b = 0.0;
  int m = 0;
  std::string origin;
  double step = 0.0;
  int nodes = 0;
  std::optional<std::string> created;
  std::vector<BranchRow> rows;
};

BranchFile make_branch_file(const Branch& branch, int nodes);
std::string serialize_branch(const BranchFile& f);
BranchFile parse_branch(const std::string& text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Current UTC time as ISO-8601.
std::string timestamp_now();

}  // namespace vstates
