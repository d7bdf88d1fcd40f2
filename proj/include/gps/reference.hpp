#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gps/analysis.hpp"
#include "gps/hamiltonian.hpp"
#include "gps/potentials.hpp"

namespace gps {

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Quantity { Energy, InverseRadius, Radius };

struct ReferenceCell {
  std::string state;
  int n = 0;
  int ell = 0;
  PotentialSpec potential;
  Quantity quantity = Quantity::Energy;
  std::string printed;  ///< reference value as printed
  Real value = 0;
  bool relative = false;
  Real tolerance = 0;
  /// Additional relative check against the exact Hulthen s-state energy.
  std::optional<Real> exact_relative;
  bool informational = false;
  std::optional<Real> alternate_screening;
  std::vector<std::string> literature;
  /// Per-cell grid override (order, alpha) and r_max schedule.
  std::optional<SolverParams> solver;
  std::vector<Real> schedule;
  std::string note;
  std::string provenance;
};

struct ReferenceTable {
  std::string id;
  std::string title;
  std::vector<ReferenceCell> cells;
};

/// Loads the bundled reference tables. Throws ConfigError if the file is
/// missing or malformed.
std::vector<ReferenceTable> load_reference_tables(const std::filesystem::path& path);
/// Tabulated critical screening values keyed by state label, as printed.
struct CriticalValue {
  Family family;
  std::string state;
  std::string printed;
};
std::vector<CriticalValue> load_critical_values(const std::filesystem::path& path);

const ReferenceTable& find_table(const std::vector<ReferenceTable>& tables, const std::string& id);

/// Agreement of a literature value with the computed one at the literature's
/// printed precision (one unit in its last decimal place).
struct LiteratureCheck {
  std::string printed;
  int places = 0;
  bool agrees = false;
};

struct CellResult {
  ReferenceCell cell;
  Real computed = 0;
  Real abs_diff = 0;
  Real rel_diff = 0;
  Real r_max = 0;
  int stable_digits = 0;
  bool node_check = false;
  std::optional<Real> exact;
  std::optional<Real> exact_rel_diff;
  std::optional<Real> alternate_computed;
  std::vector<LiteratureCheck> literature;
  bool within_tolerance = false;
  /// within_tolerance, exact check and node check; informational cells always pass.
  bool passed = false;
};

struct ReproduceOptions {
  SolverParams params;  ///< r_max is chosen per state by the scanner
  std::vector<Real> schedule = kDefaultRmaxSchedule;
  int target_digits = 10;
};

std::vector<CellResult> reproduce_table(const ReferenceTable& table,
                                        const ReproduceOptions& options = {});

/// Cells a table's criterion counts (informational cells excluded).
bool all_passed(const std::vector<CellResult>& results);

std::string_view quantity_name(Quantity q);

}  // namespace gps
