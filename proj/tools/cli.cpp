#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "gps/analysis.hpp"
#include "gps/hamiltonian.hpp"
#include "gps/observables.hpp"
#include "gps/reference.hpp"

#ifndef GPS_DEFAULT_DATA
#define GPS_DEFAULT_DATA "data/reference_tables.json"
#endif

namespace gps::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json, Table };

std::string full(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
  return buf;
}

std::string short_number(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6Lg", v);
  return buf;
}

struct Cell {
  std::string text;
  std::optional<double> number;
  std::optional<long long> integer;
  std::optional<bool> boolean;
};

Cell text(std::string s) { return {std::move(s), {}, {}, {}}; }
Cell number(Real v, std::string shown) { return {std::move(shown), double(v), {}, {}}; }
Cell number(Real v) { return number(v, full(v)); }
Cell integer(long long v) { return {std::to_string(v), {}, v, {}}; }
Cell flag(bool b) { return {b ? "yes" : "no", {}, {}, b}; }

struct Report {
  Json params = Json::object();
  std::string rows_key = "states";
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;
};

std::string json_param_text(const Json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

void write_csv(const Report& r, std::ostream& os) {
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i].text;
    os << '\n';
  }
}

void write_table(const Report& r, std::ostream& os) {
  for (const auto& [key, value] : r.params.items()) {
    os << "# " << key << " = " << json_param_text(value) << '\n';
  }
  std::vector<std::size_t> width(r.columns.size());
  for (std::size_t i = 0; i < r.columns.size(); ++i) width[i] = r.columns[i].size();
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].text.size());
  }
  auto line = [&](char lead, auto&& field) {
    std::string s(1, lead);
    for (std::size_t i = 0; i < width.size(); ++i) {
      const std::string& f = field(i);
      s += ' ' + f + std::string(width[i] - f.size(), ' ');
    }
    s.erase(s.find_last_not_of(' ') + 1);
    os << s << '\n';
  };
  line('#', [&](std::size_t i) -> const std::string& { return r.columns[i]; });
  for (const auto& row : r.rows) {
    line(' ', [&](std::size_t i) -> const std::string& { return row[i].text; });
  }
  for (const auto& n : r.notes) os << "# " << n << '\n';
  for (const auto& w : r.warnings) os << "# warning: " << w << '\n';
}

void write_json(const Report& r, std::ostream& os) {
  Json doc = Json::object();
  doc["params"] = r.params;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].boolean) {
        obj[r.columns[i]] = *row[i].boolean;
      } else if (row[i].integer) {
        obj[r.columns[i]] = *row[i].integer;
      } else if (row[i].number) {
        obj[r.columns[i]] = *row[i].number;
      } else {
        obj[r.columns[i]] = row[i].text;
      }
    }
    rows.push_back(std::move(obj));
  }
  doc[r.rows_key] = std::move(rows);
  doc["diagnostics"] = {{"notes", r.notes}, {"warnings", r.warnings}};
  os << doc.dump(2) << '\n';
}

void write_report(const Report& r, Format format, std::ostream& os) {
  switch (format) {
    case Format::Csv: write_csv(r, os); break;
    case Format::Json: write_json(r, os); break;
    case Format::Table: write_table(r, os); break;
  }
}

// Options shared by the solver-backed commands.
struct Job {
  std::string family = "coulomb";
  std::optional<double> delta;
  std::optional<double> lambda;
  std::optional<double> screening;
  double charge = 1;
  int order = 200;
  double alpha = 25;
  double r_max = 500;
  std::string format = "table";
  std::string out;
  int digits = 13;
  std::string data = GPS_DEFAULT_DATA;

  PotentialSpec potential() const {
    PotentialSpec p;
    p.family = parse_family(family);
    p.charge = charge;
    int given = delta.has_value() + lambda.has_value() + screening.has_value();
    if (given > 1) throw UsageError("give only one of --delta, --lambda, --screening");
    if (delta && p.family != Family::Hulthen) throw UsageError("--delta applies to hulthen");
    if (lambda && p.family != Family::Yukawa) throw UsageError("--lambda applies to yukawa");
    if (delta) p.screening = *delta;
    if (lambda) p.screening = *lambda;
    if (screening) p.screening = *screening;
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return p;
  }

  SolverParams params() const {
    if (order < 2 || order > 4000) throw UsageError("--order must lie in [2, 4000]");
    if (!(alpha > 0)) throw UsageError("--alpha must be positive");
    if (!(r_max > 0)) throw UsageError("--rmax must be positive");
    return {order, alpha, r_max};
  }

  Format output_format() const {
    if (format == "csv") return Format::Csv;
    if (format == "json") return Format::Json;
    if (format == "table") return Format::Table;
    throw UsageError("unknown --format '" + format + "'");
  }

  void check_digits() const {
    if (digits < 1 || digits > 19) throw UsageError("--digits must lie in [1, 19]");
  }
};

void add_potential_options(CLI::App& cmd, Job& job) {
  cmd.add_option("--family", job.family, "hulthen, yukawa or coulomb")
      ->check(CLI::IsMember({"hulthen", "yukawa", "coulomb"}));
  cmd.add_option("--delta", job.delta, "Hulthen screening");
  cmd.add_option("--lambda", job.lambda, "Yukawa screening");
  cmd.add_option("--screening", job.screening, "screening for either family");
  cmd.add_option("-Z,--charge", job.charge, "nuclear charge");
}

void add_grid_options(CLI::App& cmd, Job& job) {
  cmd.add_option("--order", job.order, "polynomial order N");
  cmd.add_option("--alpha", job.alpha, "mapping parameter alpha");
  cmd.add_option("--rmax", job.r_max, "box radius (a.u.)");
}

void add_output_options(CLI::App& cmd, Job& job) {
  cmd.add_option("--format", job.format, "csv, json or table")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  cmd.add_option("--out", job.out, "output file (default stdout)");
  cmd.add_option("--digits", job.digits, "significant figures kept when truncating");
}

Json potential_params(const PotentialSpec& p) {
  return {{"family", std::string(family_name(p.family))},
          {"charge", double(p.charge)},
          {"screening", double(p.screening)}};
}

void add_solver_params(Json& j, const SolverParams& p) {
  j["order"] = p.order;
  j["alpha"] = double(p.alpha);
  j["r_max"] = double(p.r_max);
}

std::string threshold_hint(const PotentialSpec& p, int n, int ell) {
  std::ostringstream os;
  if (p.family == Family::Hulthen) {
    os << "approximate Hulthen threshold for " << spectroscopic_label(n, ell) << ": delta_c ~ "
       << short_number(critical_screening_estimate(n, ell));
    if (ell == 0) os << " (s states: exactly " << short_number(s_state_critical(n)) << ")";
  } else if (p.family == Family::Yukawa) {
    os << "Yukawa thresholds lie below the Hulthen ones; Hulthen estimate for "
       << spectroscopic_label(n, ell) << ": " << short_number(critical_screening_estimate(n, ell));
  } else {
    os << "Coulomb states are always bound; increase --rmax";
  }
  return os.str();
}

// spectrum ------------------------------------------------------------------

struct SpectrumArgs {
  int n_max = 3;
  std::optional<int> l_max;
  int target = 10;
};

int run_spectrum(const Job& job, const SpectrumArgs& a, Report& rep) {
  const auto pot = job.potential();
  const auto params = job.params();
  job.check_digits();
  if (a.n_max < 1) throw UsageError("--nmax must be >= 1");
  const int l_max = std::min(a.l_max.value_or(a.n_max - 1), a.n_max - 1);
  if (l_max < 0) throw UsageError("--lmax must be >= 0");

  const std::size_t channels = l_max + 1;
  std::vector<ChannelSolution> sols(channels);
  std::vector<std::vector<Real>> refined(channels);
  std::vector<Diagnostics> diags(channels);
  SolverParams check = params;
  check.r_max = params.r_max * 1.5L;
  parallel_for(channels, [&](std::size_t ell) {
    const ChannelSpec ch{pot, static_cast<int>(ell)};
    sols[ell] = solve_channel(ch, params, a.n_max, &diags[ell]);
    refined[ell] = bound_energies(ch, check, a.n_max);
  });

  rep.params = potential_params(pot);
  add_solver_params(rep.params, params);
  rep.params["n_max"] = a.n_max;
  rep.params["l_max"] = l_max;
  rep.params["digits"] = job.digits;
  rep.params["stability_check_r_max"] = double(check.r_max);
  rep.params["target_digits"] = a.target;
  rep.columns = {"state", "n", "l", "energy", "energy_full", "nodes", "node_check", "r_max",
                 "stable_digits"};

  struct Row {
    int n, ell;
    std::vector<Cell> cells;
  };
  std::vector<Row> rows;
  bool failed = false;
  for (std::size_t ell = 0; ell < channels; ++ell) {
    for (auto& w : diags[ell].warnings) rep.warnings.push_back(std::move(w));
    for (const auto& s : sols[ell].states) {
      const std::size_t k = s.n - s.ell - 1;
      const int digits = k < refined[ell].size() ? stable_digits(s.energy, refined[ell][k]) : 0;
      failed = failed || !s.node_check;
      if (digits < a.target) {
        failed = true;
        rep.warnings.push_back(spectroscopic_label(s.n, s.ell) + " has only " +
                               std::to_string(digits) + " stable digits against r_max " +
                               short_number(check.r_max) + "; increase --rmax");
      }
      rows.push_back({s.n, s.ell,
                      {text(spectroscopic_label(s.n, s.ell)), integer(s.n), integer(s.ell),
                       text(truncate_digits(s.energy, job.digits)),
                       number(s.energy), integer(s.nodes), flag(s.node_check),
                       number(params.r_max, short_number(params.r_max)), integer(digits)}});
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& x, const Row& y) { return x.n != y.n ? x.n < y.n : x.ell < y.ell; });
  for (auto& r : rows) rep.rows.push_back(std::move(r.cells));
  return failed ? kFailed : kOk;
}

// state ---------------------------------------------------------------------

struct StateArgs {
  int n = 1;
  int ell = 0;
};

const BoundState& require_state(const ChannelSolution& sol, const PotentialSpec& pot, int n,
                                int ell) {
  for (const auto& s : sol.states) {
    if (s.n == n) return s;
  }
  throw NoBoundStateError("no bound " + spectroscopic_label(n, ell) + " state at screening " +
                          short_number(pot.screening) + "; " + threshold_hint(pot, n, ell));
}

void check_state_args(int n, int ell) {
  if (n < 1 || ell < 0 || ell >= n) throw UsageError("need n >= 1 and 0 <= l < n");
}

int run_state(const Job& job, const StateArgs& a, Report& rep) {
  check_state_args(a.n, a.ell);
  const auto pot = job.potential();
  const auto params = job.params();
  job.check_digits();
  Diagnostics diag;
  const auto sol = solve_channel({pot, a.ell}, params, a.n, &diag);
  const auto& s = require_state(sol, pot, a.n, a.ell);
  const RadialMap map(params.r_max, params.alpha);
  const auto& grid = cached_grid(params.order);

  rep.params = potential_params(pot);
  add_solver_params(rep.params, params);
  rep.params["digits"] = job.digits;
  rep.columns = {"state", "n", "l", "energy", "energy_full", "nodes", "node_check",
                 "r_inv", "r", "r2", "norm"};
  const Real norm = cumulative_norm(s, map, grid).back();
  rep.rows.push_back({text(spectroscopic_label(s.n, s.ell)), integer(s.n), integer(s.ell),
                      text(truncate_digits(s.energy, job.digits)), number(s.energy),
                      integer(s.nodes), flag(s.node_check),
                      number(expectation_r_power(s, map, grid, -1, &diag)),
                      number(expectation_r_power(s, map, grid, 1, &diag)),
                      number(expectation_r_power(s, map, grid, 2, &diag)), number(norm)});
  rep.warnings = diag.warnings;
  return s.node_check ? kOk : kFailed;
}

// density -------------------------------------------------------------------

struct DensityArgs {
  int n = 1;
  int ell = 0;
  int points = 1000;
};

int run_density(const Job& job, const DensityArgs& a, Report& rep) {
  check_state_args(a.n, a.ell);
  if (a.points < 2) throw UsageError("--points must be >= 2");
  const auto pot = job.potential();
  const auto params = job.params();
  Diagnostics diag;
  const auto sol = solve_channel({pot, a.ell}, params, a.n, &diag);
  const auto& s = require_state(sol, pot, a.n, a.ell);
  const RadialMap map(params.r_max, params.alpha);
  const auto& grid = cached_grid(params.order);
  const auto profile = radial_density(s, map, grid, a.points);

  rep.params = potential_params(pot);
  add_solver_params(rep.params, params);
  rep.params["state"] = spectroscopic_label(a.n, a.ell);
  rep.params["energy"] = full(s.energy);
  rep.params["points"] = a.points;
  rep.params["r_cut"] = full(profile.r.back());
  rep.rows_key = "density";
  rep.columns = {"r", "density"};
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    char r[48], d[48];
    std::snprintf(r, sizeof r, "%.12Lg", profile.r[i]);
    std::snprintf(d, sizeof d, "%.15Le", profile.density[i]);
    rep.rows.push_back({number(profile.r[i], r), number(profile.density[i], d)});
  }
  rep.warnings = diag.warnings;
  return s.node_check ? kOk : kFailed;
}

// converge ------------------------------------------------------------------

struct ConvergeArgs {
  std::string states = "1s";
  std::vector<double> schedule;
  int target = 10;
};

int run_converge(const Job& job, const ConvergeArgs& a, Report& rep) {
  const auto pot = job.potential();
  auto params = job.params();
  job.check_digits();
  std::vector<std::pair<int, int>> states;
  std::stringstream ss(a.states);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      states.push_back(parse_label(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (states.empty()) throw UsageError("--states is empty");
  std::vector<Real> schedule(a.schedule.begin(), a.schedule.end());
  if (schedule.empty()) schedule = kDefaultRmaxSchedule;
  ConvergenceReport report;
  try {
    report = converge_r_max(pot, states, schedule, a.target, params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  rep.params = potential_params(pot);
  rep.params["order"] = params.order;
  rep.params["alpha"] = double(params.alpha);
  Json sched = Json::array();
  for (Real r : schedule) sched.push_back(double(r));
  rep.params["schedule"] = sched;
  rep.params["target_digits"] = a.target;
  rep.rows_key = "rows";
  rep.columns = {"r_max", "state", "energy", "energy_full", "digits_vs_next", "recommended"};
  bool failed = false;
  for (std::size_t row = 0; row < schedule.size(); ++row) {
    for (std::size_t s = 0; s < states.size(); ++s) {
      const Real e = report.energies[row][s];
      const bool bound = !std::isnan(e);
      const bool recommended =
          report.recommended_r_max[s] && *report.recommended_r_max[s] == schedule[row];
      rep.rows.push_back({number(schedule[row], short_number(schedule[row])),
                          text(spectroscopic_label(states[s].first, states[s].second)),
                          text(bound ? truncate_digits(e, job.digits) : "unbound"),
                          bound ? number(e) : text("unbound"),
                          integer(report.row_digits[row][s]), flag(recommended)});
    }
  }
  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto label = spectroscopic_label(states[s].first, states[s].second);
    std::ostringstream os;
    os << label << ": ";
    if (report.recommended_r_max[s]) {
      os << "recommended r_max = " << short_number(*report.recommended_r_max[s])
         << ", stable digits = " << report.stable_digits[s]
         << ", converged = " << (report.converged[s] ? "yes" : "no");
    } else {
      os << "not bound at any r_max in the schedule; " << threshold_hint(pot, states[s].first,
                                                                         states[s].second);
    }
    rep.notes.push_back(os.str());
    failed = failed || !report.converged[s];
  }
  return failed ? kFailed : kOk;
}

// sweep ---------------------------------------------------------------------

struct SweepArgs {
  int n_max = 3;
  int n_min = 1;
  std::vector<double> values;
  std::optional<double> from;
  std::optional<double> to;
  int steps = 20;
};

int run_sweep(const Job& job, const SweepArgs& a, Report& rep) {
  auto pot = job.potential();
  if (pot.family == Family::Coulomb) throw UsageError("sweep needs hulthen or yukawa");
  const auto params = job.params();
  job.check_digits();
  std::vector<Real> values(a.values.begin(), a.values.end());
  if (values.empty()) {
    if (!a.from || !a.to || a.steps < 1) {
      throw UsageError("sweep needs --values or --from/--to/--steps");
    }
    for (int i = 0; i <= a.steps; ++i) {
      values.push_back(*a.from + (*a.to - *a.from) * Real(i) / a.steps);
    }
  }
  for (Real v : values) {
    if (!(v >= 0)) throw UsageError("screening values must be >= 0");
  }
  const auto result = sweep_screening(pot.family, a.n_max, values, params);
  rep.params = {{"family", std::string(family_name(pot.family))}, {"charge", 1.0}};
  add_solver_params(rep.params, params);
  rep.params["n_min"] = a.n_min;
  rep.params["n_max"] = a.n_max;
  rep.rows_key = "levels";
  rep.columns = {"screening", "state", "n", "l", "energy", "energy_full"};
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (const auto& level : result.levels[i]) {
      if (level.n < a.n_min) continue;
      rep.rows.push_back({number(values[i], short_number(values[i])), text(level.label),
                          integer(level.n), integer(level.ell),
                          text(truncate_digits(level.energy, job.digits)),
                          number(level.energy)});
    }
  }
  return kOk;
}

// critical ------------------------------------------------------------------

struct CriticalArgs {
  std::optional<int> n;
  int ell = 0;
};

int run_critical(const Job& job, const CriticalArgs& a, Report& rep) {
  const Family family = parse_family(job.family);
  if (family == Family::Coulomb) throw UsageError("critical needs hulthen or yukawa");
  const auto tabulated = load_critical_values(job.data);
  std::vector<std::pair<int, int>> states;
  if (a.n) {
    check_state_args(*a.n, a.ell);
    states.push_back({*a.n, a.ell});
  } else {
    for (const auto& c : tabulated) {
      if (c.family == family) states.push_back(parse_label(c.state));
    }
    std::sort(states.begin(), states.end());
  }
  rep.params = {{"family", std::string(family_name(family))}};
  rep.rows_key = "thresholds";
  rep.columns = {"state", "n", "l", "hulthen_estimate", "s_state_exact", "tabulated"};
  for (auto [n, ell] : states) {
    const auto label = spectroscopic_label(n, ell);
    std::string tab = "-";
    for (const auto& c : tabulated) {
      if (c.family == family && c.state == label) tab = c.printed;
    }
    const Real est = critical_screening_estimate(n, ell);
    rep.rows.push_back(
        {text(label), integer(n), integer(ell), number(est, short_number(est)),
         family == Family::Hulthen && ell == 0
             ? number(s_state_critical(n), short_number(s_state_critical(n)))
             : text("-"),
         text(tab)});
  }
  if (family == Family::Hulthen) rep.notes.push_back(
      "hulthen_estimate is the approximate formula 1/[n sqrt2 + 0.1645 l + 0.0983 l/n]^2; it "
      "disagrees with the tabulated thresholds (e.g. 1s: 0.5 vs 2.0)");
  return kOk;
}

// reproduce -----------------------------------------------------------------

int run_reproduce(const Job& job, const std::string& id, Report& rep) {
  const auto tables = load_reference_tables(job.data);
  std::vector<const ReferenceTable*> selected;
  if (id == "all") {
    for (const auto& t : tables) selected.push_back(&t);
  } else {
    selected.push_back(&find_table(tables, id));
  }
  ReproduceOptions options;
  options.params.order = job.order;
  options.params.alpha = job.alpha;

  rep.params = {{"data", job.data}, {"tables", id}, {"order", job.order},
                {"alpha", job.alpha}};
  Json sched = Json::array();
  for (Real r : options.schedule) sched.push_back(double(r));
  rep.params["schedule"] = sched;
  rep.rows_key = "cells";
  rep.columns = {"table", "state", "family", "screening", "quantity", "r_max", "computed",
                 "computed_full", "reference", "abs_diff", "rel_diff", "tolerance", "exact_rel_diff",
                 "literature", "status"};
  bool failed = false;
  std::size_t passed = 0, total = 0;
  Real worst_abs = 0;
  for (const auto* table : selected) {
    const auto results = reproduce_table(*table, options);
    for (const auto& r : results) {
      const auto& c = r.cell;
      const int places = static_cast<int>(c.printed.size() - c.printed.find('.') - 1);
      const bool ok = !std::isnan(r.computed);
      std::string lit;
      for (const auto& l : r.literature) {
        if (!lit.empty()) lit += ";";
        lit += l.printed + (l.agrees ? ":agrees" : ":differs");
      }
      if (lit.empty()) lit = "-";
      std::string tol = (c.relative ? "rel " : "abs ") + short_number(c.tolerance);
      if (c.exact_relative) tol += "; exact rel " + short_number(*c.exact_relative);
      std::string status = c.informational ? "info" : (r.passed ? "pass" : "FAIL");
      if (!c.informational) {
        ++total;
        passed += r.passed;
        failed = failed || !r.passed;
        if (ok) worst_abs = std::max(worst_abs, r.abs_diff);
      }
      rep.rows.push_back(
          {text(table->id), text(c.state), text(std::string(family_name(c.potential.family))),
           number(c.potential.screening, short_number(c.potential.screening)),
           text(std::string(quantity_name(c.quantity))),
           number(r.r_max, short_number(r.r_max)),
           text(ok ? truncate_places(r.computed, places) : "unbound"),
           ok ? number(r.computed) : text("unbound"), text(c.printed),
           number(r.abs_diff, short_number(r.abs_diff)),
           number(r.rel_diff, short_number(r.rel_diff)), text(tol),
           r.exact_rel_diff ? number(*r.exact_rel_diff, short_number(*r.exact_rel_diff))
                            : text("-"),
           text(lit), text(status)});
      if (c.informational) {
        std::string note = table->id + " " + c.state + ": " + c.note;
        if (r.alternate_computed && c.alternate_screening) {
          note += "; screening " + short_number(*c.alternate_screening) + " gives " +
                  truncate_places(*r.alternate_computed, places);
        }
        rep.notes.push_back(note);
      }
      if (c.solver) {
        rep.notes.push_back(table->id + " " + c.state + " at screening " +
                            short_number(c.potential.screening) + " uses order " +
                            std::to_string(c.solver->order) + ", alpha " +
                            short_number(c.solver->alpha));
      }
    }
  }
  std::ostringstream summary;
  summary << passed << "/" << total << " cells within tolerance; max |diff| = "
          << short_number(worst_abs);
  rep.notes.push_back(summary.str());
  return failed ? kFailed : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound states of screened Coulomb potentials by generalized pseudospectral "
               "collocation"};
  app.require_subcommand(1);
  Job job;

  SpectrumArgs spectrum_args;
  auto* spectrum = app.add_subcommand("spectrum", "all bound states of one potential");
  add_potential_options(*spectrum, job);
  add_grid_options(*spectrum, job);
  add_output_options(*spectrum, job);
  spectrum->add_option("--nmax", spectrum_args.n_max, "largest principal quantum number");
  spectrum->add_option("--lmax", spectrum_args.l_max, "largest angular momentum");
  spectrum->add_option("--target", spectrum_args.target,
                       "stable decimal places required against a 1.5x larger box");

  StateArgs state_args;
  auto* state = app.add_subcommand("state", "one state with expectation values");
  add_potential_options(*state, job);
  add_grid_options(*state, job);
  add_output_options(*state, job);
  state->add_option("-n,--n", state_args.n, "principal quantum number")->required();
  state->add_option("-l,--l", state_args.ell, "angular momentum");

  DensityArgs density_args;
  auto* density = app.add_subcommand("density", "radial probability density, plot-ready");
  add_potential_options(*density, job);
  add_grid_options(*density, job);
  add_output_options(*density, job);
  density->add_option("-n,--n", density_args.n, "principal quantum number")->required();
  density->add_option("-l,--l", density_args.ell, "angular momentum");
  density->add_option("--points", density_args.points, "output grid points");

  ConvergeArgs converge_args;
  auto* converge = app.add_subcommand("converge", "energy stability across box radii");
  add_potential_options(*converge, job);
  add_grid_options(*converge, job);
  add_output_options(*converge, job);
  converge->add_option("--states", converge_args.states, "comma-separated labels, e.g. 1s,2p");
  converge->add_option("--schedule", converge_args.schedule, "r_max values")->delimiter(',');
  converge->add_option("--target", converge_args.target, "required stable decimal places");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "levels as a function of screening");
  add_potential_options(*sweep, job);
  add_grid_options(*sweep, job);
  add_output_options(*sweep, job);
  sweep->add_option("--nmax", sweep_args.n_max, "largest n");
  sweep->add_option("--nmin", sweep_args.n_min, "smallest n reported");
  sweep->add_option("--values", sweep_args.values, "screening values")->delimiter(',');
  sweep->add_option("--from", sweep_args.from, "first screening value");
  sweep->add_option("--to", sweep_args.to, "last screening value");
  sweep->add_option("--steps", sweep_args.steps, "intervals between --from and --to");

  CriticalArgs critical_args;
  auto* critical = app.add_subcommand("critical", "critical screening estimates");
  critical->add_option("--family", job.family, "hulthen or yukawa")
      ->check(CLI::IsMember({"hulthen", "yukawa"}));
  critical->add_option("-n,--n", critical_args.n, "principal quantum number");
  critical->add_option("-l,--l", critical_args.ell, "angular momentum");
  critical->add_option("--data", job.data, "reference data file");
  add_output_options(*critical, job);
  job.family = "coulomb";

  std::string table_id;
  auto* reproduce = app.add_subcommand("reproduce", "recompute a bundled reference table");
  reproduce->add_option("table", table_id, "I, II, III, IV, V, VI or all")
      ->required()
      ->check(CLI::IsMember({"I", "II", "III", "IV", "V", "VI", "all"}));
  reproduce->add_option("--data", job.data, "reference data file");
  reproduce->add_option("--order", job.order, "polynomial order N");
  reproduce->add_option("--alpha", job.alpha, "mapping parameter alpha");
  add_output_options(*reproduce, job);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  }
  if (critical->parsed() && job.family == "coulomb") job.family = "hulthen";

  Report rep;
  int status = kOk;
  try {
    const Format format = job.output_format();
    if (spectrum->parsed()) status = run_spectrum(job, spectrum_args, rep);
    if (state->parsed()) status = run_state(job, state_args, rep);
    if (density->parsed()) status = run_density(job, density_args, rep);
    if (converge->parsed()) status = run_converge(job, converge_args, rep);
    if (sweep->parsed()) status = run_sweep(job, sweep_args, rep);
    if (critical->parsed()) status = run_critical(job, critical_args, rep);
    if (reproduce->parsed()) status = run_reproduce(job, table_id, rep);

    if (job.out.empty()) {
      write_report(rep, format, out);
    } else {
      std::ofstream file(job.out, std::ios::binary);
      if (!file) throw ConfigError("cannot open output file " + job.out);
      write_report(rep, format, file);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const NoBoundStateError& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  if (job.format != "table" || !job.out.empty()) {
    for (const auto& w : rep.warnings) err << "warning: " << w << '\n';
  }
  return status;
}

}  // namespace gps::cli
