#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gps/hamiltonian.hpp"
#include "gps/potentials.hpp"

namespace gps {

class NoBoundStateError : public std::domain_error {
  using std::domain_error::domain_error;
};

/// Exact Hulthen s-state energy -(delta^2 / 8n^2) (2/delta - n^2)^2, Z = 1.
/// Zero at the threshold n^2 = 2/delta; throws NoBoundStateError beyond it.
Real hulthen_exact_s(int n, Real delta);

/// Approximate critical Hulthen screening 1/[n sqrt2 + 0.1645 l + 0.0983 l/n]^2.
Real critical_screening_estimate(int n, int ell);

/// Critical Hulthen screening for s states, 2/n^2.
Real s_state_critical(int n);

/// Decimal string of `value` cut toward zero after `digits` significant
/// figures, in positional notation ("-0.12345", "0.00013322880620").
std::string truncate_digits(Real value, int digits);

/// Decimal string of `value` cut toward zero after `places` decimal places.
std::string truncate_places(Real value, int places);

/// Number of leading decimal places on which a and b agree after truncation
/// (0 if sign or integer part differ). Capped at kMaxStableDigits.
int stable_digits(Real a, Real b);
inline constexpr int kMaxStableDigits = 18;

struct ConvergenceReport {
  std::vector<Real> r_max_values;
  std::vector<std::pair<int, int>> states;  ///< (n, l)
  /// energies[row][state]; NaN where the state is not bound at that r_max.
  std::vector<std::vector<Real>> energies;
  /// Decimal places shared by row i and row i + 1 (last row: with row i - 1).
  std::vector<std::vector<int>> row_digits;
  /// Row whose energy moves least against its neighbours, per state.
  std::vector<std::optional<Real>> recommended_r_max;
  /// Energy at the recommended row.
  std::vector<Real> recommended_energy;
  /// Digits shared by the recommended row and both of its neighbours.
  std::vector<int> stable_digits;
  std::vector<bool> converged;
  int target_digits = 0;

  /// Smallest r_max whose forward digits reach the target, if any.
  std::optional<Real> first_converged_r_max(std::size_t state) const;
  /// Index of r_max in r_max_values; throws if absent.
  std::size_t row_of(Real r_max) const;
};

inline const std::vector<Real> kDefaultRmaxSchedule{200, 300, 500, 800, 1200, 2000, 3000, 5000};

/// Solves the requested states at each r_max (grid order and alpha from
/// `params`) and measures digit stability across the schedule.
ConvergenceReport converge_r_max(const PotentialSpec& potential,
                                 const std::vector<std::pair<int, int>>& states,
                                 const std::vector<Real>& r_max_schedule, int target_digits,
                                 const SolverParams& params = {});

struct SweepLevel {
  std::string label;
  int n;
  int ell;
  Real energy;
};

struct SweepResult {
  std::vector<Real> screening_values;
  /// levels[i]: bound levels with n <= n_max at screening_values[i],
  /// sorted by (n, l). States past threshold are absent.
  std::vector<std::vector<SweepLevel>> levels;

  std::optional<Real> energy(std::size_t index, int n, int ell) const;
};

SweepResult sweep_screening(Family family, int n_max, const std::vector<Real>& screening_values,
                            const SolverParams& params = {});

/// Runs fn(0) .. fn(count - 1) on up to hardware_concurrency threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace gps
