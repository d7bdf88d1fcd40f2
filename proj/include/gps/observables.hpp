#pragma once

#include <vector>

#include "gps/collocation.hpp"
#include "gps/diagnostics.hpp"
#include "gps/hamiltonian.hpp"
#include "gps/mapping.hpp"

namespace gps {

/// <r^p> = sum_j w_j r'(x_j) r_j^p psi(r_j)^2 for p in {-2, -1, 1, 2}.
Real expectation_r_power(const BoundState& state, const RadialMap& map,
                         const CollocationGrid& grid, int p, Diagnostics* diag = nullptr);

/// Running LGL partial sums of psi^2 over r, one entry per interior node.
std::vector<Real> cumulative_norm(const BoundState& state, const RadialMap& map,
                                  const CollocationGrid& grid);

/// Integral of psi^2 over [0, r], exact for the collocation interpolant.
Real norm_within(const BoundState& state, const RadialMap& map, const CollocationGrid& grid,
                 Real r);

/// psi(r) off the nodes, through the cardinal interpolant of sqrt(r') psi.
Real evaluate_psi(const BoundState& state, const RadialMap& map, const CollocationGrid& grid,
                  Real r);

struct DensityProfile {
  std::vector<Real> r;
  std::vector<Real> density;
};

/// psi(r)^2 on a uniform grid over [0, r_cut], where r_cut is the first
/// node at which the cumulative norm exceeds 1 - 1e-8.
DensityProfile radial_density(const BoundState& state, const RadialMap& map,
                              const CollocationGrid& grid, int output_points);

struct DensityPeak {
  Real r;
  Real height;
};

/// Global maximum of psi(r)^2, refined by golden-section search on the interpolant.
DensityPeak locate_density_peak(const BoundState& state, const RadialMap& map,
                                const CollocationGrid& grid);

/// Trapezoid integral of a sampled profile.
Real trapezoid(const std::vector<Real>& x, const std::vector<Real>& y);

/// Number of sign changes of psi on the profile's grid (zeros of the density).
int density_zeros(const BoundState& state, const RadialMap& map, const CollocationGrid& grid,
                  const DensityProfile& profile);

}  // namespace gps
