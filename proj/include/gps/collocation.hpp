#pragma once

#include <span>
#include <vector>

#include "gps/real.hpp"

namespace gps {

/// Legendre-Gauss-Lobatto collocation grid of polynomial order N on [-1, 1].
///
/// Nodes are x_0 = -1, x_N = +1 and the N-1 roots of P'_N. The cardinal
/// functions g_j are the degree-N Lagrange polynomials through these nodes,
/// so g_j(x_k) = delta_jk.
struct CollocationGrid {
  int order = 0;
  std::vector<Real> nodes;
  std::vector<Real> weights;
  std::vector<Real> legendre_at_nodes;
  /// d2_reference(k, j) = g_j''(x_k) on the reference interval.
  Matrix d2_reference;

  int size() const { return order + 1; }
};

/// P_N(x) and P'_N(x) by the three-term recurrence.
struct LegendreValue {
  Real value;
  Real derivative;
};
LegendreValue legendre(int degree, Real x);

CollocationGrid build_grid(int order);

/// Second derivatives of the cardinal functions at the nodes, with the
/// diagonal taken from the row-sum identity sum_j g_j'' = 0.
Matrix cardinal_d2(const CollocationGrid& grid);

/// LGL quadrature sum_j w_j f(x_j).
Real quadrature(const CollocationGrid& grid, std::span<const Real> samples);

/// Barycentric evaluation of the cardinal interpolant through `samples` at x.
Real interpolate(const CollocationGrid& grid, std::span<const Real> samples, Real x);

}  // namespace gps
