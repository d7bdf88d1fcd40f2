#include "gps/collocation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gps {

LegendreValue legendre(int degree, Real x) {
  if (degree == 0) return {1, 0};
  Real p_prev = 1;
  Real p = x;
  for (int k = 2; k <= degree; ++k) {
    const Real p_next = ((2 * k - 1) * x * p - (k - 1) * p_prev) / k;
    p_prev = p;
    p = p_next;
  }
  const Real n = degree;
  Real dp;
  if (std::abs(x) == 1) {
    // P'_N(1) = N(N+1)/2, P'_N(-1) = (-1)^{N+1} N(N+1)/2
    dp = n * (n + 1) / 2;
    if (x < 0 && degree % 2 == 0) dp = -dp;
  } else {
    dp = n * (x * p - p_prev) / (x * x - 1);
  }
  return {p, dp};
}

namespace {

// Newton on P'_N, using P''_N from the Legendre differential equation.
Real polish_interior_node(int order, Real guess) {
  const Real k = Real(order) * (order + 1);
  Real x = guess;
  for (int it = 0; it < 100; ++it) {
    const auto [p, dp] = legendre(order, x);
    const Real d2p = (2 * x * dp - k * p) / (1 - x * x);
    const Real step = dp / d2p;
    x -= step;
    if (std::abs(step) <= 4 * std::numeric_limits<Real>::epsilon()) return x;
  }
  throw std::runtime_error("LGL node iteration did not converge (order " +
                           std::to_string(order) + ")");
}

}  // namespace

Matrix cardinal_d2(const CollocationGrid& grid) {
  const int n = grid.order;
  const int size = n + 1;
  if (n < 2 || static_cast<int>(grid.nodes.size()) != size ||
      static_cast<int>(grid.legendre_at_nodes.size()) != size) {
    throw std::invalid_argument("cardinal_d2: malformed grid");
  }
  const auto& x = grid.nodes;
  const auto& p = grid.legendre_at_nodes;
  const Real k = Real(n) * (n + 1);

  // With q(x) = (1 - x^2) P'_N(x), g_j(x) = -q(x) / (N(N+1) P_N(x_j) (x - x_j)),
  // q' = -N(N+1) P_N and q'' = -N(N+1) P'_N.
  Matrix d2(size, size);
  for (int row = 0; row < size; ++row) {
    const Real dq = -k * p[row];
    const Real d2q = -k * legendre(n, x[row]).derivative;
    Real off_sum = 0;
    for (int col = 0; col < size; ++col) {
      if (col == row) continue;
      const Real h = x[row] - x[col];
      const Real entry = -(d2q / h - 2 * dq / (h * h)) / (k * p[col]);
      d2(row, col) = entry;
      off_sum += entry;
    }
    d2(row, row) = -off_sum;
  }
  return d2;
}

CollocationGrid build_grid(int order) {
  if (order < 2) {
    throw std::invalid_argument("build_grid: order must be >= 2, got " +
                                std::to_string(order));
  }
  CollocationGrid grid;
  grid.order = order;
  grid.nodes.assign(order + 1, 0);
  grid.nodes.front() = -1;
  grid.nodes.back() = 1;

  // Roots come in +/- pairs; solve the lower half and mirror.
  for (int j = 1; j <= order / 2; ++j) {
    const Real guess = -std::cos(std::numbers::pi_v<Real> * j / order);
    const Real root = polish_interior_node(order, guess);
    grid.nodes[j] = root;
    grid.nodes[order - j] = -root;
  }
  if (order % 2 == 0) grid.nodes[order / 2] = 0;

  const Real k = Real(order) * (order + 1);
  grid.weights.resize(order + 1);
  grid.legendre_at_nodes.resize(order + 1);
  for (int j = 0; j <= order; ++j) {
    const Real pj = legendre(order, grid.nodes[j]).value;
    grid.legendre_at_nodes[j] = pj;
    grid.weights[j] = 2 / (k * pj * pj);
  }
  grid.d2_reference = cardinal_d2(grid);
  return grid;
}

Real quadrature(const CollocationGrid& grid, std::span<const Real> samples) {
  if (samples.size() != grid.weights.size()) {
    throw std::invalid_argument("quadrature: expected " +
                                std::to_string(grid.weights.size()) +
                                " samples, got " + std::to_string(samples.size()));
  }
  Real sum = 0;
  for (std::size_t j = 0; j < samples.size(); ++j) sum += grid.weights[j] * samples[j];
  return sum;
}

Real interpolate(const CollocationGrid& grid, std::span<const Real> samples, Real x) {
  if (samples.size() != grid.nodes.size()) {
    throw std::invalid_argument("interpolate: sample count does not match grid");
  }
  // Barycentric weights of the LGL nodes are proportional to 1 / P_N(x_j).
  Real num = 0;
  Real den = 0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const Real h = x - grid.nodes[j];
    if (h == 0) return samples[j];
    const Real c = 1 / (grid.legendre_at_nodes[j] * h);
    num += c * samples[j];
    den += c;
  }
  return num / den;
}

}  // namespace gps
