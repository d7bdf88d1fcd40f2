#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gps/collocation.hpp"
#include "gps/diagnostics.hpp"
#include "gps/mapping.hpp"
#include "gps/potentials.hpp"
#include "gps/real.hpp"

namespace gps {

class AssemblyError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Which diagonal to use for the reference second-derivative kernel.
enum class KernelDiagonal {
  RowSum,   ///< diagonal from sum_j g_j'' = 0; the default
  Printed,  ///< (N+1)(N+2) / (6 (1 - x_j)^2) with the extra 1/r' factors, kept for comparison
};

/// Mapped, symmetrized Hamiltonian on the interior nodes x_1 .. x_{N-1}.
struct DiscreteHamiltonian {
  ChannelSpec channel;
  int grid_order = 0;
  RadialMap map{1, 1};
  Matrix matrix;
  /// max |H - H^T| before symmetrization.
  Real asymmetry = 0;

  // Interior node data, index i <-> node i + 1.
  std::vector<Real> x;
  std::vector<Real> r;
  std::vector<Real> dr;
  std::vector<Real> legendre;
  std::vector<Real> weights;

  int dimension() const { return static_cast<int>(x.size()); }
};

DiscreteHamiltonian assemble(const ChannelSpec& channel, const CollocationGrid& grid,
                             const RadialMap& map,
                             KernelDiagonal diagonal = KernelDiagonal::RowSum);

struct EigenPairs {
  Vector values;   ///< ascending
  Matrix vectors;  ///< column k belongs to values[k]; empty if not requested
};

EigenPairs eigensolve(const DiscreteHamiltonian& h, bool with_vectors = true);

/// ||H v_k - lambda_k v_k||_2 for each pair.
std::vector<Real> eigen_residuals(const DiscreteHamiltonian& h, const EigenPairs& pairs);
/// max |V^T V - I|.
Real orthonormality_defect(const EigenPairs& pairs);
/// Spectral norm of a symmetric matrix: max |lambda|.
Real spectral_norm(const EigenPairs& pairs);

/// Eigenvalues above -kBoundThreshold are treated as discretized continuum.
inline constexpr Real kBoundThreshold = 1e-12L;

struct BoundState {
  Real energy = 0;
  int n = 0;
  int ell = 0;
  int nodes = 0;
  /// nodes == n - ell - 1
  bool node_check = false;
  std::vector<Real> r_samples;    ///< r(x_j), interior nodes
  std::vector<Real> psi_samples;  ///< normalized psi(r_j), psi > 0 near r = 0
};

/// Packages the bound states with n <= max_n. Labels are assigned by
/// counting within the channel (n = l + 1 + k) and cross-checked against
/// the radial node count; mismatches are kept with node_check = false and
/// reported through `diag`.
std::vector<BoundState> extract_states(const DiscreteHamiltonian& h, const EigenPairs& pairs,
                                       int max_n, Diagnostics* diag = nullptr);

/// Number of strict sign changes, ignoring samples below `floor` * max |psi|.
int count_nodes(const std::vector<Real>& psi, Real floor = 1e-8L);

std::string spectroscopic_label(int n, int ell);
char ell_letter(int ell);
/// Parses labels such as "1s", "10m"; returns {n, ell}.
std::pair<int, int> parse_label(const std::string& label);

/// Grid and map settings. Defaults: N = 200, alpha = 25, r_max = 500.
struct SolverParams {
  int order = 200;
  Real alpha = 25;
  Real r_max = 500;
};

/// Convenience: build grid and map, assemble, solve, extract.
struct ChannelSolution {
  DiscreteHamiltonian hamiltonian;
  EigenPairs pairs;
  std::vector<BoundState> states;
};
ChannelSolution solve_channel(const ChannelSpec& channel, const SolverParams& params,
                              int max_n, Diagnostics* diag = nullptr);

/// Bound eigenvalues only (no vectors, no node check), labeled n = l + 1 + k.
std::vector<Real> bound_energies(const ChannelSpec& channel, const SolverParams& params,
                                 int max_n);

/// Shared grid for a given order; built once per process and order.
const CollocationGrid& cached_grid(int order);

}  // namespace gps
