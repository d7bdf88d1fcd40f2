#include "gps/hamiltonian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace gps {

DiscreteHamiltonian assemble(const ChannelSpec& channel, const CollocationGrid& grid,
                             const RadialMap& map, KernelDiagonal diagonal) {
  channel.validate();
  const int order = grid.order;
  const int dim = order - 1;
  if (dim < 1) throw std::invalid_argument("assemble: grid order must be >= 2");

  DiscreteHamiltonian h{channel, order, map, Matrix(dim, dim), 0, {}, {}, {}, {}, {}};
  h.x.reserve(dim);
  for (int j = 1; j < order; ++j) {
    const Real x = grid.nodes[j];
    h.x.push_back(x);
    h.r.push_back(map_r(map, x));
    h.dr.push_back(map_derivatives(map, x).first);
    h.legendre.push_back(grid.legendre_at_nodes[j]);
    h.weights.push_back(grid.weights[j]);
  }

  const Matrix& d2 = grid.d2_reference;
  Matrix kinetic(dim, dim);
  if (diagonal == KernelDiagonal::RowSum) {
    // g_j''(x_i) = c_ij P_N(x_i) / P_N(x_j); rescaling by P_N leaves the
    // symmetric kernel c_ij.
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        const Real c = d2(i + 1, j + 1) * h.legendre[j] / h.legendre[i];
        kinetic(i, j) = -c / (2 * h.dr[i] * h.dr[j]);
      }
    }
  } else {
    const Real np1 = order + 1;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        Real d;
        if (i == j) {
          const Real t = 1 - h.x[i];
          d = np1 * (np1 + 1) / (6 * t * t) / (h.dr[i] * h.dr[i]);
        } else {
          const Real t = h.x[j] - h.x[i];
          d = 1 / (t * t) / (h.dr[i] * h.dr[j]);
        }
        kinetic(i, j) = -d / (2 * h.dr[i] * h.dr[j]);
      }
    }
  }

  h.asymmetry = (kinetic - kinetic.transpose()).cwiseAbs().maxCoeff();
  h.matrix = (kinetic + kinetic.transpose()) / 2;

  for (int i = 0; i < dim; ++i) {
    const Real v = effective_potential(channel, h.r[i]) + mapping_potential(map, h.x[i]);
    if (!std::isfinite(v)) {
      throw AssemblyError("assemble: non-finite potential at interior node " +
                          std::to_string(i + 1) + " (r = " + std::to_string(double(h.r[i])) +
                          ")");
    }
    h.matrix(i, i) += v;
  }
  return h;
}

EigenPairs eigensolve(const DiscreteHamiltonian& h, bool with_vectors) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      h.matrix, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw SolverError("eigensolve: implicit QR iteration did not converge for a " +
                      std::to_string(h.dimension()) + "x" + std::to_string(h.dimension()) +
                      " matrix (limit " +
                      std::to_string(Eigen::SelfAdjointEigenSolver<Matrix>::m_maxIterations) +
                      " sweeps per eigenvalue, asymmetry " +
                      std::to_string(double(h.asymmetry)) + ")");
  }
  EigenPairs pairs;
  pairs.values = solver.eigenvalues();
  if (with_vectors) pairs.vectors = solver.eigenvectors();
  return pairs;
}

std::vector<Real> eigen_residuals(const DiscreteHamiltonian& h, const EigenPairs& pairs) {
  std::vector<Real> out;
  out.reserve(pairs.vectors.cols());
  for (Eigen::Index k = 0; k < pairs.vectors.cols(); ++k) {
    const Vector v = pairs.vectors.col(k);
    out.push_back((h.matrix * v - pairs.values[k] * v).norm());
  }
  return out;
}

Real orthonormality_defect(const EigenPairs& pairs) {
  const Eigen::Index m = pairs.vectors.cols();
  const Matrix gram = pairs.vectors.transpose() * pairs.vectors;
  return (gram - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
}

Real spectral_norm(const EigenPairs& pairs) {
  return std::max(std::abs(pairs.values.minCoeff()), std::abs(pairs.values.maxCoeff()));
}

int count_nodes(const std::vector<Real>& psi, Real floor) {
  Real peak = 0;
  for (Real v : psi) peak = std::max(peak, std::abs(v));
  const Real cut = floor * peak;
  int nodes = 0;
  int last_sign = 0;
  for (Real v : psi) {
    if (std::abs(v) <= cut) continue;
    const int sign = v > 0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

std::vector<BoundState> extract_states(const DiscreteHamiltonian& h, const EigenPairs& pairs,
                                       int max_n, Diagnostics* diag) {
  if (pairs.vectors.cols() != pairs.values.size()) {
    throw std::invalid_argument("extract_states: eigenvectors are required");
  }
  const int ell = h.channel.ell;
  const Real k = Real(h.grid_order) * (h.grid_order + 1);
  std::vector<BoundState> states;
  for (Eigen::Index idx = 0; idx < pairs.values.size(); ++idx) {
    const Real e = pairs.values[idx];
    if (!(e < -kBoundThreshold)) break;
    const int n = ell + 1 + static_cast<int>(idx);
    if (n > max_n) break;

    BoundState s;
    s.energy = e;
    s.n = n;
    s.ell = ell;
    s.r_samples = h.r;
    s.psi_samples.resize(h.dimension());
    // psi(r_j) = A_j P_N(x_j) / sqrt(r'(x_j)); the quadrature norm is then
    // (2 / N(N+1)) sum_j A_j^2.
    const Real scale = std::sqrt(2 / k) * pairs.vectors.col(idx).norm();
    for (int j = 0; j < h.dimension(); ++j) {
      s.psi_samples[j] = pairs.vectors(j, idx) * h.legendre[j] / std::sqrt(h.dr[j]) / scale;
    }
    Real peak = 0;
    for (Real v : s.psi_samples) peak = std::max(peak, std::abs(v));
    for (Real v : s.psi_samples) {
      if (std::abs(v) > 1e-8L * peak) {
        if (v < 0) {
          for (Real& w : s.psi_samples) w = -w;
        }
        break;
      }
    }
    s.nodes = count_nodes(s.psi_samples);
    s.node_check = s.nodes == n - ell - 1;
    if (!s.node_check) {
      warn(diag, spectroscopic_label(n, ell) + ": found " + std::to_string(s.nodes) +
                     " radial nodes, expected " + std::to_string(n - ell - 1) +
                     "; state is unconverged (box too small or level near threshold)");
    }
    states.push_back(std::move(s));
  }
  const int expected = max_n - ell;
  if (static_cast<int>(states.size()) < expected && expected > 0) {
    warn(diag, "l = " + std::to_string(ell) + ": " + std::to_string(states.size()) + " of " +
                   std::to_string(expected) + " requested states are bound");
  }
  return states;
}

char ell_letter(int ell) {
  static constexpr char letters[] = "spdfghiklmnoqrtuvwxyz";
  if (ell < 0 || ell >= static_cast<int>(sizeof(letters) - 1)) {
    throw std::invalid_argument("no spectroscopic letter for l = " + std::to_string(ell));
  }
  return letters[ell];
}

std::string spectroscopic_label(int n, int ell) {
  return std::to_string(n) + ell_letter(ell);
}

std::pair<int, int> parse_label(const std::string& label) {
  std::size_t pos = 0;
  while (pos < label.size() && std::isdigit(static_cast<unsigned char>(label[pos]))) ++pos;
  if (pos == 0 || pos + 1 != label.size()) {
    throw std::invalid_argument("malformed state label '" + label + "'");
  }
  const int n = std::stoi(label.substr(0, pos));
  for (int ell = 0; ell < n; ++ell) {
    if (ell_letter(ell) == label[pos]) return {n, ell};
  }
  throw std::invalid_argument("state label '" + label + "' has l >= n");
}

const CollocationGrid& cached_grid(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const CollocationGrid>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<const CollocationGrid>(build_grid(order));
  return *slot;
}

ChannelSolution solve_channel(const ChannelSpec& channel, const SolverParams& params,
                              int max_n, Diagnostics* diag) {
  const RadialMap map(params.r_max, params.alpha);
  ChannelSolution out{assemble(channel, cached_grid(params.order), map), {}, {}};
  out.pairs = eigensolve(out.hamiltonian);
  out.states = extract_states(out.hamiltonian, out.pairs, max_n, diag);
  return out;
}

std::vector<Real> bound_energies(const ChannelSpec& channel, const SolverParams& params,
                                 int max_n) {
  const RadialMap map(params.r_max, params.alpha);
  const auto h = assemble(channel, cached_grid(params.order), map);
  const auto pairs = eigensolve(h, false);
  std::vector<Real> out;
  for (Eigen::Index k = 0; k < pairs.values.size(); ++k) {
    if (!(pairs.values[k] < -kBoundThreshold) || channel.ell + 1 + k > max_n) break;
    out.push_back(pairs.values[k]);
  }
  return out;
}

}  // namespace gps
