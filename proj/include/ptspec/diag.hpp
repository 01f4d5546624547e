#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ptspec/common.hpp"
#include "ptspec/potential.hpp"

namespace ptspec::diag {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

struct BasisConfig {
  int size = 100;
  double alpha = 1.0;
  /// Eigenvalues with |Im| < im_tol (1 + |lambda|) count as real.
  double im_tol = 1e-8;
  /// Cross-size stabilization threshold, relaxed to `stab_tol_high` above
  /// level `stab_switch_level`.
  double stab_tol = 1e-9;
  double stab_tol_high = 1e-6;
  int stab_switch_level = 5;
};

/// <m|x|n> in the oscillator basis phi_n(x) = sqrt(alpha) h_n(alpha x).
inline RealMatrix position_matrix(int size, double alpha) {
  if (size < 1) throw Error("position_matrix: size must be >= 1");
  if (!(alpha > 0.0)) throw Error("position_matrix: alpha must be positive");
  RealMatrix X = RealMatrix::Zero(size, size);
  const double c = 1.0 / (alpha * std::sqrt(2.0));
  for (int n = 0; n + 1 < size; ++n) X(n + 1, n) = X(n, n + 1) = c * std::sqrt(n + 1.0);
  return X;
}

/// <m|p^2|n>, p = -i d/dx.
inline RealMatrix momentum_squared_matrix(int size, double alpha) {
  if (size < 1) throw Error("momentum_squared_matrix: size must be >= 1");
  if (!(alpha > 0.0)) throw Error("momentum_squared_matrix: alpha must be positive");
  RealMatrix P2 = RealMatrix::Zero(size, size);
  const double a2 = alpha * alpha;
  for (int n = 0; n < size; ++n) {
    P2(n, n) = a2 * (2.0 * n + 1.0) / 2.0;
    if (n + 2 < size) P2(n, n + 2) = P2(n + 2, n) = -a2 * std::sqrt((n + 1.0) * (n + 2.0)) / 2.0;
  }
  return P2;
}

/// H = P^2 + s i^eps X^K + i b X. X^K is formed at size N_b + K and then
/// truncated, so every retained entry is the exact matrix element.
inline ComplexMatrix build_hamiltonian(const PotentialSpec& spec, const BasisConfig& basis) {
  spec.validate();
  const int K = spec.degree();
  if (basis.size < K + 2) throw Error("build_hamiltonian: basis size must be at least K + 2");
  const int N = basis.size;
  const RealMatrix Xw = position_matrix(N + K, basis.alpha);
  RealMatrix XK = RealMatrix::Identity(N + K, N + K);
  for (int k = 0; k < K; ++k) XK = XK * Xw;
  XK = 0.5 * (XK + XK.transpose()).eval();

  ComplexMatrix H = momentum_squared_matrix(N, basis.alpha).cast<cplx>();
  H += spec.leading_coefficient() * XK.topLeftCorner(N, N).cast<cplx>();
  if (spec.b != 0.0) H += (I * spec.b) * Xw.topLeftCorner(N, N).cast<cplx>();
  return H;
}

/// All eigenvalues of a dense complex matrix (Hessenberg reduction plus
/// shifted complex QR), sorted by real part.
inline std::vector<cplx> eigenvalues(const ComplexMatrix& A) {
  if (A.rows() < 1 || A.rows() != A.cols()) throw Error("eigenvalues: matrix must be square with order >= 1");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver;
  solver.setMaxIterations(30 * A.rows());
  solver.compute(A, false);
  if (solver.info() != Eigen::Success)
    throw Error("eigenvalues: QR iteration did not converge for order " + std::to_string(A.rows()));
  std::vector<cplx> out(solver.eigenvalues().data(), solver.eigenvalues().data() + A.rows());
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return out;
}

struct DiagResult {
  std::vector<EnergyLevel> levels;      // stabilized levels with n <= n_max
  std::vector<EnergyLevel> all_levels;  // every real level n <= n_max at the largest size
  std::vector<int> unstable;            // n <= n_max that did not stabilize
  std::vector<std::vector<double>> real_by_size;
  std::vector<std::string> warnings;
};

/// Diagonalizes at each basis size and keeps the numerically real
/// eigenvalues in ascending order; level n is the n-th of these at the
/// largest size. Its change is measured against the nearest real eigenvalue
/// of the previous size, so spurious truncation roots at the smaller size do
/// not shift the comparison.
inline DiagResult real_spectrum(const PotentialSpec& spec, const std::vector<int>& sizes, int n_max,
                                const BasisConfig& basis = {}) {
  if (sizes.size() < 3) throw Error("real_spectrum: need at least three basis sizes");
  if (!std::is_sorted(sizes.begin(), sizes.end())) throw Error("real_spectrum: sizes must be ascending");
  if (n_max < 0) throw Error("real_spectrum: n_max must be >= 0");

  DiagResult out;
  for (int size : sizes) {
    BasisConfig b = basis;
    b.size = size;
    std::vector<double> kept;
    for (const cplx& l : eigenvalues(build_hamiltonian(spec, b)))
      if (std::abs(l.imag()) < basis.im_tol * (1.0 + std::abs(l))) kept.push_back(l.real());
    out.real_by_size.push_back(std::move(kept));
  }

  const auto& last = out.real_by_size.back();
  const auto& prev = out.real_by_size[out.real_by_size.size() - 2];
  for (int n = 0; n <= n_max; ++n) {
    if (std::size_t(n) >= last.size() || prev.empty()) {
      out.unstable.push_back(n);
      continue;
    }
    double change = std::numeric_limits<double>::infinity();
    for (double p : prev) change = std::min(change, std::abs(last[n] - p));
    const EnergyLevel level{n, last[n], Method::diagonalization, change};
    out.all_levels.push_back(level);
    const double tol = n > basis.stab_switch_level ? basis.stab_tol_high : basis.stab_tol;
    if (change < tol * (1.0 + std::abs(last[n])))
      out.levels.push_back(level);
    else
      out.unstable.push_back(n);
  }
  for (int n : out.unstable) out.warnings.push_back("level n = " + std::to_string(n) + " did not stabilize");
  return out;
}

}  // namespace ptspec::diag
