#pragma once

#include <Eigen/Dense>

#include "heatcut/chain.hpp"
#include "heatcut/state_function.hpp"

namespace heatcut {

/// Eigendecomposition of the Laplacian L = id - K, orthonormal under the
/// pi-inner product. Eigenvalues ascend with lambda_1 = 0 and the first
/// eigenfunction constant. Immutable; heat operators are applied through it.
class SpectralBasis {
 public:
  const ReversibleChainPtr& chain() const { return chain_; }
  int n() const { return static_cast<int>(lambdas_.size()); }
  const Eigen::VectorXd& lambdas() const { return lambdas_; }
  /// Column i is psi_i.
  const Eigen::MatrixXd& psi() const { return psi_; }
  StateFunction eigenfunction(int i) const { return {chain_, psi_.col(i)}; }

  /// Coefficients <f, psi_i> of f in the basis.
  Eigen::VectorXd coefficients(const Eigen::VectorXd& f) const { return weighted_.transpose() * f; }
  /// Sum of c_i psi_i.
  Eigen::VectorXd synthesize(const Eigen::VectorXd& coeffs) const { return psi_ * coeffs; }

  friend SpectralBasis decompose(ReversibleChainPtr chain);

 private:
  ReversibleChainPtr chain_;
  Eigen::VectorXd lambdas_;
  Eigen::MatrixXd psi_;       // pi-orthonormal eigenfunctions, by column
  Eigen::MatrixXd weighted_;  // diag(pi) * psi, so coefficients are one GEMV
};

/// Symmetrizes L by conjugation with diag(sqrt(pi)), runs a dense symmetric
/// eigensolver, and maps back. Throws EigensolverFailure if residuals exceed
/// 1e-8 or the spectrum leaves [0, 2] by more than 1e-9.
SpectralBasis decompose(ReversibleChainPtr chain);

/// H_t f = sum_i exp(-t lambda_i) <f, psi_i> psi_i. Roundoff-scale negative
/// entries are zeroed when f is nonnegative, since the heat operator is
/// positivity-preserving in exact arithmetic.
StateFunction heat_apply(const SpectralBasis& basis, double t, const StateFunction& f);
Eigen::VectorXd heat_apply(const SpectralBasis& basis, double t, const Eigen::VectorXd& f);

/// tr(H_t) = sum_i exp(-t lambda_i).
double heat_trace(const SpectralBasis& basis, double t);

/// tr(L H_t) = sum_i lambda_i exp(-t lambda_i).
double laplacian_heat_trace(const SpectralBasis& basis, double t);

/// #{i : lambda_i <= eta}, with absolute slack 1e-12 on the threshold.
int analytic_nullity(const SpectralBasis& basis, double eta);

}  // namespace heatcut
