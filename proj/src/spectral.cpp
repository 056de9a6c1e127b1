#include "heatcut/spectral.hpp"

#include <cmath>

#include "heatcut/errors.hpp"

namespace heatcut {

SpectralBasis decompose(ReversibleChainPtr chain) {
  require(chain != nullptr, Errc::bad_range, "null chain");
  const int n = chain->n();
  const Eigen::VectorXd& pi = chain->pi();
  const Eigen::MatrixXd& k = chain->kernel();

  // Detailed balance gives K(x,y) sqrt(pi(x)/pi(y)) = sqrt(K(x,y) K(y,x)),
  // so the conjugated Laplacian can be built exactly symmetric.
  Eigen::MatrixXd sym(n, n);
  for (int x = 0; x < n; ++x) {
    sym(x, x) = 1.0 - k(x, x);
    for (int y = x + 1; y < n; ++y) {
      double off = -std::sqrt(k(x, y) * k(y, x));
      sym(x, y) = off;
      sym(y, x) = off;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  require(solver.info() == Eigen::Success, Errc::eigensolver_failure, "dense eigensolver failed");

  Eigen::VectorXd lambdas = solver.eigenvalues();
  Eigen::VectorXd inv_sqrt_pi = pi.array().sqrt().inverse();
  Eigen::MatrixXd psi = inv_sqrt_pi.asDiagonal() * solver.eigenvectors();

  // Canonical sign: largest-magnitude entry positive, for reproducible output.
  for (int i = 0; i < n; ++i) {
    int idx = 0;
    psi.col(i).cwiseAbs().maxCoeff(&idx);
    if (psi(idx, i) < 0.0) psi.col(i) = -psi.col(i);
  }

  require(lambdas(0) >= -1e-9 && lambdas(n - 1) <= 2.0 + 1e-9, Errc::eigensolver_failure,
          "spectrum escapes [0, 2]");
  // lambda_1 is exactly 0 for an irreducible chain; pin it.
  lambdas(0) = std::max(lambdas(0), 0.0);

  Eigen::MatrixXd lpsi = psi - k * psi;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd res = lpsi.col(i) - lambdas(i) * psi.col(i);
    double norm = std::sqrt(pi_norm2_sq(pi, res));
    require(norm <= 1e-8, Errc::eigensolver_failure, "eigenpair residual exceeds 1e-8");
  }

  SpectralBasis basis;
  basis.chain_ = std::move(chain);
  basis.lambdas_ = std::move(lambdas);
  basis.weighted_ = pi.asDiagonal() * psi;
  basis.psi_ = std::move(psi);
  return basis;
}

Eigen::VectorXd heat_apply(const SpectralBasis& basis, double t, const Eigen::VectorXd& f) {
  require(t >= 0.0, Errc::bad_range, "heat time must be nonnegative");
  require(f.size() == basis.n(), Errc::bad_range, "function length does not match basis");
  Eigen::VectorXd coeffs = basis.coefficients(f);
  coeffs.array() *= (-t * basis.lambdas().array()).exp();
  Eigen::VectorXd out = basis.synthesize(coeffs);
  if ((f.array() >= 0.0).all()) {
    double floor = -1e-10 * std::max(1.0, out.cwiseAbs().maxCoeff());
    for (Eigen::Index x = 0; x < out.size(); ++x) {
      if (out(x) < 0.0 && out(x) > floor) out(x) = 0.0;
    }
  }
  return out;
}

StateFunction heat_apply(const SpectralBasis& basis, double t, const StateFunction& f) {
  require(f.chain == basis.chain(), Errc::bad_range, "function bound to a different chain");
  return {basis.chain(), heat_apply(basis, t, f.values)};
}

double heat_trace(const SpectralBasis& basis, double t) {
  require(t >= 0.0, Errc::bad_range, "heat time must be nonnegative");
  return (-t * basis.lambdas().array()).exp().sum();
}

double laplacian_heat_trace(const SpectralBasis& basis, double t) {
  require(t >= 0.0, Errc::bad_range, "heat time must be nonnegative");
  return (basis.lambdas().array() * (-t * basis.lambdas().array()).exp()).sum();
}

int analytic_nullity(const SpectralBasis& basis, double eta) {
  require(eta >= 0.0, Errc::bad_range, "eta must be nonnegative");
  return static_cast<int>((basis.lambdas().array() <= eta + 1e-12).count());
}

}  // namespace heatcut
