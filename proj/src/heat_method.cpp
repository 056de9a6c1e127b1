#include "heatcut/heat_method.hpp"

#include <algorithm>
#include <cmath>

#include "heatcut/errors.hpp"
#include "heatcut/functionals.hpp"

namespace heatcut {

namespace {

void check_gamma(double gamma) {
  require(gamma > 0.0 && gamma <= 1.0, Errc::bad_range, "gamma must lie in (0, 1]");
}

Eigen::ArrayXd condition_weights(const SpectralBasis& basis, double t, double gamma) {
  const Eigen::ArrayXd& lam = basis.lambdas().array();
  return (1.0 - lam / gamma) * (-t * lam).exp();
}

}  // namespace

double trace_condition(const SpectralBasis& basis, double t, double gamma) {
  require(t >= 0.0, Errc::bad_range, "t must be nonnegative");
  check_gamma(gamma);
  return condition_weights(basis, t, gamma).sum();
}

Eigen::VectorXd per_state_diagnostic(const SpectralBasis& basis, double t, double gamma) {
  require(t >= 0.0, Errc::bad_range, "t must be nonnegative");
  check_gamma(gamma);
  Eigen::VectorXd weights = condition_weights(basis, t, gamma).matrix();
  Eigen::VectorXd terms = basis.psi().cwiseProduct(basis.psi()) * weights;
  return basis.chain()->pi().cwiseProduct(terms);
}

std::vector<double> heat_time_grid(const SpectralBasis& basis, double gamma) {
  check_gamma(gamma);
  const double log_n = std::log(std::max(basis.n(), 2));
  const int j_max = static_cast<int>(std::ceil(std::log2(log_n))) + 1;
  std::vector<double> grid;
  for (int j = -3; j <= j_max; ++j) grid.push_back(std::exp2(j) / gamma);
  grid.push_back(log_n / gamma);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

TraceCertificate make_certificate(const SpectralBasis& basis, double t, double gamma, double delta_cap) {
  require(delta_cap > 0.0, Errc::bad_range, "Delta must be positive");
  TraceCertificate cert;
  cert.t = t;
  cert.gamma = gamma;
  cert.delta_cap = delta_cap;
  cert.trace_value = trace_condition(basis, t, gamma);
  cert.holds = cert.trace_value >= delta_cap - 1e-12;
  cert.delta_below_one = delta_cap < 1.0;
  return cert;
}

TraceCertificate best_certificate(const SpectralBasis& basis, double gamma, double delta_cap) {
  TraceCertificate best;
  bool first = true;
  for (double t : heat_time_grid(basis, gamma)) {
    TraceCertificate cert = make_certificate(basis, t, gamma, delta_cap);
    if (first || cert.trace_value > best.trace_value) {
      best = cert;
      first = false;
    }
  }
  return best;
}

SparseWitness heat_witness_at(const SpectralBasis& basis, double t, int x0) {
  require(t >= 0.0, Errc::bad_range, "t must be nonnegative");
  require(x0 >= 0 && x0 < basis.n(), Errc::bad_range, "state index out of range");
  Eigen::VectorXd coeffs =
      (-0.5 * t * basis.lambdas().array()).exp() * basis.psi().row(x0).transpose().array();
  Eigen::VectorXd values = basis.synthesize(coeffs);
  // Heat flow from the nonnegative phi_x0 stays nonnegative; zero out
  // roundoff-scale negatives so downstream nonnegativity checks are exact.
  double floor = -1e-10 * std::max(1.0, values.cwiseAbs().maxCoeff());
  for (Eigen::Index x = 0; x < values.size(); ++x) {
    if (values(x) < 0.0 && values(x) > floor) values(x) = 0.0;
  }
  SparseWitness w;
  w.g = StateFunction(basis.chain(), std::move(values));
  w.mu_g = mu(w.g);
  w.phi_g = phi(w.g);
  w.origin = WitnessOrigin::heat;
  w.x0 = x0;
  w.t = t;
  return w;
}

SparseWitness heat_witness(const SpectralBasis& basis, double t, double gamma, double delta_cap) {
  require(t > 0.0, Errc::bad_range, "t must be positive");
  TraceCertificate cert = make_certificate(basis, t, gamma, delta_cap);
  if (!cert.holds) {
    fail(Errc::certificate_fails,
         "trace condition " + std::to_string(cert.trace_value) + " is below Delta = " +
             std::to_string(delta_cap) + "; no witness guarantee");
  }
  // Maximize the expectation term <H_{t/2} phi_x, H_{t/2} phi_x>
  //   - (1/gamma) <H_{t/2} phi_x, L H_{t/2} phi_x>,
  // i.e. the diagnostic normalized by pi(x). Its pi-average equals the trace
  // value, so the maximum reaches Delta whenever the certificate holds.
  Eigen::VectorXd diag = per_state_diagnostic(basis, t, gamma);
  Eigen::VectorXd terms = diag.cwiseQuotient(basis.chain()->pi());
  int x0 = 0;
  terms.maxCoeff(&x0);
  return heat_witness_at(basis, t, x0);
}

NullityWitnessResult nullity_witness(const SpectralBasis& basis, double gamma, double alpha) {
  check_gamma(gamma);
  require(alpha > 0.0 && alpha <= 1.0 / 3.0, Errc::bad_range, "alpha must lie in (0, 1/3]");
  const int n = basis.n();
  require(n >= 2, Errc::bad_range, "need at least two states");

  NullityWitnessResult out;
  out.alpha = alpha;
  out.k = analytic_nullity(basis, alpha * gamma);
  const double n_alpha = std::pow(static_cast<double>(n), alpha);
  if (static_cast<double>(out.k) < n_alpha / std::log(n)) {
    fail(Errc::precondition_fails,
         "nullity " + std::to_string(out.k) + " is below n^alpha / ln n; fall back to enumeration");
  }
  const double delta_cap = static_cast<double>(out.k) / (4.0 * n_alpha);
  out.mu_bound = 1.0 / delta_cap;
  out.certificate = best_certificate(basis, gamma, delta_cap);
  out.witness = heat_witness(basis, out.certificate.t, gamma, delta_cap);
  return out;
}

ProfileBoundResult profile_bound(const SpectralBasis& basis, int k, double a_param) {
  const int n = basis.n();
  require(n >= 2, Errc::bad_range, "need at least two states");
  require(a_param >= 3.0, Errc::bad_range, "A must be at least 3");
  require(k >= 2 && k <= n, Errc::bad_range, "k must lie in [2, n]");

  const double log_k_n = std::log(n) / std::log(k);
  const double alpha = 1.0 / (a_param * log_k_n);
  // lambda_k = 0 cannot occur for an irreducible chain; floor roundoff so
  // gamma stays positive.
  const double lambda_k = std::max(basis.lambdas()(k - 1), 1e-13);
  const double gamma = a_param * lambda_k * log_k_n;
  if (gamma > 1.0) {
    fail(Errc::gamma_out_of_range,
         "A lambda_k log_k n = " + std::to_string(gamma) + " exceeds 1; the trace method needs gamma <= 1");
  }

  ProfileBoundResult out;
  out.k = k;
  out.a_param = a_param;
  out.alpha = alpha;
  out.gamma = gamma;
  out.phi_bound = gamma;
  out.mu_bound = 4.0 * std::pow(static_cast<double>(k), -1.0 + 1.0 / a_param);

  // alpha * gamma = lambda_k, so the nullity at that threshold is at least k.
  NullityWitnessResult inner = nullity_witness(basis, gamma, alpha);
  out.k_eff = inner.k;
  out.certificate = inner.certificate;
  out.witness = std::move(inner.witness);
  return out;
}

}  // namespace heatcut
