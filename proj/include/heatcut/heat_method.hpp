#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "heatcut/spectral.hpp"
#include "heatcut/state_function.hpp"

namespace heatcut {

/// Evaluation of the trace criterion tr(H_t) - (1/gamma) tr(L H_t) >= Delta.
struct TraceCertificate {
  double t = 0.0;
  double gamma = 1.0;
  double delta_cap = 1.0;
  double trace_value = 0.0;
  bool holds = false;
  bool delta_below_one = false;  // Delta < 1 is outside the stated range; accepted with this flag
};

enum class WitnessOrigin { heat, enumeration };

/// Nonnegative (for heat origin) function certifying analytic sparsity and
/// conductance bounds. mu_g and phi_g are recomputable from g.
struct SparseWitness {
  StateFunction g;
  double mu_g = 0.0;
  double phi_g = 0.0;
  WitnessOrigin origin = WitnessOrigin::heat;
  std::optional<int> x0;
  std::optional<double> t;
};

/// sum_i (1 - lambda_i/gamma) exp(-t lambda_i).
double trace_condition(const SpectralBasis& basis, double t, double gamma);

/// d(x) = pi(x) sum_i (1 - lambda_i/gamma) exp(-t lambda_i) psi_i(x)^2,
/// the per-state split of the trace criterion; sums to trace_condition.
Eigen::VectorXd per_state_diagnostic(const SpectralBasis& basis, double t, double gamma);

/// Candidate heat times {2^j/gamma : j = -3 .. ceil(log2 ln n) + 1} together
/// with the canonical (1/gamma) ln n, ascending and deduplicated.
std::vector<double> heat_time_grid(const SpectralBasis& basis, double gamma);

TraceCertificate make_certificate(const SpectralBasis& basis, double t, double gamma, double delta_cap);

/// Best certificate over heat_time_grid: maximal trace value, ties to the
/// smaller t.
TraceCertificate best_certificate(const SpectralBasis& basis, double gamma, double delta_cap);

/// g = H_{t/2} phi_x0 with phi_x0 = 1_x0 / pi(x0), plus its statistics.
SparseWitness heat_witness_at(const SpectralBasis& basis, double t, int x0);

/// The constructive step: requires trace_condition(t, gamma) >= delta_cap
/// (throws CertificateFails otherwise), picks the state maximizing the
/// pi-normalized diagnostic, and returns g = H_{t/2} phi_x0. The output
/// satisfies mu[g] <= 1/delta_cap and phi[g] <= gamma.
SparseWitness heat_witness(const SpectralBasis& basis, double t, double gamma, double delta_cap);

struct NullityWitnessResult {
  SparseWitness witness;
  TraceCertificate certificate;
  int k = 0;          // nullity_{alpha gamma}(L)
  double alpha = 0.0;
  double mu_bound = 0.0;  // 4 n^alpha / k
};

/// Large-nullity parameterization: with k = nullity_{alpha gamma}(L) and
/// k >= n^alpha / ln n, certifies Delta = k/(4 n^alpha) and produces a
/// witness with mu[g] <= 4 n^alpha / k and phi[g] <= gamma.
NullityWitnessResult nullity_witness(const SpectralBasis& basis, double gamma, double alpha);

struct ProfileBoundResult {
  SparseWitness witness;
  TraceCertificate certificate;
  int k = 0;
  int k_eff = 0;          // nullity at the lambda_k threshold; >= k
  double a_param = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;     // A lambda_k log_k n
  double mu_bound = 0.0;  // 4 k^(-1 + 1/A)
  double phi_bound = 0.0; // gamma
};

/// Profile parameterization: alpha = 1/(A log_k n), gamma = A lambda_k log_k n.
/// Requires A >= 3, 2 <= k <= n, and gamma <= 1 (GammaOutOfRange otherwise).
ProfileBoundResult profile_bound(const SpectralBasis& basis, int k, double a_param);

}  // namespace heatcut
