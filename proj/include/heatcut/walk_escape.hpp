#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "heatcut/chain.hpp"

namespace heatcut {

/// Spectrum of the Dirichlet Laplacian L_S = id - K_S, where K_S masks every
/// transition touching the complement of S. Kept as a whole-space operator:
/// states outside S contribute eigenvalue-1 directions. coeffs expands
/// phi'_S = 1_S / sqrt(pi(S)) in the eigenbasis; sum coeffs^2 = 1.
struct DirichletSpectrum {
  ReversibleChainPtr chain;
  std::vector<int> set;
  Eigen::VectorXd lambdas;   // ascending
  Eigen::MatrixXd basis;     // pi-orthonormal eigenvectors, by column
  Eigen::VectorXd coeffs;
};

DirichletSpectrum dirichlet_spectrum(ReversibleChainPtr chain, const std::vector<int>& set);

/// Phi[S] = sum_i c_i^2 lambda_i; agrees with phi_set.
double phi_from_spectrum(const DirichletSpectrum& spectrum);

/// C(t, S) = sum_i c_i^2 exp(-t lambda_i), the probability a continuous-time
/// walk of duration t started from pi|S never leaves S.
double exact_stay_probability(const DirichletSpectrum& spectrum, double t);

struct McEstimate {
  double estimate = 0.0;
  double stderr_value = 0.0;
  std::int64_t walks = 0;
};

/// Simulates walks: start x ~ pi conditioned on S, tau ~ Poisson(t) kernel
/// steps, success iff every visited state lies in S. Per-walk RNG substreams
/// make the result independent of scheduling.
McEstimate mc_stay_probability(const ReversibleChain& chain, const std::vector<int>& set, double t,
                               std::int64_t walks, std::uint64_t seed);

struct EscapeReport {
  double t = 0.0;
  std::vector<int> set;
  double exact = 0.0;
  double bound = 0.0;  // exp(-t Phi[S])
  std::optional<McEstimate> mc;
};

EscapeReport escape_report(ReversibleChainPtr chain, const std::vector<int>& set, double t,
                           std::int64_t walks = 0, std::uint64_t seed = 0);

struct BoundCheck {
  int n = 0;
  std::int64_t assertions = 0;
  double min_slack = 0.0;        // min over (S, t) of exact - bound
  std::vector<int> argmin_set;
  double argmin_t = 0.0;
  std::int64_t equality_cases = 0;  // slack within 1e-9
  bool all_hold = false;
};

/// Exhaustive check of exact >= exp(-t Phi[S]) - 1e-9 over all nonempty
/// subsets and the given times. n must not exceed exhaustive_cap.
BoundCheck verify_bound(ReversibleChainPtr chain, const std::vector<double>& t_grid,
                        int exhaustive_cap = 10);

}  // namespace heatcut
