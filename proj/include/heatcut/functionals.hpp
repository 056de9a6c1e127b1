#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "heatcut/chain.hpp"
#include "heatcut/spectral.hpp"
#include "heatcut/state_function.hpp"

namespace heatcut {

/// Analytic conductance <f, Lf> / <f, f>. Lies in [0, 2].
double phi(const StateFunction& f);

/// Analytic sparsity ||f||_1^2 / ||f||_2^2 under pi-weighted norms; in (0, 1].
double mu(const StateFunction& f);

/// Set conductance: escaping one-step stationary mass divided by pi(S).
/// Agrees with phi(indicator(S)).
double phi_set(const ReversibleChain& chain, const std::vector<int>& set);

/// One evaluated point of a profile. For the conductance and supp-variant
/// oracles the value is an exact minimum; the mu variant is a constructive
/// upper bound only (exact = false). Empty witness with +inf value means no
/// feasible candidate existed within the budget.
struct ProfilePoint {
  double r = 0.0;
  double value = 0.0;
  bool exact = true;
  std::vector<int> witness_set;                  // conductance oracle / supp oracle support
  std::optional<Eigen::VectorXd> witness_function;  // supp and mu variants
  bool feasible() const { return !witness_set.empty() || witness_function.has_value(); }
};

/// Exact Phi_G(r) = min{ Phi[S] : pi(S) <= r } by subset enumeration.
/// Ties break to the lexicographically smallest index set. n <= 20.
ProfilePoint conductance_profile_oracle(const ReversibleChain& chain, double r);

enum class SpectralProfileVariant { supp, mu };

/// supp: exact Lambda_G(r) by enumerating supports and taking the smallest
/// Dirichlet eigenvalue on each (n <= 16); the witness is the nonnegative
/// principal eigenvector. mu: upper bound on Lambda'_G(r) from the best
/// heat-kernel witness with mu[g] <= r, flagged exact = false.
ProfilePoint spectral_profile_oracle(const ReversibleChainPtr& chain, double r, SpectralProfileVariant variant);
ProfilePoint spectral_profile_oracle(const SpectralBasis& basis, double r, SpectralProfileVariant variant);

}  // namespace heatcut
