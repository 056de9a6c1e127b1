#pragma once

#include <Eigen/Dense>

#include "heatcut/chain.hpp"
#include "heatcut/errors.hpp"

namespace heatcut {

/// Real-valued function on the state space, bound to the chain whose
/// stationary distribution defines all inner products and norms.
struct StateFunction {
  ReversibleChainPtr chain;
  Eigen::VectorXd values;

  StateFunction() = default;
  StateFunction(ReversibleChainPtr c, Eigen::VectorXd v) : chain(std::move(c)), values(std::move(v)) {
    require(chain != nullptr, Errc::bad_range, "state function needs a chain");
    require(values.size() == chain->n(), Errc::bad_range, "state function length does not match chain");
    require(values.allFinite(), Errc::bad_range, "state function entries must be finite");
  }

  int n() const { return static_cast<int>(values.size()); }
};

inline StateFunction indicator(ReversibleChainPtr chain, const std::vector<int>& set) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(chain->n());
  for (int x : set) {
    require(x >= 0 && x < chain->n(), Errc::bad_range, "state index out of range");
    v(x) = 1.0;
  }
  return {std::move(chain), std::move(v)};
}

/// <f, g> = E_{x~pi}[f(x) g(x)].
inline double pi_dot(const Eigen::VectorXd& pi, const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
  return (pi.array() * f.array() * g.array()).sum();
}

inline double pi_norm1(const Eigen::VectorXd& pi, const Eigen::VectorXd& f) {
  return (pi.array() * f.array().abs()).sum();
}

inline double pi_norm2_sq(const Eigen::VectorXd& pi, const Eigen::VectorXd& f) {
  return (pi.array() * f.array().square()).sum();
}

inline double pi_mean(const Eigen::VectorXd& pi, const Eigen::VectorXd& f) { return pi.dot(f); }

inline double pi_dot(const StateFunction& f, const StateFunction& g) {
  return pi_dot(f.chain->pi(), f.values, g.values);
}
inline double pi_norm1(const StateFunction& f) { return pi_norm1(f.chain->pi(), f.values); }
inline double pi_norm2_sq(const StateFunction& f) { return pi_norm2_sq(f.chain->pi(), f.values); }
inline double pi_mean(const StateFunction& f) { return pi_mean(f.chain->pi(), f.values); }

/// <f, (id - K) f> under pi; valid for any row-stochastic kernel sharing pi,
/// reversible or not.
inline double dirichlet_form(const Eigen::VectorXd& pi, const Eigen::MatrixXd& kernel,
                             const Eigen::VectorXd& f) {
  Eigen::VectorXd lf = f - kernel * f;
  return pi_dot(pi, f, lf);
}

}  // namespace heatcut
