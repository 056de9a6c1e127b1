#pragma once

#include <Eigen/Dense>
#include <memory>
#include <variant>

#include "heatcut/graph.hpp"

namespace heatcut {

/// Tolerances used when validating chains at construction.
inline constexpr double kRowSumTol = 1e-12;
inline constexpr double kStationaryTol = 1e-9;
inline constexpr double kDetailedBalanceTol = 1e-9;

/// Irreducible Markov chain with row-stochastic kernel and stationary
/// distribution; not necessarily reversible. Immutable after construction.
class DirectedChain {
 public:
  static std::shared_ptr<const DirectedChain> create(Eigen::VectorXd pi, Eigen::MatrixXd kernel);

  int n() const { return static_cast<int>(kernel_.rows()); }
  const Eigen::VectorXd& pi() const { return pi_; }
  const Eigen::MatrixXd& kernel() const { return kernel_; }

 private:
  DirectedChain(Eigen::VectorXd pi, Eigen::MatrixXd kernel)
      : pi_(std::move(pi)), kernel_(std::move(kernel)) {}
  Eigen::VectorXd pi_;
  Eigen::MatrixXd kernel_;
};

/// Reversible chain: additionally satisfies detailed balance
/// pi(x) K(x,y) = pi(y) K(y,x), checked at construction.
class ReversibleChain {
 public:
  static std::shared_ptr<const ReversibleChain> create(Eigen::VectorXd pi, Eigen::MatrixXd kernel);

  int n() const { return static_cast<int>(kernel_.rows()); }
  const Eigen::VectorXd& pi() const { return pi_; }
  const Eigen::MatrixXd& kernel() const { return kernel_; }

  /// pi(S) for a set of state indices.
  double measure(const std::vector<int>& set) const;

 private:
  ReversibleChain(Eigen::VectorXd pi, Eigen::MatrixXd kernel)
      : pi_(std::move(pi)), kernel_(std::move(kernel)) {}
  Eigen::VectorXd pi_;
  Eigen::MatrixXd kernel_;
};

using ReversibleChainPtr = std::shared_ptr<const ReversibleChain>;
using DirectedChainPtr = std::shared_ptr<const DirectedChain>;
using AnyChain = std::variant<ReversibleChainPtr, DirectedChainPtr>;

/// Accumulates the weight matrix (duplicates summed), checks for isolated
/// states and strong connectivity, and normalizes rows. Undirected input
/// yields a ReversibleChain with pi proportional to weighted degree; directed
/// input yields a DirectedChain with pi from stationary_distribution().
AnyChain from_graph(const WeightedGraph& g);

/// Stationary distribution of an irreducible row-stochastic kernel: power
/// iteration on the transpose (tolerance 1e-12, budget 1e6 sweeps) with a
/// direct dense solve as fallback for n <= 2000. Max-norm residual of the
/// result is at most 1e-10.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& kernel);

/// Additive reversibilization K = (K' + K'*)/2 with K'* the pi-adjoint.
/// Preserves pi and every Laplacian quadratic form <f, Lf>.
ReversibleChainPtr reversibilize(const DirectedChain& chain);

/// Loads a graph file and returns a reversible chain, reversibilizing
/// directed inputs. Used by the CLI and the Python bindings.
struct PreparedChain {
  ReversibleChainPtr chain;
  bool reversibilized = false;
  int edge_count = 0;
  bool directed_input = false;
};
PreparedChain prepare_chain(const WeightedGraph& g);

}  // namespace heatcut
