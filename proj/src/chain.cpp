#include "heatcut/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "heatcut/errors.hpp"

namespace heatcut {

namespace {

// Forward- and reverse-reachability from state 0 over positive kernel entries.
void check_strongly_connected(const Eigen::MatrixXd& weights) {
  const int n = static_cast<int>(weights.rows());
  auto reachable = [&](bool reverse) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < n; ++y) {
        double w = reverse ? weights(y, x) : weights(x, y);
        if (w > 0.0 && !seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          ++count;
          stack.push_back(y);
        }
      }
    }
    return count == n;
  };
  if (!reachable(false) || !reachable(true)) {
    fail(Errc::not_irreducible, "chain is not irreducible (graph is not strongly connected)");
  }
}

Eigen::MatrixXd accumulate_weights(const WeightedGraph& g) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(g.n, g.n);
  for (const auto& e : g.edges) {
    w(e.source, e.target) += e.weight;
    // An undirected self-loop contributes its weight once.
    if (!g.directed && e.source != e.target) w(e.target, e.source) += e.weight;
  }
  return w;
}

void validate_common(const Eigen::VectorXd& pi, const Eigen::MatrixXd& kernel) {
  const auto n = kernel.rows();
  require(n > 0 && kernel.cols() == n && pi.size() == n, Errc::bad_range, "chain dimensions disagree");
  require((pi.array() > 0.0).all(), Errc::bad_range, "pi must be strictly positive");
  require(std::abs(pi.sum() - 1.0) <= 1e-9, Errc::bad_range, "pi must sum to 1");
  require(kernel.minCoeff() >= 0.0 && kernel.maxCoeff() <= 1.0 + kRowSumTol, Errc::bad_range,
          "kernel entries must lie in [0, 1]");
  double row_err = (kernel.rowwise().sum().array() - 1.0).abs().maxCoeff();
  require(row_err <= kRowSumTol, Errc::bad_range, "kernel rows must sum to 1");
  double stat_err = ((pi.transpose() * kernel).transpose() - pi).cwiseAbs().maxCoeff();
  require(stat_err <= kStationaryTol, Errc::bad_range, "pi is not stationary for the kernel");
  check_strongly_connected(kernel);
}

}  // namespace

std::shared_ptr<const DirectedChain> DirectedChain::create(Eigen::VectorXd pi, Eigen::MatrixXd kernel) {
  validate_common(pi, kernel);
  return std::shared_ptr<const DirectedChain>(new DirectedChain(std::move(pi), std::move(kernel)));
}

ReversibleChainPtr ReversibleChain::create(Eigen::VectorXd pi, Eigen::MatrixXd kernel) {
  validate_common(pi, kernel);
  const auto n = kernel.rows();
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = x + 1; y < n; ++y) {
      double gap = std::abs(pi(x) * kernel(x, y) - pi(y) * kernel(y, x));
      require(gap <= kDetailedBalanceTol, Errc::bad_range, "kernel violates detailed balance");
    }
  }
  return ReversibleChainPtr(new ReversibleChain(std::move(pi), std::move(kernel)));
}

double ReversibleChain::measure(const std::vector<int>& set) const {
  double total = 0.0;
  for (int x : set) {
    require(x >= 0 && x < n(), Errc::bad_range, "state index out of range");
    total += pi_(x);
  }
  return total;
}

AnyChain from_graph(const WeightedGraph& g) {
  validate_graph(g);
  Eigen::MatrixXd w = accumulate_weights(g);
  Eigen::VectorXd out = w.rowwise().sum();
  for (int x = 0; x < g.n; ++x) {
    if (!(out(x) > 0.0)) fail(Errc::isolated_state, "state " + std::to_string(x) + " has no outgoing edge");
  }
  check_strongly_connected(w);
  Eigen::MatrixXd kernel = out.cwiseInverse().asDiagonal() * w;
  if (!g.directed) {
    Eigen::VectorXd pi = out / out.sum();
    return ReversibleChain::create(std::move(pi), std::move(kernel));
  }
  Eigen::VectorXd pi = stationary_distribution(kernel);
  return DirectedChain::create(std::move(pi), std::move(kernel));
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& kernel) {
  const auto n = kernel.rows();
  require(n > 0 && kernel.cols() == n, Errc::bad_range, "kernel must be square");
  const Eigen::MatrixXd kt = kernel.transpose();

  Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  constexpr double tol = 1e-12;
  constexpr long budget = 1'000'000;
  // Periodic kernels make the iterates cycle instead of converge; stop early
  // once the residual stops improving and use the direct solve instead.
  double best_residual = std::numeric_limits<double>::infinity();
  long since_improvement = 0;
  bool converged = false;
  for (long it = 0; it < budget; ++it) {
    Eigen::VectorXd next = kt * pi;
    next /= next.sum();
    double residual = (next - pi).cwiseAbs().maxCoeff();
    pi = std::move(next);
    if (residual <= tol) {
      converged = true;
      break;
    }
    if (residual < best_residual * (1.0 - 1e-6)) {
      best_residual = residual;
      since_improvement = 0;
    } else if (++since_improvement >= 1000) {
      break;
    }
  }

  if (!converged) {
    if (n > 2000) fail(Errc::no_convergence, "stationary distribution iteration did not converge");
    // Solve (K^T - I) pi = 0 with the last balance row replaced by sum = 1.
    Eigen::MatrixXd a = kt - Eigen::MatrixXd::Identity(n, n);
    a.row(n - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(n - 1) = 1.0;
    pi = a.partialPivLu().solve(rhs);
  }

  pi /= pi.sum();
  double residual = ((pi.transpose() * kernel).transpose() - pi).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-10) || !(pi.minCoeff() > 0.0)) {
    fail(Errc::no_convergence, "stationary distribution residual exceeds 1e-10");
  }
  return pi;
}

ReversibleChainPtr reversibilize(const DirectedChain& chain) {
  const int n = chain.n();
  const Eigen::VectorXd& pi = chain.pi();
  const Eigen::MatrixXd& k = chain.kernel();
  Eigen::MatrixXd adjoint(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      adjoint(x, y) = pi(y) * k(y, x) / pi(x);
    }
  }
  Eigen::MatrixXd sym = 0.5 * (k + adjoint);
  return ReversibleChain::create(pi, std::move(sym));
}

PreparedChain prepare_chain(const WeightedGraph& g) {
  PreparedChain out;
  out.edge_count = static_cast<int>(g.edges.size());
  out.directed_input = g.directed;
  AnyChain built = from_graph(g);
  if (std::holds_alternative<ReversibleChainPtr>(built)) {
    out.chain = std::get<ReversibleChainPtr>(built);
  } else {
    out.chain = reversibilize(*std::get<DirectedChainPtr>(built));
    out.reversibilized = true;
  }
  return out;
}

}  // namespace heatcut
