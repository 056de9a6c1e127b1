#include "heatcut/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "heatcut/errors.hpp"
#include "heatcut/heat_method.hpp"
#include "heatcut/parallel.hpp"

namespace heatcut {

namespace {

constexpr double kBudgetSlack = 1e-12;

void check_nonzero(const StateFunction& f) {
  require(f.chain != nullptr, Errc::bad_range, "unbound state function");
  require(pi_norm2_sq(f) > 0.0, Errc::zero_function, "function is zero in L2(pi)");
}

std::vector<int> mask_to_set(std::uint32_t mask, int n) {
  std::vector<int> out;
  for (int x = 0; x < n; ++x) {
    if (mask & (1u << x)) out.push_back(x);
  }
  return out;
}

bool lex_less(std::uint32_t a, std::uint32_t b, int n) {
  // Lexicographic order on the sorted index sequences.
  for (int x = 0; x < n; ++x) {
    bool in_a = a & (1u << x);
    bool in_b = b & (1u << x);
    if (in_a != in_b) return in_a;
  }
  return false;
}

struct MaskBest {
  double value = std::numeric_limits<double>::infinity();
  std::uint32_t mask = 0;
  bool set = false;
};

void merge_best(MaskBest& into, const MaskBest& from, int n) {
  if (!from.set) return;
  if (!into.set || from.value < into.value ||
      (from.value == into.value && lex_less(from.mask, into.mask, n))) {
    into = from;
  }
}

}  // namespace

double phi(const StateFunction& f) {
  check_nonzero(f);
  return dirichlet_form(f.chain->pi(), f.chain->kernel(), f.values) / pi_norm2_sq(f);
}

double mu(const StateFunction& f) {
  check_nonzero(f);
  double l1 = pi_norm1(f);
  return l1 * l1 / pi_norm2_sq(f);
}

double phi_set(const ReversibleChain& chain, const std::vector<int>& set) {
  require(!set.empty(), Errc::empty_set, "set conductance needs a nonempty set");
  const int n = chain.n();
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int x : set) {
    require(x >= 0 && x < n, Errc::bad_range, "state index out of range");
    in[static_cast<std::size_t>(x)] = 1;
  }
  const Eigen::VectorXd& pi = chain.pi();
  const Eigen::MatrixXd& k = chain.kernel();
  double measure = 0.0;
  double escaping = 0.0;
  for (int x = 0; x < n; ++x) {
    if (!in[static_cast<std::size_t>(x)]) continue;
    measure += pi(x);
    for (int y = 0; y < n; ++y) {
      if (!in[static_cast<std::size_t>(y)]) escaping += pi(x) * k(x, y);
    }
  }
  return escaping / measure;
}

ProfilePoint conductance_profile_oracle(const ReversibleChain& chain, double r) {
  const int n = chain.n();
  require(n <= 20, Errc::too_large, "conductance profile oracle enumerates subsets; n <= 20 required");
  require(r > 0.0 && r <= 1.0, Errc::bad_range, "budget r must lie in (0, 1]");

  const Eigen::VectorXd& pi = chain.pi();
  // flow(x,y) = pi(x) K(x,y); cut(S) = pi(S) - sum_{x,y in S} flow(x,y).
  Eigen::MatrixXd flow = pi.asDiagonal() * chain.kernel();

  const std::uint32_t total = (1u << n) - 1u;
  std::vector<MaskBest> partial(static_cast<std::size_t>(chunk_count(total)));
  parallel_chunks(total, [&](int chunk, std::int64_t begin, std::int64_t end) {
    MaskBest best;
    std::vector<int> members;
    members.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = begin; i < end; ++i) {
      auto mask = static_cast<std::uint32_t>(i + 1);
      members.clear();
      double measure = 0.0;
      for (int x = 0; x < n; ++x) {
        if (mask & (1u << x)) {
          members.push_back(x);
          measure += pi(x);
        }
      }
      if (measure > r + kBudgetSlack) continue;
      double inside = 0.0;
      for (int x : members) {
        for (int y : members) inside += flow(x, y);
      }
      double value = (measure - inside) / measure;
      MaskBest cand{value, mask, true};
      merge_best(best, cand, n);
    }
    partial[static_cast<std::size_t>(chunk)] = best;
  });

  MaskBest best;
  for (const auto& p : partial) merge_best(best, p, n);

  ProfilePoint point;
  point.r = r;
  if (!best.set) {
    point.value = std::numeric_limits<double>::infinity();
    return point;
  }
  point.value = best.value;
  point.witness_set = mask_to_set(best.mask, n);
  return point;
}

namespace {

ProfilePoint supp_variant_oracle(const ReversibleChain& chain, double r) {
  const int n = chain.n();
  require(n <= 16, Errc::too_large, "supp-variant oracle enumerates supports; n <= 16 required");
  const Eigen::VectorXd& pi = chain.pi();
  const Eigen::MatrixXd& k = chain.kernel();

  // Symmetric conjugated Laplacian, shared across all S-blocks.
  Eigen::MatrixXd sym(n, n);
  for (int x = 0; x < n; ++x) {
    sym(x, x) = 1.0 - k(x, x);
    for (int y = x + 1; y < n; ++y) {
      double off = -std::sqrt(k(x, y) * k(y, x));
      sym(x, y) = off;
      sym(y, x) = off;
    }
  }

  const std::uint32_t total = (1u << n) - 1u;
  std::vector<MaskBest> partial(static_cast<std::size_t>(chunk_count(total)));
  parallel_chunks(total, [&](int chunk, std::int64_t begin, std::int64_t end) {
    MaskBest best;
    for (std::int64_t i = begin; i < end; ++i) {
      auto mask = static_cast<std::uint32_t>(i + 1);
      double measure = 0.0;
      std::vector<int> members;
      for (int x = 0; x < n; ++x) {
        if (mask & (1u << x)) {
          members.push_back(x);
          measure += pi(x);
        }
      }
      if (measure > r + kBudgetSlack) continue;
      const int m = static_cast<int>(members.size());
      Eigen::MatrixXd block(m, m);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) block(a, b) = sym(members[a], members[b]);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block, Eigen::EigenvaluesOnly);
      MaskBest cand{solver.eigenvalues()(0), mask, true};
      merge_best(best, cand, n);
    }
    partial[static_cast<std::size_t>(chunk)] = best;
  });

  MaskBest best;
  for (const auto& p : partial) merge_best(best, p, n);

  ProfilePoint point;
  point.r = r;
  if (!best.set) {
    point.value = std::numeric_limits<double>::infinity();
    return point;
  }
  point.value = best.value;
  point.witness_set = mask_to_set(best.mask, n);

  // Recover the principal eigenvector on the winning support; by
  // Perron-Frobenius its absolute value is also a minimizer.
  const auto& members = point.witness_set;
  const int m = static_cast<int>(members.size());
  Eigen::MatrixXd block(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) block(a, b) = sym(members[a], members[b]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
  Eigen::VectorXd u = solver.eigenvectors().col(0).cwiseAbs();
  Eigen::VectorXd witness = Eigen::VectorXd::Zero(n);
  for (int a = 0; a < m; ++a) witness(members[a]) = u(a) / std::sqrt(pi(members[a]));
  point.witness_function = std::move(witness);
  return point;
}

ProfilePoint mu_variant_bound(const SpectralBasis& basis, double r) {
  const ReversibleChain& chain = *basis.chain();
  const int n = chain.n();
  ProfilePoint point;
  point.r = r;
  point.exact = false;
  point.value = std::numeric_limits<double>::infinity();

  // Constant function: mu = 1, phi = 0; feasible only at full budget.
  if (r >= 1.0 - kBudgetSlack) {
    point.value = 0.0;
    point.witness_function = Eigen::VectorXd::Ones(n);
  }

  for (double t : heat_time_grid(basis, 1.0)) {
    for (int x0 = 0; x0 < n; ++x0) {
      SparseWitness w = heat_witness_at(basis, t, x0);
      if (w.mu_g > r + kBudgetSlack) continue;
      if (w.phi_g < point.value) {
        point.value = w.phi_g;
        point.witness_function = w.g.values;
      }
    }
  }
  return point;
}

}  // namespace

ProfilePoint spectral_profile_oracle(const ReversibleChainPtr& chain, double r, SpectralProfileVariant variant) {
  require(r > 0.0 && r <= 1.0, Errc::bad_range, "budget r must lie in (0, 1]");
  if (variant == SpectralProfileVariant::supp) return supp_variant_oracle(*chain, r);
  return mu_variant_bound(decompose(chain), r);
}

ProfilePoint spectral_profile_oracle(const SpectralBasis& basis, double r, SpectralProfileVariant variant) {
  require(r > 0.0 && r <= 1.0, Errc::bad_range, "budget r must lie in (0, 1]");
  if (variant == SpectralProfileVariant::supp) return supp_variant_oracle(*basis.chain(), r);
  return mu_variant_bound(basis, r);
}

}  // namespace heatcut
