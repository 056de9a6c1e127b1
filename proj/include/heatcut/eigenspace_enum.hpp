#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "heatcut/heat_method.hpp"
#include "heatcut/spectral.hpp"

namespace heatcut {

enum class NetMode { lattice, random_fallback };

/// Covering of the unit sphere of R^m at the given radius. The lattice mode
/// rounds an axis-aligned grid of spacing radius/sqrt(m) to the sphere (kept
/// shell: norm in [0.5, 1.5]); grid rounding moves a sphere point at most
/// radius/2 and normalization at most as much again, so the result is a
/// radius-net. The budget caps the net cardinality; exceeding it switches to
/// budget-many seeded random unit vectors, flagged non-exhaustive.
struct NetSpec {
  int m = 1;
  double radius = 0.5;
  std::int64_t budget = 10'000'000;
  NetMode mode = NetMode::lattice;
  std::uint64_t fallback_seed = 0x5eed5eed5eed5eedULL;
};

struct NetPoints {
  std::vector<Eigen::VectorXd> points;
  bool exhaustive = true;  // lattice completed within budget
};

NetPoints build_net(const NetSpec& spec);

struct EnumResult {
  StateFunction g;            // unit pi-norm, in span(psi_1 ... psi_m)
  Eigen::VectorXd coeffs;     // g = sum coeffs_i psi_i
  double mu_g = 0.0;
  double phi_g = 0.0;
  std::int64_t net_size = 0;
  bool exhaustive = true;
  int m = 0;                  // nullity_eta(L)
};

/// Brute-force search over a 0.5 sqrt(eps/eta)-net of the unit sphere of the
/// span of eigenfunctions with lambda <= eta, minimizing mu[g] (ties to the
/// lexicographically smaller coefficient vector). Every candidate satisfies
/// phi[g] <= eta by construction. If some f with mu[f] <= delta and
/// phi[f] <= eps exists and the net is exhaustive, the result satisfies
/// ||g||_1 <= sqrt(delta) + 2 sqrt(eps/eta).
/// Requires 2 eps <= eta <= 1, 0 < eps <= 1/4, 0 < delta <= 1/2.
EnumResult enumerate_sparse(const SpectralBasis& basis, double eta, double eps, double delta,
                            std::int64_t budget = 10'000'000);

}  // namespace heatcut
