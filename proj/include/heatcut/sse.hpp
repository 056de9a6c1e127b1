#pragma once

#include <optional>
#include <vector>

#include "heatcut/eigenspace_enum.hpp"
#include "heatcut/heat_method.hpp"
#include "heatcut/spectral.hpp"

namespace heatcut {

/// Parameters of the combined search. B defaults to 64 C^2, which makes the
/// low-nullity measure overhead at most a (1 + 1/C) factor.
struct SseConfig {
  double alpha = 1.0 / 3.0;  // in (0, 1/3]
  double c_param = 4.0;      // C >= 1
  double delta = 0.25;       // in (0, 1/2]
  double eps = 0.05;         // in (0, 1/4]
  double b_param = 0.0;      // 0 means 64 C^2
  std::int64_t enum_budget = 10'000'000;

  double effective_b() const { return b_param > 0.0 ? b_param : 64.0 * c_param * c_param; }
};

enum class SseBranch { high_nullity, low_nullity };

struct SseResult {
  SparseWitness witness;
  SseBranch branch = SseBranch::high_nullity;
  double gamma = 0.0;          // B eps / (alpha delta), clamped to 1
  double eta = 0.0;            // enumeration threshold alpha * gamma (possibly raised to 2 eps)
  int nullity = 0;             // nullity_{alpha gamma}(L)
  double nullity_threshold = 0.0;
  bool gamma_clamped = false;
  bool eta_raised = false;
  bool exhaustive = true;      // enumeration completed its lattice (high branch: always true)
  bool certified = false;      // the unconditional guarantee mu <= delta, phi <= gamma applies
  std::optional<TraceCertificate> certificate;  // high branch only
};

/// Theorem-1.4-style branch: gamma = B eps/(alpha delta); if the analytic
/// nullity at alpha*gamma reaches (4/delta) n^alpha the heat witness is
/// returned (unconditionally certified), otherwise the eigenspace net search
/// runs at eta = alpha*gamma.
SseResult analytic_sse(const SpectralBasis& basis, const SseConfig& config);

struct CutResult {
  std::vector<int> set;       // ascending state indices
  double measure = 0.0;       // pi(S)
  double conductance = 0.0;   // Phi[S]
  double threshold = 0.0;     // smallest g-value inside the set
};

/// Threshold rounding: sorts states by decreasing g, scans the prefix sets
/// with measure at most 4r, and returns the one of least conductance
/// (ties to the smallest measure). For nonnegative g with mu[g] <= r the
/// result satisfies pi(T) <= 4r and Phi[T] <= 2 sqrt(Phi[g]).
CutResult sweep_cut(const ReversibleChain& chain, const StateFunction& g, double r);

struct SseSetsResult {
  SseResult analytic;
  CutResult cut;
};

/// End-to-end set-valued pipeline: analytic_sse, then sweep_cut on |g| with
/// budget r = mu[g].
SseSetsResult sse_sets(const SpectralBasis& basis, const SseConfig& config);

struct Theorem11Report {
  ProfileBoundResult bound;
  CutResult cut;
  double measure_budget = 0.0;   // 16 k^(-1+1/A)
  double conductance_bound = 0.0;  // 2 sqrt(A lambda_k log_k n)
  bool holds = false;
};

/// Composes profile_bound with sweep_cut and checks the set-level conductance
/// profile bound the two together imply.
Theorem11Report theorem11_check(const SpectralBasis& basis, int k, double a_param);

}  // namespace heatcut
