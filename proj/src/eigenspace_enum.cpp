#include "heatcut/eigenspace_enum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "heatcut/errors.hpp"
#include "heatcut/functionals.hpp"
#include "heatcut/parallel.hpp"
#include "heatcut/rng.hpp"

namespace heatcut {

namespace {

// Hard cap on lattice cells visited, independent of how few survive the
// shell filter; beyond it the scan is hopeless and we fall back.
constexpr std::int64_t kScanCap = 400'000'000;

struct Lattice {
  int m = 1;
  double h = 0.0;        // grid spacing radius/sqrt(m)
  std::int64_t span = 0; // axis indices run over [-span, span]
};

Lattice make_lattice(const NetSpec& spec) {
  Lattice lat;
  lat.m = spec.m;
  lat.h = spec.radius / std::sqrt(static_cast<double>(spec.m));
  double span = std::floor(1.5 / lat.h);
  lat.span = span > static_cast<double>(kScanCap) ? kScanCap : static_cast<std::int64_t>(span);
  return lat;
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

// Keeps one lattice point per ray through the origin: a point with integer
// coordinate gcd g is emitted only if no smaller multiple of its primitive
// direction lies in the shell. Borderline smaller multiples (within 1e-9 of
// the inner shell boundary) are distrusted, so at worst a ray is emitted
// twice, never dropped.
bool is_ray_representative(const std::vector<long long>& z, double norm) {
  long long g = 0;
  for (long long v : z) g = gcd_ll(g, std::llabs(v));
  if (g <= 1) return true;
  double primitive_norm = norm / static_cast<double>(g);
  auto c_min = static_cast<long long>(std::ceil((0.5 + 1e-9) / primitive_norm));
  return g <= std::max<long long>(c_min, 1);
}

// Enumerates shell-filtered, deduplicated, normalized lattice points whose
// first axis index lies in [first_begin, first_end]. visit(coords) returns
// false to abort. Returns false iff aborted.
template <typename Visit>
bool scan_lattice_slice(const Lattice& lat, std::int64_t first_begin, std::int64_t first_end, Visit&& visit) {
  const int m = lat.m;
  const double h = lat.h;
  const std::int64_t span = lat.span;
  std::vector<long long> digits(static_cast<std::size_t>(m));
  std::vector<double> coord(static_cast<std::size_t>(m));
  std::vector<double> prefix_sq(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<double> unit(static_cast<std::size_t>(m));

  digits[0] = first_begin;
  for (int i = 1; i < m; ++i) digits[static_cast<std::size_t>(i)] = -span;
  int refresh_from = 0;
  for (;;) {
    for (int i = refresh_from; i < m; ++i) {
      coord[static_cast<std::size_t>(i)] = static_cast<double>(digits[static_cast<std::size_t>(i)]) * h;
      prefix_sq[static_cast<std::size_t>(i) + 1] =
          prefix_sq[static_cast<std::size_t>(i)] +
          coord[static_cast<std::size_t>(i)] * coord[static_cast<std::size_t>(i)];
    }
    double norm_sq = prefix_sq[static_cast<std::size_t>(m)];
    if (norm_sq >= 0.25 && norm_sq <= 2.25) {
      double norm = std::sqrt(norm_sq);
      if (is_ray_representative(digits, norm)) {
        for (int i = 0; i < m; ++i) unit[static_cast<std::size_t>(i)] = coord[static_cast<std::size_t>(i)] / norm;
        if (!visit(unit)) return false;
      }
    }
    int level = m - 1;
    while (level > 0 && digits[static_cast<std::size_t>(level)] == span) {
      digits[static_cast<std::size_t>(level)] = -span;
      --level;
    }
    if (level == 0 && digits[0] == first_end) break;
    ++digits[static_cast<std::size_t>(level)];
    refresh_from = level;
  }
  return true;
}

struct LatticeCount {
  bool exhaustive = false;
  std::int64_t net_size = 0;
};

// Cheap serial pass: decides exhaustiveness and the exact net size before any
// evaluation work, so budget handling is deterministic.
LatticeCount count_lattice(const NetSpec& spec) {
  Lattice lat = make_lattice(spec);
  LatticeCount out;
  if (lat.span >= kScanCap) return out;
  std::int64_t scanned_estimate = 1;
  for (int i = 0; i < lat.m; ++i) {
    scanned_estimate *= 2 * lat.span + 1;
    if (scanned_estimate > kScanCap) return out;
  }
  std::int64_t emitted = 0;
  bool completed = scan_lattice_slice(lat, -lat.span, lat.span, [&](const std::vector<double>&) {
    return ++emitted <= spec.budget;
  });
  out.exhaustive = completed;
  out.net_size = emitted;
  return out;
}

template <typename Visit>
void scan_random(const NetSpec& spec, std::int64_t begin, std::int64_t end, Visit&& visit) {
  std::vector<double> point(static_cast<std::size_t>(spec.m));
  for (std::int64_t i = begin; i < end; ++i) {
    SplitMix64 rng = SplitMix64::substream(spec.fallback_seed, static_cast<std::uint64_t>(i));
    double norm_sq = 0.0;
    do {
      norm_sq = 0.0;
      for (int d = 0; d < spec.m; ++d) {
        // Box-Muller; the pair's second half is discarded for simplicity.
        double u1 = std::max(rng.next_double(), 1e-300);
        double u2 = rng.next_double();
        double gauss = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        point[static_cast<std::size_t>(d)] = gauss;
        norm_sq += gauss * gauss;
      }
    } while (norm_sq < 1e-12);
    double norm = std::sqrt(norm_sq);
    for (int d = 0; d < spec.m; ++d) point[static_cast<std::size_t>(d)] /= norm;
    visit(point);
  }
}

void validate_spec(const NetSpec& spec) {
  require(spec.m >= 1, Errc::bad_range, "net dimension must be positive");
  require(spec.radius > 0.0 && spec.radius <= 1.0, Errc::bad_range, "net radius must lie in (0, 1]");
  require(spec.budget >= 1, Errc::bad_range, "net budget must be positive");
}

}  // namespace

NetPoints build_net(const NetSpec& spec) {
  validate_spec(spec);
  NetPoints out;
  if (spec.mode == NetMode::lattice) {
    LatticeCount count = count_lattice(spec);
    if (count.exhaustive) {
      out.points.reserve(static_cast<std::size_t>(count.net_size));
      Lattice lat = make_lattice(spec);
      scan_lattice_slice(lat, -lat.span, lat.span, [&](const std::vector<double>& unit) {
        out.points.emplace_back(Eigen::Map<const Eigen::VectorXd>(unit.data(), spec.m));
        return true;
      });
      out.exhaustive = true;
      return out;
    }
  }
  out.exhaustive = false;
  out.points.reserve(static_cast<std::size_t>(spec.budget));
  scan_random(spec, 0, spec.budget, [&](const std::vector<double>& unit) {
    out.points.emplace_back(Eigen::Map<const Eigen::VectorXd>(unit.data(), spec.m));
  });
  return out;
}

namespace {

struct EnumBest {
  double mu_value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd coeffs;
  bool set = false;
};

void consider(EnumBest& best, double mu_value, const Eigen::VectorXd& coeffs) {
  if (!best.set || mu_value < best.mu_value) {
    best.mu_value = mu_value;
    best.coeffs = coeffs;
    best.set = true;
    return;
  }
  if (mu_value == best.mu_value &&
      std::lexicographical_compare(coeffs.data(), coeffs.data() + coeffs.size(), best.coeffs.data(),
                                   best.coeffs.data() + best.coeffs.size())) {
    best.coeffs = coeffs;
  }
}

void merge(EnumBest& into, const EnumBest& from) {
  if (from.set) consider(into, from.mu_value, from.coeffs);
}

// Evaluates mu over candidate coefficient blocks with one GEMM per block.
class MuEvaluator {
 public:
  MuEvaluator(const SpectralBasis& basis, int m)
      : span_(basis.psi().leftCols(m)), pi_(basis.chain()->pi()), m_(m), block_(m, kBlock), filled_(0) {}

  void add(EnumBest& best, const std::vector<double>& coeffs) {
    block_.col(filled_) = Eigen::Map<const Eigen::VectorXd>(coeffs.data(), m_);
    if (++filled_ == kBlock) flush(best);
  }

  void flush(EnumBest& best) {
    if (filled_ == 0) return;
    Eigen::MatrixXd values = span_ * block_.leftCols(filled_);
    for (int c = 0; c < filled_; ++c) {
      double l1 = pi_.dot(values.col(c).cwiseAbs());
      double l2_sq = pi_.dot(values.col(c).cwiseAbs2());
      consider(best, l1 * l1 / l2_sq, block_.col(c));
    }
    filled_ = 0;
  }

 private:
  static constexpr int kBlock = 4096;
  Eigen::MatrixXd span_;
  Eigen::VectorXd pi_;
  int m_;
  Eigen::MatrixXd block_;
  int filled_;
};

}  // namespace

EnumResult enumerate_sparse(const SpectralBasis& basis, double eta, double eps, double delta,
                            std::int64_t budget) {
  require(eps > 0.0 && eps <= 0.25, Errc::bad_range, "eps must lie in (0, 1/4]");
  require(delta > 0.0 && delta <= 0.5, Errc::bad_range, "delta must lie in (0, 1/2]");
  require(2.0 * eps <= eta && eta <= 1.0, Errc::bad_range, "need 2 eps <= eta <= 1");

  const int m = analytic_nullity(basis, eta);
  NetSpec spec;
  spec.m = m;
  spec.radius = 0.5 * std::sqrt(eps / eta);
  spec.budget = budget;

  LatticeCount count = count_lattice(spec);
  EnumBest best;
  std::int64_t net_size = 0;

  if (count.exhaustive) {
    net_size = count.net_size;
    Lattice lat = make_lattice(spec);
    const std::int64_t axis_values = 2 * lat.span + 1;
    std::vector<EnumBest> partial(static_cast<std::size_t>(chunk_count(axis_values)));
    parallel_chunks(axis_values, [&](int chunk, std::int64_t begin, std::int64_t end) {
      EnumBest local;
      MuEvaluator eval(basis, m);
      scan_lattice_slice(lat, begin - lat.span, end - 1 - lat.span,
                         [&](const std::vector<double>& unit) {
                           eval.add(local, unit);
                           return true;
                         });
      eval.flush(local);
      partial[static_cast<std::size_t>(chunk)] = local;
    });
    for (const auto& p : partial) merge(best, p);
  } else {
    net_size = spec.budget;
    std::vector<EnumBest> partial(static_cast<std::size_t>(chunk_count(spec.budget)));
    parallel_chunks(spec.budget, [&](int chunk, std::int64_t begin, std::int64_t end) {
      EnumBest local;
      MuEvaluator eval(basis, m);
      scan_random(spec, begin, end, [&](const std::vector<double>& unit) { eval.add(local, unit); });
      eval.flush(local);
      partial[static_cast<std::size_t>(chunk)] = local;
    });
    for (const auto& p : partial) merge(best, p);
  }

  EnumResult out;
  out.m = m;
  out.net_size = net_size;
  out.exhaustive = count.exhaustive;
  Eigen::VectorXd full_coeffs = Eigen::VectorXd::Zero(basis.n());
  full_coeffs.head(m) = best.coeffs;
  out.coeffs = best.coeffs;
  out.g = StateFunction(basis.chain(), basis.synthesize(full_coeffs));
  out.mu_g = mu(out.g);
  out.phi_g = phi(out.g);
  return out;
}

}  // namespace heatcut
