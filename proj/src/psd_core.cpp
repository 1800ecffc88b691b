#include "psdspar/psd_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "psdspar/connectivity.hpp"
#include "psdspar/util.hpp"

namespace psdspar::core {

namespace {

constexpr double kPsdTol = 1e-9;
constexpr double kNormSlack = 1e-7;  // allowed overshoot of whitened norms past 1

}  // namespace

PsdCollection PsdCollection::create(std::vector<linalg::SymMatrix> matrices,
                                    std::vector<std::string> labels) {
  if (matrices.empty()) throw Error(ErrorCode::Precondition, "collection must be non-empty");
  PsdCollection c;
  c.dim = matrices.front().dim();
  for (const auto& m : matrices) {
    if (m.dim() != c.dim)
      throw Error(ErrorCode::DimensionMismatch, "collection members must share a dimension");
  }
  std::vector<int> bad(matrices.size(), 0);
  parallel_for(static_cast<int>(matrices.size()), [&](int i) {
    bad[i] = linalg::is_psd(matrices[static_cast<std::size_t>(i)], kPsdTol).psd ? 0 : 1;
  });
  for (std::size_t i = 0; i < matrices.size(); ++i)
    if (bad[i]) throw Error(ErrorCode::Precondition, "collection member " + std::to_string(i) +
                                                         " is not PSD");
  if (!labels.empty() && labels.size() != matrices.size())
    throw Error(ErrorCode::DimensionMismatch, "labels must parallel matrices");
  c.matrices = std::move(matrices);
  c.labels = std::move(labels);
  return c;
}

linalg::SymMatrix PsdCollection::sum() const {
  linalg::SymMatrix s(dim);
  for (const auto& m : matrices) linalg::add_scaled_into(s, m, 1.0);
  return s;
}

NormalizedCollection normalize(const PsdCollection& collection) {
  NormalizedCollection out;
  linalg::SymMatrix a = collection.sum();
  auto [restriction, restricted] = linalg::restrict_to_range(a, collection.matrices);
  out.restriction = std::move(restriction);
  out.inv_sqrt = linalg::inv_sqrt_on_range(a, out.restriction);

  const int r = collection.size();
  out.tilde.assign(r, linalg::SymMatrix(out.restriction.restricted_dim));
  out.norms.assign(r, 0.0);
  parallel_for(r, [&](int i) {
    out.tilde[i] = linalg::sandwich(out.inv_sqrt, restricted[static_cast<std::size_t>(i)]);
    out.norms[i] = linalg::spectral_norm(out.tilde[i]);
  });
  for (int i = 0; i < r; ++i) {
    if (out.norms[i] > 1.0 + kNormSlack)
      throw Error(ErrorCode::Precondition,
                  "whitened norm exceeds 1; collection member " + std::to_string(i) +
                      " is inconsistent with the sum");
  }
  return out;
}

std::vector<double> leverage_probabilities(const std::vector<double>& norms, double eps,
                                           int m, double r_constant) {
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorCode::BadEps, "eps must lie in (0, 1]");
  if (m < 1) throw Error(ErrorCode::Precondition, "restricted dimension must be positive");
  if (!(r_constant > 0.0)) throw Error(ErrorCode::Precondition, "r_constant must be positive");
  const double r_value = eps * eps / (r_constant * std::log(4.0 * m));
  std::vector<double> p(norms.size());
  for (std::size_t i = 0; i < norms.size(); ++i)
    p[i] = std::min(1.0, norms[i] / r_value);
  return p;
}

WeightVector draw_weights(const std::vector<double>& probabilities, std::uint64_t seed) {
  WeightVector w;
  w.size = static_cast<int>(probabilities.size());
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const double p = probabilities[i];
    if (p <= 0.0) continue;
    if (p >= 1.0) {
      w.weights.emplace(static_cast<int>(i), 1.0);
    } else if (counter_uniform(seed, i) < p) {
      w.weights.emplace(static_cast<int>(i), 1.0 / p);
    }
  }
  return w;
}

double support_bound(const std::vector<double>& probabilities, int m) {
  double expected = 0.0;
  for (double p : probabilities) expected += std::min(1.0, p);
  return 2.0 * std::max(expected, 16.0 * std::log(4.0 * m));
}

SparsifyReport sparsify(const PsdCollection& collection, const SparsifyConfig& config) {
  if (!(config.eps > 0.0 && config.eps <= 1.0))
    throw Error(ErrorCode::BadEps, "eps must lie in (0, 1]");
  if (config.max_attempts < 1)
    throw Error(ErrorCode::Precondition, "max_attempts must be at least 1");

  NormalizedCollection nc = normalize(collection);
  const int m = nc.restriction.restricted_dim;
  std::vector<double> p = leverage_probabilities(nc.norms, config.eps, m, config.r_constant);
  const double cap = support_bound(p, m);
  const linalg::SymMatrix a = collection.sum();

  double leverage_sum = 0.0;
  for (double v : nc.norms) leverage_sum += v;

  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    WeightVector w = draw_weights(p, attempt_subseed(config.seed, attempt));
    if (w.support_size() > cap) continue;

    linalg::SymMatrix candidate(collection.dim);
    for (const auto& [i, mu] : w.weights)
      linalg::add_scaled_into(candidate, collection.matrices[static_cast<std::size_t>(i)], mu);
    linalg::EpsApproxResult check = linalg::check_eps_approx(candidate, a, config.eps);
    if (!check.ok) continue;

    SparsifyReport report;
    report.weights = std::move(w);
    report.eps = config.eps;
    report.attempts = attempt + 1;
    report.support_size = report.weights.support_size();
    report.restricted_dim = m;
    report.verified_margin = check.margin;
    report.leverage_sum = leverage_sum;
    report.leverage = nc.norms;
    report.seed = config.seed;
    return report;
  }
  throw Error(ErrorCode::ExhaustedAttempts,
              "no draw verified within " + std::to_string(config.max_attempts) + " attempts");
}

SumNormsCheck sum_norms_bound_check(const PsdCollection& collection,
                                    const std::vector<double>& alpha_grid,
                                    std::uint64_t subset_cap) {
  if (alpha_grid.empty()) throw Error(ErrorCode::Precondition, "alpha grid must be non-empty");
  SumNormsCheck out;
  NormalizedCollection nc = normalize(collection);
  for (double v : nc.norms) out.lhs += v;

  const double r = collection.size();
  double best = std::numeric_limits<double>::infinity();
  for (double alpha : alpha_grid) {
    if (!(alpha > 0.0 && alpha <= 1.0))
      throw Error(ErrorCode::Precondition, "alpha grid entries must lie in (0, 1]");
    conn::SubsetSearchLimits limits;
    limits.query_cap = subset_cap;
    conn::ConnectivityResult res = conn::connectivity_parameter(collection, alpha, limits);
    const double rhs = 4.0 * (1.0 + std::log(r)) * res.value / alpha;
    out.alphas.push_back(alpha);
    out.rhs.push_back(rhs);
    best = std::min(best, rhs);
  }
  out.pass = out.lhs <= best + 1e-6;
  return out;
}

}  // namespace psdspar::core
