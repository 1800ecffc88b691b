#include "psdspar/connectivity.hpp"

#include <algorithm>
#include <cmath>

namespace psdspar::conn {

namespace {

constexpr double kDominationTol = 1e-9;
constexpr double kWitnessSlack = 1e-9;

void require(bool cond, ErrorCode code, const char* msg) {
  if (!cond) throw Error(code, msg);
}

linalg::SymMatrix domination_matrix(const core::PsdCollection& collection, double alpha,
                                    int index, const std::vector<int>& subset) {
  linalg::SymMatrix d(collection.dim);
  for (int j : subset) {
    if (j == index) continue;
    linalg::add_scaled_into(d, collection.matrices[static_cast<std::size_t>(j)], 1.0);
  }
  linalg::add_scaled_into(d, collection.matrices[static_cast<std::size_t>(index)], -alpha);
  return d;
}

// First lexicographic subset of the given size, and in-place successor.
bool next_subset(std::vector<int>& subset, int r) {
  const int k = static_cast<int>(subset.size());
  for (int i = k - 1; i >= 0; --i) {
    if (subset[i] < r - (k - i)) {
      ++subset[i];
      for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

bool dominates(const DominationQuery& query, const core::PsdCollection& collection) {
  require(query.alpha >= 0.0, ErrorCode::Precondition, "alpha must be nonnegative");
  require(std::find(query.subset.begin(), query.subset.end(), query.index) != query.subset.end(),
          ErrorCode::Precondition, "query index must belong to the subset");
  for (int j : query.subset)
    require(j >= 0 && j < collection.size(), ErrorCode::Precondition, "subset index out of range");
  linalg::SymMatrix d = domination_matrix(collection, query.alpha, query.index, query.subset);
  return linalg::is_psd(d, kDominationTol).psd;
}

ConnectivityResult connectivity_parameter(const core::PsdCollection& collection, double alpha,
                                          const SubsetSearchLimits& limits) {
  require(alpha >= 0.0, ErrorCode::Precondition, "alpha must be nonnegative");
  const int r = collection.size();

  ConnectivityResult res;
  res.alpha = alpha;
  res.largest_minimal_subset.alpha = alpha;

  if (alpha == 0.0) {
    // Every member is 0-dominated by an empty sum.
    res.value = 1;
    return res;
  }

  std::uint64_t queries = 0;
  auto charge_query = [&]() {
    if (++queries > limits.query_cap)
      throw Error(ErrorCode::CapExceeded, "domination query cap exceeded");
  };

  std::vector<int> best;  // first minimal subset seen at the deepest live size
  const int size_limit = limits.max_size > 0 ? std::min(limits.max_size, r) : r;

  for (int k = 1; k <= size_limit; ++k) {
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i;
    bool found = false;
    do {
      bool minimal = true;
      for (int i : subset) {
        charge_query();
        if (dominates(DominationQuery{alpha, i, subset}, collection)) {
          minimal = false;
          break;
        }
      }
      if (minimal) {
        best = subset;
        found = true;
        break;  // existence at this size settled; move one size up
      }
    } while (next_subset(subset, r));

    if (!found) {
      res.value = k;
      if (!best.empty())
        res.largest_minimal_subset = extract_witnesses(collection, alpha, best);
      res.exhaustive = true;
      return res;
    }
  }

  // Every size up to the limit had a minimal subset.
  res.largest_minimal_subset = extract_witnesses(collection, alpha, best);
  res.value = size_limit + 1;
  res.exhaustive = size_limit == r;
  return res;
}

double alpha_eps(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(ErrorCode::BadEps, "eps must lie in [0, 1)");
  const double c = (1.0 - eps) / (1.0 + eps);
  return 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * c));
}

ConnectivityResult connectivity_threshold(const core::PsdCollection& collection, double eps,
                                          const SubsetSearchLimits& limits) {
  return connectivity_parameter(collection, alpha_eps(eps), limits);
}

AlphaMinimalCertificate extract_witnesses(const core::PsdCollection& collection, double alpha,
                                          const std::vector<int>& subset) {
  require(!subset.empty(), ErrorCode::Precondition, "subset must be non-empty");
  for (int j : subset)
    require(j >= 0 && j < collection.size(), ErrorCode::Precondition, "subset index out of range");

  AlphaMinimalCertificate cert;
  cert.alpha = alpha;
  cert.subset = subset;
  for (int i : subset) {
    linalg::SymMatrix d = domination_matrix(collection, alpha, i, subset);
    linalg::EigDecomposition eig = linalg::sym_eig(d);
    std::vector<double> w(collection.dim);
    for (int row = 0; row < collection.dim; ++row) w[row] = eig.eigenvectors.at(row, 0);
    cert.witnesses.emplace(i, std::move(w));
  }
  if (!certificate_holds(collection, cert))
    throw Error(ErrorCode::NotMinimal, "subset admits no strict witness; not alpha-minimal");
  return cert;
}

bool certificate_holds(const core::PsdCollection& collection,
                       const AlphaMinimalCertificate& certificate) {
  if (certificate.subset.empty()) return false;
  linalg::SymMatrix total(collection.dim);
  for (int j : certificate.subset) {
    if (j < 0 || j >= collection.size()) return false;
    linalg::add_scaled_into(total, collection.matrices[static_cast<std::size_t>(j)], 1.0);
  }
  const double total_norm = linalg::spectral_norm(total);

  for (int i : certificate.subset) {
    auto it = certificate.witnesses.find(i);
    if (it == certificate.witnesses.end()) return false;
    const std::vector<double>& w = it->second;
    if (static_cast<int>(w.size()) != collection.dim) return false;
    double w2 = 0.0;
    for (double v : w) w2 += v * v;
    if (w2 == 0.0) return false;

    const double own = linalg::quadratic_form(
        collection.matrices[static_cast<std::size_t>(i)], w);
    double others = 0.0;
    for (int j : certificate.subset) {
      if (j == i) continue;
      others += linalg::quadratic_form(collection.matrices[static_cast<std::size_t>(j)], w);
    }
    if (!(certificate.alpha * own > others + kWitnessSlack * total_norm * w2)) return false;
  }
  return true;
}

bool verify_unsparsifiable(const core::PsdCollection& collection,
                           const AlphaMinimalCertificate& certificate, double eps) {
  require(certificate.alpha >= alpha_eps(eps) - 1e-12, ErrorCode::Precondition,
          "certificate alpha is below alpha_eps(eps)");
  return certificate_holds(collection, certificate);
}

}  // namespace psdspar::conn
