#include "psdspar/cayley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "psdspar/connectivity.hpp"
#include "psdspar/util.hpp"

namespace psdspar::cayley {

using groups::FiniteGroup;
using groups::GeneratorSet;

namespace {

constexpr int kRelationSizeCap = 22;  // 2^22 subset products at most

void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

void check_generates(const GeneratorSet& gens) {
  std::vector<char> reached = groups::subgroup_closure(*gens.group, gens.elements);
  for (char c : reached)
    if (!c) throw Error(ErrorCode::Disconnected, "generator set does not generate the group");
}

// Exact character eigenvalues for groups with a known cyclic decomposition.
// The eigenvalue of L_s at character g is 2 sin^2(pi * phase(g, s)) where
// phase is the rational number sum_i g_i s_i / k_i mod 1, held as num / lcm.
struct CharSystem {
  const FiniteGroup& group;
  std::vector<int> orders;
  std::uint64_t l = 1;
  std::vector<std::uint64_t> coef;
  std::vector<double> sin2tab;           // 2 sin^2(pi j / l)
  std::vector<std::vector<int>> tuples;  // element index -> factor tuple

  explicit CharSystem(const FiniteGroup& g) : group(g), orders(*g.abelian_decomposition()) {
    for (int k : orders) l = std::lcm<std::uint64_t>(l, static_cast<std::uint64_t>(k));
    for (int k : orders) coef.push_back(l / static_cast<std::uint64_t>(k));
    sin2tab.resize(l);
    for (std::uint64_t j = 0; j < l; ++j) {
      double s = std::sin(3.14159265358979323846 * static_cast<double>(j) /
                          static_cast<double>(l));
      sin2tab[j] = 2.0 * s * s;
    }
    tuples.reserve(static_cast<std::size_t>(g.order()));
    for (int e = 0; e < g.order(); ++e) tuples.push_back(groups::decompose_index(e, orders));
  }

  double lambda(int g_idx, int s_idx) const {
    const std::vector<int>& a = tuples[static_cast<std::size_t>(g_idx)];
    const std::vector<int>& b = tuples[static_cast<std::size_t>(s_idx)];
    std::uint64_t num = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      std::uint64_t t = (static_cast<std::uint64_t>(a[i]) * static_cast<std::uint64_t>(b[i])) %
                        static_cast<std::uint64_t>(orders[i]);
      num = (num + t * coef[i]) % l;
    }
    return sin2tab[num];
  }
};

// Eigenvalues of the weighted sum over (position, weight) pairs at every
// character, evaluated exactly; the dense-path analogue of forming the sum.
std::vector<double> char_sum_eigenvalues(const CharSystem& cs, const GeneratorSet& gens,
                                         const std::vector<std::pair<int, double>>& terms) {
  const int n = cs.group.order();
  std::vector<double> lam(static_cast<std::size_t>(n), 0.0);
  for (const auto& [pos, w] : terms) {
    const int s = gens.elements[static_cast<std::size_t>(pos)];
    if (s == cs.group.identity() || w == 0.0) continue;
    for (int g = 0; g < n; ++g) lam[static_cast<std::size_t>(g)] += w * cs.lambda(g, s);
  }
  return lam;
}

// Mirror of linalg::check_eps_approx in the character basis: characters with
// base eigenvalue above the kernel cut must have their candidate/base ratio
// inside the widened sandwich, the rest may carry only negligible mass.
linalg::EpsApproxResult char_check_eps(const std::vector<double>& base,
                                       const std::vector<double>& cand, double eps) {
  const double lamax = *std::max_element(base.begin(), base.end());
  if (lamax <= 0.0) throw Error(ErrorCode::ZeroSum, "base Laplacian is zero");
  const double ktol = linalg::kKernelTolPerDim * static_cast<double>(base.size());
  const double lo = 1.0 - eps - linalg::kSandwichSlack;
  const double hi = 1.0 + eps + linalg::kSandwichSlack;

  linalg::EpsApproxResult out;
  out.ok = true;
  out.margin = eps;
  for (std::size_t g = 0; g < base.size(); ++g) {
    if (base[g] > ktol * lamax) {
      const double ratio = cand[g] / base[g];
      if (ratio < lo || ratio > hi) out.ok = false;
      out.margin = std::min(out.margin, std::min(ratio - (1.0 - eps), (1.0 + eps) - ratio));
    } else if (cand[g] > linalg::kRangeLeakTol * lamax) {
      throw Error(ErrorCode::RangeViolation, "candidate has mass outside the base range");
    }
  }
  return out;
}

std::map<int, double> to_position_map(const core::WeightVector& w) {
  return w.weights;
}

core::WeightVector from_position_map(int size, const std::map<int, double>& m) {
  core::WeightVector w;
  w.size = size;
  for (const auto& [k, v] : m)
    if (v != 0.0) w.weights.emplace(k, v);
  return w;
}

// Character-basis run of the core sampling loop over the generators listed in
// `positions`, with input weights nu (1 for the unweighted path). Verifies
// against the weighted sub-Laplacian of exactly those generators.
struct CharRunResult {
  core::WeightVector weights;  // keyed by position into gens
  int attempts = 0;
  double margin = 0.0;
  std::vector<double> norms;   // parallel to positions
};

CharRunResult char_sparsify_run(const CharSystem& cs, const GeneratorSet& gens,
                                const std::vector<int>& positions,
                                const std::vector<double>& nu, const CayleyConfig& config) {
  const int n = cs.group.order();
  std::vector<std::pair<int, double>> base_terms;
  for (std::size_t i = 0; i < positions.size(); ++i)
    base_terms.emplace_back(positions[i], nu[i]);
  const std::vector<double> base = char_sum_eigenvalues(cs, gens, base_terms);

  const double lamax = *std::max_element(base.begin(), base.end());
  if (lamax <= 0.0) throw Error(ErrorCode::ZeroSum, "Laplacian of the generator set is zero");
  const double ktol = linalg::kKernelTolPerDim * static_cast<double>(n);
  std::vector<char> retained(static_cast<std::size_t>(n), 0);
  int m = 0;
  for (int g = 0; g < n; ++g)
    if (base[static_cast<std::size_t>(g)] > ktol * lamax) {
      retained[static_cast<std::size_t>(g)] = 1;
      ++m;
    }

  // Exact leverage norms: max over retained characters of the eigenvalue
  // ratio; identity generators carry none.
  std::vector<double> norms(positions.size(), 0.0);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const int s = gens.elements[static_cast<std::size_t>(positions[i])];
    if (s == cs.group.identity()) continue;
    double best = 0.0;
    for (int g = 0; g < n; ++g) {
      if (!retained[static_cast<std::size_t>(g)]) continue;
      best = std::max(best, nu[i] * cs.lambda(g, s) / base[static_cast<std::size_t>(g)]);
    }
    norms[i] = best;
  }

  std::vector<double> p = core::leverage_probabilities(norms, config.eps, m, config.r_constant);
  const double cap = core::support_bound(p, m);

  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    core::WeightVector local = core::draw_weights(p, attempt_subseed(config.seed, attempt));
    if (local.support_size() > cap) continue;

    std::vector<std::pair<int, double>> cand_terms;
    for (const auto& [i, mu] : local.weights)
      cand_terms.emplace_back(positions[static_cast<std::size_t>(i)],
                              mu * nu[static_cast<std::size_t>(i)]);
    std::vector<double> cand = char_sum_eigenvalues(cs, gens, cand_terms);
    linalg::EpsApproxResult check = char_check_eps(base, cand, config.eps);
    if (!check.ok) continue;

    CharRunResult out;
    out.weights.size = static_cast<int>(positions.size());
    out.weights.weights = std::move(local.weights);
    out.attempts = attempt + 1;
    out.margin = check.margin;
    out.norms = std::move(norms);
    return out;
  }
  throw Error(ErrorCode::ExhaustedAttempts,
              "no draw verified within " + std::to_string(config.max_attempts) + " attempts");
}

}  // namespace

std::map<int, double> symmetrize_weights(const GeneratorSet& gens,
                                         const std::map<int, double>& weights) {
  std::map<int, double> out;
  for (const auto& [pos, mu] : weights) {
    require(pos >= 0 && pos < gens.size(), ErrorCode::Precondition, "weight position out of range");
    require(mu >= 0.0, ErrorCode::Precondition, "weights must be nonnegative");
    const int s = gens.elements[static_cast<std::size_t>(pos)];
    const int ipos = gens.position_of(gens.group->inverse(s));
    auto it = weights.find(ipos);
    const double inv_mu = it == weights.end() ? 0.0 : it->second;
    const double v = 0.5 * (mu + inv_mu);
    if (v != 0.0) {
      out[pos] = v;
      out[ipos] = v;
    }
  }
  return out;
}

CayleyReport cayley_sparsify(const GeneratorSet& gens, const CayleyConfig& config) {
  require(gens.size() > 0, ErrorCode::Precondition, "generator set is empty");
  check_generates(gens);
  const FiniteGroup& group = *gens.group;

  CayleyReport report;
  report.generator_elements = gens.elements;
  report.eps = config.eps;
  report.seed = config.seed;
  report.buckets = 1;

  if (group.abelian_decomposition()) {
    CharSystem cs(group);
    std::vector<int> positions(static_cast<std::size_t>(gens.size()));
    std::iota(positions.begin(), positions.end(), 0);
    std::vector<double> nu(positions.size(), 1.0);
    CharRunResult run = char_sparsify_run(cs, gens, positions, nu, config);

    std::map<int, double> sym = symmetrize_weights(gens, to_position_map(run.weights));
    std::vector<std::pair<int, double>> base_terms, cand_terms;
    for (int i = 0; i < gens.size(); ++i) base_terms.emplace_back(i, 1.0);
    for (const auto& [pos, mu] : sym) cand_terms.emplace_back(pos, mu);
    linalg::EpsApproxResult final_check =
        char_check_eps(char_sum_eigenvalues(cs, gens, base_terms),
                       char_sum_eigenvalues(cs, gens, cand_terms), config.eps);
    require(final_check.ok, ErrorCode::ExhaustedAttempts,
            "symmetrized weights failed re-verification");

    report.weights = from_position_map(gens.size(), sym);
    report.attempts = run.attempts;
    report.support_size = report.weights.support_size();
    report.verified_margin = final_check.margin;
    report.leverage = std::move(run.norms);
    return report;
  }

  // Dense route: one Laplacian per generator through the core sampler.
  std::vector<linalg::SymMatrix> mats;
  mats.reserve(static_cast<std::size_t>(gens.size()));
  for (int s : gens.elements) mats.push_back(groups::gen_laplacian(group, s));
  core::PsdCollection collection = core::PsdCollection::create(std::move(mats));
  core::SparsifyConfig sc;
  sc.eps = config.eps;
  sc.seed = config.seed;
  sc.max_attempts = config.max_attempts;
  sc.r_constant = config.r_constant;
  core::SparsifyReport inner = core::sparsify(collection, sc);

  std::map<int, double> sym = symmetrize_weights(gens, to_position_map(inner.weights));
  linalg::SymMatrix candidate(group.order());
  for (const auto& [pos, mu] : sym)
    linalg::add_scaled_into(candidate, collection.matrices[static_cast<std::size_t>(pos)], mu);
  linalg::EpsApproxResult final_check =
      linalg::check_eps_approx(candidate, collection.sum(), config.eps);
  require(final_check.ok, ErrorCode::ExhaustedAttempts,
          "symmetrized weights failed re-verification");

  report.weights = from_position_map(gens.size(), sym);
  report.attempts = inner.attempts;
  report.support_size = report.weights.support_size();
  report.verified_margin = final_check.margin;
  report.leverage = std::move(inner.leverage);
  return report;
}

CayleyReport weighted_cayley_sparsify(const GeneratorSet& gens, const CayleyConfig& config) {
  require(gens.size() > 0, ErrorCode::Precondition, "generator set is empty");
  if (!gens.weights)
    throw Error(ErrorCode::ZeroWeights, "generator set carries no weights");
  check_generates(gens);
  const FiniteGroup& group = *gens.group;
  const std::vector<double>& nu = *gens.weights;

  // Dyadic buckets: bucket j >= 1 holds weights in (wmax 2^-j, wmax 2^-(j-1)].
  const double wmax = *std::max_element(nu.begin(), nu.end());
  std::map<int, std::vector<int>> buckets;
  for (int pos = 0; pos < gens.size(); ++pos) {
    int j = 1;
    while (nu[static_cast<std::size_t>(pos)] <= wmax * std::ldexp(1.0, -j)) ++j;
    buckets[j].push_back(pos);
  }

  CayleyReport report;
  report.generator_elements = gens.elements;
  report.eps = config.eps;
  report.seed = config.seed;
  report.buckets = static_cast<int>(buckets.size());
  report.leverage.assign(static_cast<std::size_t>(gens.size()), 0.0);

  std::map<int, double> combined;
  int total_attempts = 0;

  const bool use_chars = group.abelian_decomposition().has_value();
  std::optional<CharSystem> cs;
  if (use_chars) cs.emplace(group);

  std::vector<linalg::SymMatrix> dense;  // cached per-generator weighted Laplacians
  if (!use_chars) {
    dense.reserve(static_cast<std::size_t>(gens.size()));
    for (int pos = 0; pos < gens.size(); ++pos) {
      linalg::SymMatrix l = groups::gen_laplacian(group, gens.elements[static_cast<std::size_t>(pos)]);
      linalg::SymMatrix scaled(group.order());
      linalg::add_scaled_into(scaled, l, nu[static_cast<std::size_t>(pos)]);
      dense.push_back(std::move(scaled));
    }
  }

  for (const auto& [j, positions] : buckets) {
    CayleyConfig sub = config;
    sub.seed = mix64(config.seed ^ mix64(static_cast<std::uint64_t>(j)));

    std::map<int, double> bucket_sym;
    if (use_chars) {
      std::vector<double> bucket_nu;
      for (int pos : positions) bucket_nu.push_back(nu[static_cast<std::size_t>(pos)]);
      CharRunResult run = char_sparsify_run(*cs, gens, positions, bucket_nu, sub);
      total_attempts += run.attempts;
      std::map<int, double> local;
      for (const auto& [i, mu] : run.weights.weights)
        local[positions[static_cast<std::size_t>(i)]] = mu;
      bucket_sym = symmetrize_weights(gens, local);
      for (std::size_t i = 0; i < positions.size(); ++i)
        report.leverage[static_cast<std::size_t>(positions[i])] = run.norms[i];
    } else {
      std::vector<linalg::SymMatrix> mats;
      for (int pos : positions) mats.push_back(dense[static_cast<std::size_t>(pos)]);
      core::SparsifyConfig sc;
      sc.eps = sub.eps;
      sc.seed = sub.seed;
      sc.max_attempts = sub.max_attempts;
      sc.r_constant = sub.r_constant;
      core::SparsifyReport inner = core::sparsify(core::PsdCollection::create(std::move(mats)), sc);
      total_attempts += inner.attempts;
      std::map<int, double> local;
      for (const auto& [i, mu] : inner.weights.weights)
        local[positions[static_cast<std::size_t>(i)]] = mu;
      bucket_sym = symmetrize_weights(gens, local);
      for (std::size_t i = 0; i < positions.size(); ++i)
        report.leverage[static_cast<std::size_t>(positions[i])] = inner.leverage[i];
    }
    for (const auto& [pos, mu] : bucket_sym) combined[pos] += mu;
  }

  // Combined sandwich against the full weighted Laplacian. The effective
  // weight of generator pos is combined[pos] * nu[pos].
  linalg::EpsApproxResult final_check;
  if (use_chars) {
    std::vector<std::pair<int, double>> base_terms, cand_terms;
    for (int pos = 0; pos < gens.size(); ++pos)
      base_terms.emplace_back(pos, nu[static_cast<std::size_t>(pos)]);
    for (const auto& [pos, mu] : combined)
      cand_terms.emplace_back(pos, mu * nu[static_cast<std::size_t>(pos)]);
    final_check = char_check_eps(char_sum_eigenvalues(*cs, gens, base_terms),
                                 char_sum_eigenvalues(*cs, gens, cand_terms), config.eps);
  } else {
    linalg::SymMatrix base(group.order());
    linalg::SymMatrix cand(group.order());
    for (int pos = 0; pos < gens.size(); ++pos)
      linalg::add_scaled_into(base, dense[static_cast<std::size_t>(pos)], 1.0);
    for (const auto& [pos, mu] : combined)
      linalg::add_scaled_into(cand, dense[static_cast<std::size_t>(pos)], mu);
    final_check = linalg::check_eps_approx(cand, base, config.eps);
  }
  require(final_check.ok, ErrorCode::ExhaustedAttempts,
          "combined bucket weights failed re-verification");

  report.weights = from_position_map(gens.size(), combined);
  report.attempts = total_attempts;
  report.support_size = report.weights.support_size();
  report.verified_margin = final_check.margin;
  return report;
}

linalg::EpsApproxResult verify_weights(const GeneratorSet& gens,
                                       const core::WeightVector& weights, double eps) {
  require(gens.size() > 0, ErrorCode::Precondition, "generator set is empty");
  require(weights.size == gens.size(), ErrorCode::DimensionMismatch,
          "weights sized for a different generator set");
  for (const auto& [pos, mu] : weights.weights) {
    require(pos >= 0 && pos < gens.size(), ErrorCode::Precondition,
            "weight position out of range");
    require(mu >= 0.0, ErrorCode::Precondition, "weights must be nonnegative");
  }
  const FiniteGroup& group = *gens.group;
  if (group.abelian_decomposition()) {
    CharSystem cs(group);
    std::vector<std::pair<int, double>> base_terms, cand_terms;
    for (int i = 0; i < gens.size(); ++i) base_terms.emplace_back(i, 1.0);
    for (const auto& [pos, mu] : weights.weights) cand_terms.emplace_back(pos, mu);
    return char_check_eps(char_sum_eigenvalues(cs, gens, base_terms),
                          char_sum_eigenvalues(cs, gens, cand_terms), eps);
  }
  linalg::SymMatrix base(group.order());
  linalg::SymMatrix cand(group.order());
  for (int pos = 0; pos < gens.size(); ++pos) {
    linalg::SymMatrix l = groups::gen_laplacian(group, gens.elements[static_cast<std::size_t>(pos)]);
    linalg::add_scaled_into(base, l, 1.0);
    const double mu = weights.at(pos);
    if (mu != 0.0) linalg::add_scaled_into(cand, l, mu);
  }
  return linalg::check_eps_approx(cand, base, eps);
}

Relation find_relation(const FiniteGroup& group, const std::vector<int>& t) {
  const int k = static_cast<int>(t.size());
  const unsigned n = static_cast<unsigned>(group.order());
  const int need = n <= 1 ? 1 : std::bit_width(n - 1) + 1;  // ceil(log2 N) + 1
  require(k >= need, ErrorCode::Precondition,
          "need at least ceil(log2 N) + 1 elements to force a collision");
  require(k <= kRelationSizeCap, ErrorCode::CapExceeded, "subset enumeration too large");
  {
    std::vector<int> sorted = t;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      require(sorted[i] >= 0 && sorted[i] < group.order(), ErrorCode::Precondition,
              "element out of range");
      require(i == 0 || sorted[i] != sorted[i - 1], ErrorCode::Precondition,
              "elements must be distinct");
    }
  }

  // Subset products in input order; first colliding pair of masks wins.
  const std::uint32_t total = 1u << k;
  std::vector<int> prod(total);
  std::vector<std::int32_t> first(group.order(), -1);
  prod[0] = group.identity();
  first[static_cast<std::size_t>(group.identity())] = 0;
  std::uint32_t m1 = 0, m2 = 0;
  bool found = false;
  for (std::uint32_t mask = 1; mask < total && !found; ++mask) {
    const int hb = std::bit_width(mask) - 1;
    const int p = group.mul(prod[mask ^ (1u << hb)], t[static_cast<std::size_t>(hb)]);
    prod[mask] = p;
    if (first[static_cast<std::size_t>(p)] >= 0) {
      m1 = static_cast<std::uint32_t>(first[static_cast<std::size_t>(p)]);
      m2 = mask;
      found = true;
    } else {
      first[static_cast<std::size_t>(p)] = static_cast<std::int32_t>(mask);
    }
  }
  if (!found) throw Error(ErrorCode::NoCollision, "no two subsets share a product");

  // m2 is the later mask, so m2 \ m1 is never empty; s is its lowest index.
  const std::uint32_t diff = m2 & ~m1;
  const int sidx = std::countr_zero(diff);
  const int s = t[static_cast<std::size_t>(sidx)];

  std::vector<int> b_list;
  for (int i = 0; i < k; ++i)
    if (m2 & (1u << i)) b_list.push_back(i);
  const std::size_t j = static_cast<std::size_t>(
      std::find(b_list.begin(), b_list.end(), sidx) - b_list.begin());

  Relation rel;
  rel.target = s;
  for (std::size_t i = j; i-- > 0;)
    rel.factors.push_back(group.inverse(t[static_cast<std::size_t>(b_list[i])]));
  for (int i = 0; i < k; ++i)
    if (m1 & (1u << i)) rel.factors.push_back(t[static_cast<std::size_t>(i)]);
  for (std::size_t i = b_list.size(); i-- > j + 1;)
    rel.factors.push_back(group.inverse(t[static_cast<std::size_t>(b_list[i])]));

  // Multiply out and re-check the proof-side invariants.
  int acc = group.identity();
  for (int f : rel.factors) acc = group.mul(acc, f);
  require(acc == s, ErrorCode::Precondition, "relation rearrangement failed");
  require(static_cast<int>(rel.factors.size()) <= 2 * k, ErrorCode::Precondition,
          "relation length bound violated");
  std::map<int, int> pair_count;
  for (int f : rel.factors) ++pair_count[std::min(f, group.inverse(f))];
  for (const auto& [e, c] : pair_count)
    require(c <= 4, ErrorCode::Precondition, "factor multiplicity bound violated");
  return rel;
}

DominationCheck certify_domination(const FiniteGroup& group, const std::vector<int>& t, int s,
                                   const Relation& relation, double alpha,
                                   const std::optional<std::vector<double>>& weights) {
  require(std::find(t.begin(), t.end(), s) != t.end(), ErrorCode::Precondition,
          "target must belong to the set");
  require(relation.target == s, ErrorCode::Precondition, "relation targets a different element");
  int acc = group.identity();
  for (int f : relation.factors) {
    acc = group.mul(acc, f);
    const bool member = (std::find(t.begin(), t.end(), f) != t.end() && f != s) ||
                        (std::find(t.begin(), t.end(), group.inverse(f)) != t.end() &&
                         group.inverse(f) != s);
    require(member, ErrorCode::Precondition, "relation factor outside the set");
  }
  require(acc == s, ErrorCode::Precondition, "relation does not multiply out to the target");
  require(alpha > 0.0, ErrorCode::Precondition, "alpha must be positive");
  if (weights)
    require(weights->size() == t.size(), ErrorCode::DimensionMismatch,
            "weights must parallel the set");

  DominationCheck out;
  if (group.abelian_decomposition()) {
    CharSystem cs(group);
    double vmin = 0.0, vmax = 0.0;
    bool init = false;
    for (int g = 0; g < group.order(); ++g) {
      double v = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == s) continue;
        const double w = weights ? (*weights)[i] : 1.0;
        if (t[i] != group.identity()) v += w * cs.lambda(g, t[i]);
      }
      if (s != group.identity()) v -= alpha * cs.lambda(g, s);
      if (!init) {
        vmin = vmax = v;
        init = true;
      } else {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
    }
    out.margin = vmin;
    out.ok = vmin >= -1e-9 * std::max(1.0, vmax);
    return out;
  }

  linalg::SymMatrix d(group.order());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == s) continue;
    const double w = weights ? (*weights)[i] : 1.0;
    linalg::add_scaled_into(d, groups::gen_laplacian(group, t[i]), w);
  }
  linalg::add_scaled_into(d, groups::gen_laplacian(group, s), -alpha);
  std::vector<double> ev = linalg::sym_eigenvalues(d);
  out.margin = ev.front();
  out.ok = ev.front() >= -1e-9 * std::max(1.0, ev.back());
  return out;
}

}  // namespace psdspar::cayley
