#include "semnet/validation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "semnet/util.hpp"

namespace semnet {

double poisson_binomial_sf(std::span<const double> probs, int n_star) {
  for (double p : probs)
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
  if (n_star < 0 || n_star > static_cast<int>(probs.size()))
    throw std::invalid_argument("n_star outside [0, len(probs)]");
  if (n_star == 0) return 1.0;

  // dp[c] = P(count == c) for c < n_star; dp[n_star] absorbs P(count >= n_star).
  std::vector<double> dp(n_star + 1, 0.0);
  dp[0] = 1.0;
  for (double p : probs) {
    const double q = 1.0 - p;
    dp[n_star] += dp[n_star - 1] * p;
    for (int c = n_star - 1; c >= 1; --c) dp[c] = dp[c] * q + dp[c - 1] * p;
    dp[0] *= q;
  }
  double mass = 0.0;
  for (double v : dp) mass += v;
  double sf = dp[n_star];
  if (mass > 1.0) sf /= mass;  // round-off guard
  return std::clamp(sf, 0.0, 1.0);
}

double binomial_sf(int n, double p, int n_star) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
  if (n_star < 0 || n_star > n) throw std::invalid_argument("n_star outside [0, n]");
  if (n_star == 0) return 1.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;

  const double lp = std::log(p), lq = std::log1p(-p);
  auto log_term = [&](int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * lp +
           (n - k) * lq;
  };
  // Streaming logsumexp over k = n_star..n; terms are unimodal, so once past
  // the mode the far tail can be dropped.
  const double mode = n * p;
  double lmax = -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (int k = n_star; k <= n; ++k) {
    const double lt = log_term(k);
    if (lt > lmax) {
      acc = acc * std::exp(lmax - lt) + 1.0;
      lmax = lt;
    } else {
      acc += std::exp(lt - lmax);
      if (k > mode && lt - lmax < -45.0) break;
    }
  }
  if (!std::isfinite(lmax)) return 0.0;
  return std::clamp(std::exp(lmax + std::log(acc)), 0.0, 1.0);
}

namespace {

PairPValue pair_pvalue_known(const BipartiteGraph& g, const NullModel& model, int alpha, int beta,
                             std::int64_t observed) {
  PairPValue out;
  out.alpha = alpha;
  out.beta = beta;
  out.observed = observed;
  const int v = static_cast<int>(out.observed);
  switch (model.kind) {
    case ModelKind::BiCM: {
      std::vector<double> probs(g.num_top());
      for (int j = 0; j < g.num_top(); ++j)
        probs[j] = model.link_probability(j, alpha) * model.link_probability(j, beta);
      out.pvalue = poisson_binomial_sf(probs, v);
      break;
    }
    case ModelKind::BiPCM: {
      if (model.constrained == Layer::bottom) {
        out.pvalue = binomial_sf(g.num_top(), model.rates[alpha] * model.rates[beta], v);
      } else {
        // Constraining the top layer leaves per-top-node rates, so the pair
        // count is Poisson-Binomial.
        std::vector<double> probs(g.num_top());
        for (int j = 0; j < g.num_top(); ++j) probs[j] = model.rates[j] * model.rates[j];
        out.pvalue = poisson_binomial_sf(probs, v);
      }
      break;
    }
    case ModelKind::BiRGM:
      out.pvalue = binomial_sf(g.num_top(), model.uniform_p * model.uniform_p, v);
      break;
  }
  return out;
}

std::vector<PairPValue> pair_pvalues_impl(const BipartiteGraph& g, const NullModel& model,
                                          bool parallel) {
  if (model.n_top != g.num_top() || model.n_bot != g.num_bottom())
    throw std::invalid_argument("model shape does not match graph");
  const auto pairs = vmotif_pairs(g);
  std::vector<PairPValue> out(pairs.size());
  const std::int64_t n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (std::int64_t idx = 0; idx < n; ++idx) {
    const auto& [pair, count] = pairs[idx];
    out[idx] = pair_pvalue_known(g, model, pair.first, pair.second, count);
  }
  return out;
}

}  // namespace

PairPValue pair_pvalue(const BipartiteGraph& g, const NullModel& model, int alpha, int beta) {
  if (model.n_top != g.num_top() || model.n_bot != g.num_bottom())
    throw std::invalid_argument("model shape does not match graph");
  return pair_pvalue_known(g, model, alpha, beta, vmotif_count(g, alpha, beta));
}

std::vector<PairPValue> all_pair_pvalues(const BipartiteGraph& g, const NullModel& model) {
  return pair_pvalues_impl(g, model, true);
}

std::vector<PairPValue> all_pair_pvalues_serial(const BipartiteGraph& g, const NullModel& model) {
  return pair_pvalues_impl(g, model, false);
}

FdrResult fdr_select(std::vector<PairPValue> pvalues, std::int64_t m, double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("t outside (0,1)");
  if (m < static_cast<std::int64_t>(pvalues.size()))
    throw std::invalid_argument("m smaller than the number of evaluated pairs");
  FdrResult res;
  res.m = m;
  res.single_test_level = t;

  std::vector<double> sorted;
  sorted.reserve(pvalues.size());
  for (const auto& pv : pvalues) sorted.push_back(pv.pvalue);
  std::sort(sorted.begin(), sorted.end());
  // Hypotheses beyond the evaluated list have p = 1 and can never satisfy
  // p <= i*t/m, so scanning the evaluated prefix suffices.
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (sorted[i - 1] <= static_cast<double>(i) * t / static_cast<double>(m)) {
      res.threshold_index = i;
      res.threshold_pvalue = sorted[i - 1];
    }
  }
  if (res.threshold_index > 0) {
    for (const auto& pv : pvalues)
      if (pv.pvalue <= res.threshold_pvalue) res.kept.push_back(pv);
  }
  std::sort(res.kept.begin(), res.kept.end(), [](const PairPValue& a, const PairPValue& b) {
    return std::tie(a.alpha, a.beta) < std::tie(b.alpha, b.beta);
  });
  return res;
}

ValidatedProjection validated_projection(const BipartiteGraph& g, const NullModel& model, double t) {
  const std::int64_t nb = g.num_bottom();
  const std::int64_t m = nb * (nb - 1) / 2;
  ValidatedProjection out;
  out.fdr = fdr_select(all_pair_pvalues(g, model), m, t);
  std::vector<MonoGraph::Edge> edges;
  edges.reserve(out.fdr.kept.size());
  for (const auto& pv : out.fdr.kept)
    edges.push_back({pv.alpha, pv.beta, static_cast<double>(pv.observed)});
  out.graph = MonoGraph::from_edges(g.bottom_labels, std::move(edges));
  return out;
}

void write_validated_tsv(std::ostream& os, const BipartiteGraph& g, const FdrResult& fdr) {
  std::vector<std::tuple<std::string, std::string, std::int64_t, double>> rows;
  for (const auto& pv : fdr.kept) {
    std::string a = g.bottom_labels[pv.alpha], b = g.bottom_labels[pv.beta];
    if (b < a) std::swap(a, b);
    rows.emplace_back(std::move(a), std::move(b), pv.observed, pv.pvalue);
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& [a, b, v, p] : rows)
    os << a << '\t' << b << '\t' << v << '\t' << format_double(p) << '\n';
}

std::string fdr_summary_json(const FdrResult& fdr) {
  nlohmann::json j;
  j["m"] = fdr.m;
  j["t"] = fdr.single_test_level;
  j["threshold_index"] = fdr.threshold_index;
  j["threshold_pvalue"] = fdr.threshold_pvalue;
  j["kept_count"] = fdr.kept.size();
  return j.dump(2);
}

}  // namespace semnet
