#include "choice_attach/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace choice_attach {

bool TransitionReport::all_pass() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.pass; });
}

std::array<double, 3> transition_probabilities(const RankKernel& kernel, double frac_k, double frac_km1) {
  const double bk = kernel.value(frac_k);
  const double bkm1 = kernel.value(frac_km1);
  return {1.0 - bk, bk - bkm1, bkm1};
}

TransitionReport transition_frequency_test(const TreeState& frozen, std::int64_t k, std::int64_t trials) {
  if (trials < 10'000) throw ConfigError("transition_frequency_test: need at least 10^4 trials");
  if (k < 1) throw ConfigError("transition_frequency_test: k must be >= 1");
  if (frozen.params.sampling != SamplingMode::WithReplacement)
    throw ConfigError("transition_frequency_test: Markov probabilities assume with-replacement draws");

  const DegreeCensus before = census(frozen, k);
  TransitionReport report;
  report.m = frozen.m;
  report.k = k;
  report.trials = trials;
  report.F_k = before.F[k];
  report.F_km1 = before.F[k - 1];
  const double two_m = 2.0 * static_cast<double>(frozen.m);
  const auto probs = transition_probabilities(RankKernel(frozen.params), report.F_k / two_m, report.F_km1 / two_m);
  const std::array<std::int64_t, 3> deltas{1, 1 - k, 2};

  TreeState work = frozen;
  std::array<std::int64_t, 3> counts{};
  StepRecord record;
  for (std::int64_t t = 0; t < trials; ++t) {
    work.m = frozen.m;
    work.degrees = frozen.degrees;
    work.endpoints = frozen.endpoints;
    grow_step(work, record);
    const std::int64_t delta = record.delta_F(k);
    for (std::size_t i = 0; i < 3; ++i)
      if (delta == deltas[i]) ++counts[i];
  }

  const double n = static_cast<double>(trials);
  for (std::size_t i = 0; i < 3; ++i) {
    auto& o = report.outcomes[i];
    o.delta = deltas[i];
    o.probability = probs[i];
    o.count = counts[i];
    o.frequency = static_cast<double>(counts[i]) / n;
    o.sigma = std::sqrt(std::max(0.0, probs[i] * (1.0 - probs[i])) / n);
    const double gap = std::abs(o.frequency - o.probability);
    // A degenerate outcome (sigma == 0) must match exactly, up to rounding
    // in the probability itself.
    o.pass = o.sigma > 0.0 ? gap < kSigmaBand * o.sigma : gap <= 1e-12;
  }
  return report;
}

double ConvergenceReport::max_gap(std::int64_t k_last) const {
  double worst = 0.0;
  for (const auto& row : rows)
    if (row.k <= k_last) worst = std::max(worst, row.gap);
  return worst;
}

ConvergenceReport convergence_report(const ModelParams& params, Time steps, int n_seeds,
                                     std::int64_t kmax, double tol, std::uint64_t base_seed,
                                     unsigned threads) {
  const PkTable theory = pk_sequence(params, kmax, tol);
  const auto sims = run_sims(params, steps, base_seed, n_seeds, {1 + steps}, kmax, threads);

  ConvergenceReport report;
  report.params = params;
  report.steps = steps;
  const double n = static_cast<double>(n_seeds);
  for (const auto& sim : sims) {
    report.seeds.push_back(sim.seed);
    const auto& c = sim.checkpoints.back().census;
    report.mean_max_degree_fraction += static_cast<double>(c.max_degree) / (2.0 * c.m) / n;
    report.mean_pm_estimate += sim.pm_estimate / n;
  }
  for (std::int64_t k = 1; k <= kmax; ++k) {
    double sum = 0.0, sumsq = 0.0;
    for (const auto& sim : sims) {
      const double x = sim.checkpoints.back().census.fraction(k);
      sum += x;
      sumsq += x * x;
    }
    const double mean = sum / n;
    const double var = n > 1 ? std::max(0.0, (sumsq - n * mean * mean) / (n - 1)) : 0.0;
    ConvergenceRow row;
    row.k = k;
    row.p_theory = theory.at(k).p;
    row.p_empirical = mean;
    row.stderr_ = std::sqrt(var / n);
    row.gap = std::abs(mean - row.p_theory);
    report.rows.push_back(row);
  }
  return report;
}

TailRatioReport tail_ratio_diagnostic(const PkTable& table) {
  const int s = table.params.s;
  if (s < 2 || classify_tail(table.params) != TailClass::DoublyExponential)
    throw ConfigError("tail_ratio_diagnostic: model is not in the doubly-exponential class");
  if (table.kmax() < 2) throw ConfigError("tail_ratio_diagnostic: need entries up to k >= 2");
  TailRatioReport report;
  report.band_lo = s - 0.1;
  report.band_hi = s + 0.1;
  for (Index k = 1; k < table.kmax(); ++k) {
    const double ratio = table.at(k + 1).log_q / table.at(k).log_q;
    report.rows.push_back({k, ratio});
  }
  for (auto it = report.rows.rbegin(); it != report.rows.rend(); ++it) {
    if (!(it->ratio >= report.band_lo && it->ratio <= report.band_hi)) break;
    report.settled_from = it->k;
  }
  return report;
}

GreedySeries greedy_asymptotic_series(Index kmax) {
  if (kmax < 0) throw ConfigError("greedy_asymptotic_series: kmax must be >= 0");
  GreedySeries series;
  series.rows.reserve(static_cast<std::size_t>(kmax) + 1);
  double p = 0.0;
  series.rows.push_back({0, 0.0, 0.0});
  for (Index k = 1; k <= kmax; ++k) {
    p = greedy_pk_step(k, p);
    const double lg = std::log(static_cast<double>(k) + 1.0);
    const double a = (1.0 - p) * lg;
    series.rows.push_back({k, p, a});
    if (k >= 2 && !(p > 1.0 - 2.0 / lg)) series.lower_band_violations.push_back(k);
    if (k > 100 && !(a > 1.0 && a < 2.0)) series.a_band_violations.push_back(k);
  }
  return series;
}

double quadratic_decay_threshold(const ModelParams& params) {
  if (params.s < 2) throw ConfigError("quadratic decay threshold requires s >= 2");
  const IntegerPolynomial tail = tail_polynomial(params);
  BigInt weight = 0;
  for (int i = params.s; i <= params.r; ++i) {
    const BigInt a = tail.coefficient(i);
    if (a > 0) weight += (2 * i + 1) * a;
  }
  return std::pow(weight.convert_to<double>(), -1.0 / (params.s - 1));
}

QuadraticDecayReport quadratic_decay_check(const PkTable& table) {
  QuadraticDecayReport report;
  report.threshold = quadratic_decay_threshold(table.params);
  const double log_threshold = std::log(report.threshold);
  for (Index k = 4; k < table.kmax(); ++k) {
    const auto& cur = table.at(k);
    if (!(cur.log_q < log_threshold)) continue;
    ++report.checked;
    const double factor = static_cast<double>(k - 1) / static_cast<double>(k);
    if (!(table.at(k + 1).log_q < 2.0 * std::log(factor) + cur.log_q)) report.violations.push_back(k);
  }
  return report;
}

LeadingOrderReport leading_order_bound_check(const PkTable& table, Index k0) {
  LeadingOrderReport report;
  const RankKernel kernel(table.params);
  for (Index k = std::max<Index>(k0 + 1, 1); k <= table.kmax(); ++k) {
    const auto& cur = table.at(k);
    const double bound = log_space_step(kernel, k, table.at(k - 1).log_q);
    ++report.checked;
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(bound);
    if (cur.repr == EntryRepr::Direct && cur.log_q < bound - slack) continue;
    if (cur.log_q <= bound + slack)
      ++report.unresolved;
    else
      report.violations.push_back(k);
  }
  return report;
}

double sandwich_slope(const RankKernel& kernel, Index k, double x) {
  return static_cast<double>(k) * kernel.derivative(x) + 2.0;
}

SandwichResult sandwich_bounds(const ModelParams& params, double p_cap, Index kmax, Index record_limit) {
  const RankKernel kernel(params);
  if (params.r < 2) throw DomainError("sandwich_bounds: needs r >= 2");
  const double monotone_limit = static_cast<double>(params.r - params.s) / (params.r - 1);
  if (!(p_cap > 0.0 && p_cap < monotone_limit))
    throw DomainError("sandwich_bounds: p_cap must lie in (0, " + std::to_string(monotone_limit) +
                      ") where the slope is increasing");
  // long double keeps the ~1e-9 late increments from drowning in rounding.
  auto limit_gap = [&](long double p) {
    return static_cast<long double>(kernel.value_unchecked(static_cast<double>(p))) - 2.0L * p + 1.0L;
  };
  const double slope_cap = kernel.derivative_unchecked(p_cap);

  SandwichResult out;
  long double lower = 0.0L, upper = 0.0L;
  bool upper_live = true;
  out.rows.push_back({0, 0.0, 0.0});
  for (Index k = 1; k <= kmax; ++k) {
    const long double kd = static_cast<long double>(k);
    lower += limit_gap(lower) / (kd * slope_cap + 2.0L);
    if (upper_live) {
      upper += limit_gap(upper) / (kd * kernel.derivative_unchecked(static_cast<double>(upper)) + 2.0L);
      if (upper >= p_cap) {
        upper_live = false;
        out.last_k_below = k - 1;
      }
    }
    if (k <= record_limit)
      out.rows.push_back({k, static_cast<double>(lower), upper_live ? static_cast<double>(upper) : 1.0});
    if (lower > p_cap) {
      out.first_k_above = k;
      break;
    }
  }
  return out;
}

}  // namespace choice_attach
