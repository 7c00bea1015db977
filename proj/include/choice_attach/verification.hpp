#pragma once

#include "choice_attach/recurrence.hpp"
#include "choice_attach/tree_simulator.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace choice_attach {

/// Two-sided pass band for every frequency comparison, in binomial
/// standard errors.
inline constexpr double kSigmaBand = 4.0;

/// One outcome of a single-step transition of F(k).
struct TransitionOutcome {
  std::int64_t delta = 0;
  double probability = 0.0;
  std::int64_t count = 0;
  double frequency = 0.0;
  /// sqrt(p (1 - p) / trials).
  double sigma = 0.0;
  bool pass = false;
};

struct TransitionReport {
  Time m = 0;
  std::int64_t k = 0;
  std::int64_t trials = 0;
  std::int64_t F_k = 0;
  std::int64_t F_km1 = 0;
  /// Outcomes +1, 1-k, +2 in that order.
  std::array<TransitionOutcome, 3> outcomes;
  bool all_pass() const;
};

/// Theoretical probabilities of the increments +1, 1-k, +2 given the
/// census fractions F(k)/2m and F(k-1)/2m.
std::array<double, 3> transition_probabilities(const RankKernel& kernel, double frac_k, double frac_km1);

/// Repeats one growth step from copies of `frozen` (the tree is restored
/// from a snapshot before every trial; the generator keeps advancing so
/// trials are independent) and compares the increment frequencies of F(k)
/// with the Markov transition probabilities. Requires trials >= 10^4 and
/// with-replacement sampling.
TransitionReport transition_frequency_test(const TreeState& frozen, std::int64_t k, std::int64_t trials);

struct ConvergenceRow {
  std::int64_t k = 0;
  double p_theory = 0.0;
  double p_empirical = 0.0;
  double stderr_ = 0.0;
  double gap = 0.0;
};

struct ConvergenceReport {
  ModelParams params;
  Time steps = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<ConvergenceRow> rows;  // k = 1..kmax
  /// Seed means at the final time.
  double mean_max_degree_fraction = 0.0;
  double mean_pm_estimate = 0.0;

  double max_gap(std::int64_t k_last) const;
};

/// Seed-averaged F_m(k)/2m at m = 1 + steps against the recurrence values.
ConvergenceReport convergence_report(const ModelParams& params, Time steps, int n_seeds,
                                     std::int64_t kmax, double tol = kDefaultTolerance,
                                     std::uint64_t base_seed = 1, unsigned threads = 0);

struct TailRatioRow {
  Index k = 0;
  double ratio = 0.0;  // log q_{k+1} / log q_k
};

struct TailRatioReport {
  std::vector<TailRatioRow> rows;
  double band_lo = 0.0;
  double band_hi = 0.0;
  /// First k from which every later ratio stays inside the band.
  std::optional<Index> settled_from;
};

/// Ratios of consecutive log q over the table, for doubly-exponential
/// models. ConfigError if the class is wrong or fewer than three entries.
TailRatioReport tail_ratio_diagnostic(const PkTable& table);

struct GreedyRow {
  Index k = 0;
  double p = 0.0;
  double a = 0.0;  // (1 - p_k) log(k + 1)
};

struct GreedySeries {
  std::vector<GreedyRow> rows;  // k = 0..kmax
  /// k >= 2 with p_k <= 1 - 2/log(k+1).
  std::vector<Index> lower_band_violations;
  /// k > 100 with a_k outside (1, 2).
  std::vector<Index> a_band_violations;
};

/// Series for r = 2, s = 1 built with the closed-form step.
GreedySeries greedy_asymptotic_series(Index kmax);

struct QuadraticDecayReport {
  double threshold = 0.0;
  Index checked = 0;
  std::vector<Index> violations;
};

/// (sum_{i>=s} (2i+1) max(a_i, 0))^(-1/(s-1)) over the tail coefficients.
double quadratic_decay_threshold(const ModelParams& params);

/// For k >= 4 with q_k below the threshold, checks
/// q_{k+1} < ((k-1)/k)^2 q_k. Requires s >= 2.
QuadraticDecayReport quadratic_decay_check(const PkTable& table);

struct LeadingOrderReport {
  Index checked = 0;
  /// Entries within rounding of the bound (relative margin below double
  /// resolution, or LogSpace entries that equal it by construction).
  Index unresolved = 0;
  std::vector<Index> violations;
};

/// For k > k0: q_k < ((k+1)/2) C(r,s) q_{k-1}^s, compared in log space.
/// The true margin is about k C(r,s) q_k^(s-1) / 2 relative, which falls
/// below double precision quickly; such entries count as unresolved and
/// only a log q_k above the bound by more than rounding is a violation.
LeadingOrderReport leading_order_bound_check(const PkTable& table, Index k0);

struct Enclosure {
  Index k = 0;
  double lower = 0.0;
  double upper = 0.0;
};

struct SandwichResult {
  std::vector<Enclosure> rows;  // k = 0..min(kmax, record_limit)
  /// Largest k whose upper bound is still below p_cap (so p_k < p_cap).
  std::optional<Index> last_k_below;
  /// First k whose lower bound exceeds p_cap (so p_k > p_cap).
  std::optional<Index> first_k_above;
};

/// h_k(x) = k B'(x) + 2, the negated x-slope of f_k.
double sandwich_slope(const RankKernel& kernel, Index k, double x);

/// Interval enclosures p_{k-1} + f(p_{k-1}) / h_k(p_cap) < p_k <
/// p_{k-1} + f(p_{k-1}) / h_k(p_{k-1}) with f(p) = B(p) - 2p + 1, valid
/// while p_k < p_cap and h_k is increasing there, i.e.
/// p_cap < (r-s)/(r-1) (DomainError otherwise). The upper sequence stops
/// once it passes p_cap; the lower one runs until it does or kmax.
SandwichResult sandwich_bounds(const ModelParams& params, double p_cap, Index kmax,
                               Index record_limit = 0);

}  // namespace choice_attach
