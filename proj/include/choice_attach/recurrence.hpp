#pragma once

#include "choice_attach/binomial_kernel.hpp"
#include "choice_attach/integer_polynomial.hpp"
#include "choice_attach/model.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace choice_attach {

using Index = std::int64_t;

inline constexpr double kDefaultTolerance = 1e-13;
/// Below this q_{k-1}, entries are solved in q = 1 - p.
inline constexpr double kQSpaceSwitch = 1e-3;
/// Below this q_{k-1} (and s >= 2), entries advance by the leading-order
/// log relation and are flagged LogSpace.
inline constexpr double kLogSpaceSwitch = 1e-150;

enum class EntryRepr { Direct, LogSpace };
std::string_view to_string(EntryRepr repr);

/// One term of the limit sequence. p + q == 1 up to rounding; for LogSpace
/// entries q may underflow to zero and log_q is authoritative.
struct PkEntry {
  Index k = 0;
  double p = 0.0;
  double q = 1.0;
  double log_q = 0.0;
  EntryRepr repr = EntryRepr::Direct;
  /// |f_k| (or |g_k| when solved in q) at the returned root; NaN for LogSpace.
  double residual = 0.0;
};

struct PkTable {
  ModelParams params;
  double tol = kDefaultTolerance;
  std::vector<PkEntry> entries;  // entries[k].k == k, starting at k = 0

  Index kmax() const { return static_cast<Index>(entries.size()) - 1; }
  const PkEntry& at(Index k) const { return entries.at(static_cast<std::size_t>(k)); }
};

/// f_k(x, p) = (k+1) B(p) - k B(x) - 2x + 1.
double f_k_eval(const RankKernel& kernel, Index k, double x, double p);
double f_k_eval(const ModelParams& params, Index k, double x, double p);

/// g_k(y, q) = f_k(1-y, 1-q) = k T(y) - (k+1) T(q) + 2y with T the tail.
double g_k_eval(const RankKernel& kernel, Index k, double y, double q);

/// Unique root x in (0,1) of f_k(x, p_prev). Safeguarded Newton inside a
/// maintained sign bracket. Throws NonConvergence after the iteration cap.
double next_pk(const RankKernel& kernel, Index k, double p_prev, double tol = kDefaultTolerance);
double next_pk(const ModelParams& params, Index k, double p_prev, double tol = kDefaultTolerance);

/// Root y of g_k(y, q_prev), i.e. 1 - next_pk(1 - q_prev) computed entirely
/// in q so that tiny q keep their relative precision. `tol` is relative.
double next_qk(const RankKernel& kernel, Index k, double q_prev, double tol = kDefaultTolerance);
double next_qk(const ModelParams& params, Index k, double q_prev, double tol = kDefaultTolerance);

/// Closed-form step for r = 2, s = 1: sqrt((k+1)(k p^2 + 1))/k - 1/k.
double greedy_pk_step(Index k, double p_prev);

/// log q_k = log((k+1) C(r,s) / 2) + s log q_{k-1}.
double log_space_step(const RankKernel& kernel, Index k, double log_q_prev);

/// Streams the sequence one entry at a time without storing it. Starts at
/// k = 0 (p = 0, q = 1) and chooses the representation per step.
class PkStepper {
 public:
  explicit PkStepper(const ModelParams& params, double tol = kDefaultTolerance);

  const PkEntry& current() const { return current_; }
  /// Computes entry k+1. Errors carry the failing k.
  const PkEntry& advance();
  const RankKernel& kernel() const { return kernel_; }

 private:
  RankKernel kernel_;
  double tol_;
  bool greedy_;
  PkEntry current_;
};

/// Entries k = 0..kmax.
PkTable pk_sequence(const ModelParams& params, Index kmax, double tol = kDefaultTolerance);

enum class PStarKind { One, Root };
std::string_view to_string(PStarKind kind);

/// Limit of the sequence: the smallest positive root of B(p) - 2p + 1.
struct PStarResult {
  PStarKind kind = PStarKind::One;
  /// Midpoint of the bracket when kind == Root; 1 otherwise.
  double value = 1.0;
  /// Dyadic isolating interval (lo, hi] of the root; [1, 1] when One.
  BigRational bracket_lo = 1;
  BigRational bracket_hi = 1;
  /// Number of (p - 1) factors divided out of B(p) - 2p + 1.
  int one_multiplicity = 0;
  /// Sturm variations of the squarefree deflated polynomial at 0 and 1;
  /// their difference is the number of distinct roots in (0, 1).
  int sturm_variations_at_zero = 0;
  int sturm_variations_at_one = 0;
  int roots_in_unit_interval() const { return sturm_variations_at_zero - sturm_variations_at_one; }
  /// Squarefree part of the deflated polynomial the certificate refers to.
  IntegerPolynomial certified_polynomial;
};

/// B(p) - 2p + 1 as an exact polynomial.
IntegerPolynomial limit_polynomial(const ModelParams& params);

/// Smallest root of `f` in (0, 1) after dividing out every (x - 1)
/// factor, counted on the squarefree part so roots of even multiplicity
/// count. Requires f(0) != 0.
PStarResult smallest_root_in_unit_interval(const IntegerPolynomial& f);

/// Decides p_* = 1 exactly by Sturm counting; isolates the smallest root
/// to width < 1e-12 otherwise.
PStarResult pstar(const ModelParams& params);

inline int default_threshold_cap(int s) { return 4 * s + 64; }

/// Smallest r in [s, r_cap] with p_* < 1. r_cap is clipped to
/// kMaxSampleCount; NotFound when the range is exhausted.
int threshold_r(int s, std::optional<int> r_cap = std::nullopt);

enum class TailClass { StandardPA, GreedyLogCorrected, DoublyExponential, Condensation };
std::string_view to_string(TailClass cls);

TailClass classify_tail(const ModelParams& params);

struct CutoffResult {
  Index k0 = 0;
  double p_k0 = 0.0;
  double q_k0 = 1.0;
  double bound_rhs = 0.0;
};

/// (2 / (C(r,s) (k+3)))^(1/(s-1)).
double cutoff_bound(const RankKernel& kernel, Index k);

/// First k with q_k below cutoff_bound(k). Requires s >= 2 and the
/// doubly-exponential class (ConfigError otherwise); NotFound past
/// k_search_max.
CutoffResult cutoff_k0(const ModelParams& params, Index k_search_max, double tol = kDefaultTolerance);

}  // namespace choice_attach
