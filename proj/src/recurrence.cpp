#include "choice_attach/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace choice_attach {

namespace {

constexpr int kIterationCap = 200;

std::string at_k(Index k) { return " (k=" + std::to_string(k) + ")"; }

}  // namespace

std::string_view to_string(EntryRepr repr) {
  return repr == EntryRepr::Direct ? "direct" : "log";
}

std::string_view to_string(PStarKind kind) { return kind == PStarKind::One ? "one" : "root"; }

std::string_view to_string(TailClass cls) {
  switch (cls) {
    case TailClass::StandardPA:
      return "standard-pa";
    case TailClass::GreedyLogCorrected:
      return "greedy-log-corrected";
    case TailClass::DoublyExponential:
      return "doubly-exponential";
    case TailClass::Condensation:
      return "condensation";
  }
  return "unknown";
}

double f_k_eval(const RankKernel& kernel, Index k, double x, double p) {
  x = clamp_unit(x, "f_k_eval");
  p = clamp_unit(p, "f_k_eval");
  const double bp = kernel.value_unchecked(p);
  const double bx = kernel.value_unchecked(x);
  // Grouped so the O(k) terms cancel before scaling.
  return static_cast<double>(k) * (bp - bx) + bp - 2.0 * x + 1.0;
}

double f_k_eval(const ModelParams& params, Index k, double x, double p) {
  return f_k_eval(RankKernel(params), k, x, p);
}

double g_k_eval(const RankKernel& kernel, Index k, double y, double q) {
  y = clamp_unit(y, "g_k_eval");
  q = clamp_unit(q, "g_k_eval");
  const double tq = kernel.tail_unchecked(q);
  const double ty = kernel.tail_unchecked(y);
  return static_cast<double>(k) * (ty - tq) - tq + 2.0 * y;
}

double next_pk(const RankKernel& kernel, Index k, double p_prev, double tol) {
  if (k < 1) throw ConfigError("next_pk: k must be >= 1");
  if (!(p_prev >= 0.0 && p_prev < 1.0)) throw DomainError("next_pk: p_prev outside [0, 1)" + at_k(k));
  const double kd = static_cast<double>(k);
  const double bp = kernel.value_unchecked(p_prev);
  const double resid_tol = tol * (kd + 2.0);
  auto f = [&](double x) { return kd * (bp - kernel.value_unchecked(x)) + bp - 2.0 * x + 1.0; };

  double lo = 0.0, hi = 1.0;
  double x = p_prev > 0.0 ? p_prev : 0.5;
  double step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kIterationCap; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx > 0.0) lo = x; else hi = x;
    if (std::abs(fx) <= resid_tol && (step <= tol || hi - lo <= tol)) return x;
    const double slope = kd * kernel.derivative_unchecked(x) + 2.0;
    double next = x + fx / slope;
    if (next == x) return x;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    step = std::abs(next - x);
    x = next;
  }
  throw NonConvergence("next_pk: no convergence within iteration cap" + at_k(k));
}

double next_pk(const ModelParams& params, Index k, double p_prev, double tol) {
  return next_pk(RankKernel(params), k, p_prev, tol);
}

double next_qk(const RankKernel& kernel, Index k, double q_prev, double tol) {
  if (k < 1) throw ConfigError("next_qk: k must be >= 1");
  if (!(q_prev > 0.0 && q_prev <= 1.0)) throw DomainError("next_qk: q_prev outside (0, 1]" + at_k(k));
  const double kd = static_cast<double>(k);
  const double tq = kernel.tail_unchecked(q_prev);
  const double resid_tol = tol * (kd + 2.0);
  auto g = [&](double y) { return kd * (kernel.tail_unchecked(y) - tq) - tq + 2.0 * y; };

  // g(0) < 0 < g(q_prev); the leading-order solution bounds the root above.
  double lo = 0.0, hi = q_prev;
  double y = std::min(0.5 * (kd + 1.0) * tq, q_prev);
  double step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kIterationCap; ++it) {
    const double gy = g(y);
    if (gy == 0.0) return y;
    if (gy < 0.0) lo = y; else hi = y;
    if (std::abs(gy) <= resid_tol && (step <= tol * y || hi - lo <= tol * hi)) return y;
    const double slope = kd * kernel.tail_derivative_unchecked(y) + 2.0;
    double next = y - gy / slope;
    if (next == y) return y;
    if (!(next > lo && next < hi)) next = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
    step = std::abs(next - y);
    y = next;
  }
  throw NonConvergence("next_qk: no convergence within iteration cap" + at_k(k));
}

double next_qk(const ModelParams& params, Index k, double q_prev, double tol) {
  return next_qk(RankKernel(params), k, q_prev, tol);
}

double greedy_pk_step(Index k, double p_prev) {
  if (k < 1) throw ConfigError("greedy_pk_step: k must be >= 1");
  const double kd = static_cast<double>(k);
  return std::sqrt((kd + 1.0) * (kd * p_prev * p_prev + 1.0)) / kd - 1.0 / kd;
}

double log_space_step(const RankKernel& kernel, Index k, double log_q_prev) {
  const double lead = std::log(0.5 * (static_cast<double>(k) + 1.0) * kernel.leading_tail_coefficient());
  return lead + kernel.params().s * log_q_prev;
}

PkStepper::PkStepper(const ModelParams& params, double tol)
    : kernel_(params), tol_(tol), greedy_(params.r == 2 && params.s == 1) {
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
}

const PkEntry& PkStepper::advance() {
  const PkEntry prev = current_;
  PkEntry next;
  next.k = prev.k + 1;
  const Index k = next.k;
  if (prev.q < kLogSpaceSwitch && kernel_.params().s >= 2) {
    next.repr = EntryRepr::LogSpace;
    next.log_q = log_space_step(kernel_, k, prev.log_q);
    next.q = std::exp(next.log_q);
    next.p = 1.0 - next.q;
    next.residual = std::numeric_limits<double>::quiet_NaN();
  } else if (prev.q < kQSpaceSwitch && !greedy_) {
    next.q = next_qk(kernel_, k, prev.q, tol_);
    next.p = 1.0 - next.q;
    next.log_q = std::log(next.q);
    next.residual = std::abs(g_k_eval(kernel_, k, next.q, prev.q));
  } else {
    next.p = greedy_ ? greedy_pk_step(k, prev.p) : next_pk(kernel_, k, prev.p, tol_);
    next.q = 1.0 - next.p;
    next.log_q = std::log1p(-next.p);
    next.residual = std::abs(f_k_eval(kernel_, k, next.p, prev.p));
  }
  current_ = next;
  return current_;
}

PkTable pk_sequence(const ModelParams& params, Index kmax, double tol) {
  if (kmax < 0) throw ConfigError("kmax must be >= 0");
  PkStepper stepper(params, tol);
  PkTable table{params, tol, {}};
  table.entries.reserve(static_cast<std::size_t>(kmax) + 1);
  table.entries.push_back(stepper.current());
  for (Index k = 1; k <= kmax; ++k) table.entries.push_back(stepper.advance());
  return table;
}

IntegerPolynomial limit_polynomial(const ModelParams& params) {
  return brs_polynomial(params) + IntegerPolynomial(std::vector<BigInt>{1, -2});
}

PStarResult smallest_root_in_unit_interval(const IntegerPolynomial& f) {
  if (f.coefficient(0) == 0) throw DomainError("smallest_root_in_unit_interval: f(0) must be nonzero");
  PStarResult out;
  const IntegerPolynomial deflated = deflate_root_at_one(f, &out.one_multiplicity);
  out.certified_polynomial = squarefree_part(deflated);
  if (out.certified_polynomial.degree() < 1) return out;

  const SturmSequence sturm(out.certified_polynomial);
  BigRational lo = 0, hi = 1;
  out.sturm_variations_at_zero = sturm.sign_variations(lo);
  out.sturm_variations_at_one = sturm.sign_variations(hi);
  if (out.roots_in_unit_interval() == 0) return out;

  // Bisect (lo, hi] keeping at least one root inside; 2^-40 < 1e-12.
  int v_lo = out.sturm_variations_at_zero;
  for (int i = 0; i < 40; ++i) {
    const BigRational mid = (lo + hi) / 2;
    const int v_mid = sturm.sign_variations(mid);
    if (v_lo - v_mid >= 1) {
      hi = mid;
    } else {
      lo = mid;
      v_lo = v_mid;
    }
  }
  out.kind = PStarKind::Root;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.value = static_cast<double>((lo + hi) / 2);
  return out;
}

PStarResult pstar(const ModelParams& params) { return smallest_root_in_unit_interval(limit_polynomial(params)); }

int threshold_r(int s, std::optional<int> r_cap) {
  if (s < 1) throw ConfigError("threshold_r: s must be >= 1");
  const int cap = r_cap.value_or(default_threshold_cap(s));
  if (cap < 2 * s) throw ConfigError("threshold_r: r_cap must be >= 2s");
  const int last = std::min(cap, kMaxSampleCount);
  for (int r = s; r <= last; ++r)
    if (pstar(make_params(r, s)).kind == PStarKind::Root) return r;
  throw NotFound("threshold_r: no r <= " + std::to_string(last) + " with p_* < 1 for s=" + std::to_string(s));
}

TailClass classify_tail(const ModelParams& params) {
  params.validate();
  if (params.s == 1) {
    if (params.r == 1) return TailClass::StandardPA;
    if (params.r == 2) return TailClass::GreedyLogCorrected;
    return TailClass::Condensation;
  }
  return pstar(params).kind == PStarKind::One ? TailClass::DoublyExponential : TailClass::Condensation;
}

double cutoff_bound(const RankKernel& kernel, Index k) {
  const int s = kernel.params().s;
  const double base = 2.0 / (kernel.leading_tail_coefficient() * (static_cast<double>(k) + 3.0));
  return std::pow(base, 1.0 / (s - 1));
}

CutoffResult cutoff_k0(const ModelParams& params, Index k_search_max, double tol) {
  if (params.s < 2) throw ConfigError("cutoff_k0: requires s >= 2");
  if (classify_tail(params) != TailClass::DoublyExponential)
    throw ConfigError("cutoff_k0: model is not in the doubly-exponential class");
  PkStepper stepper(params, tol);
  for (Index k = 1; k <= k_search_max; ++k) {
    const PkEntry& e = stepper.advance();
    const double bound = cutoff_bound(stepper.kernel(), k);
    if (e.log_q < std::log(bound)) return {k, e.p, e.q, bound};
  }
  throw NotFound("cutoff_k0: bound not met for k <= " + std::to_string(k_search_max));
}

}  // namespace choice_attach
