#pragma once

#include "choice_attach/integer_polynomial.hpp"
#include "choice_attach/model.hpp"

#include <vector>

namespace choice_attach {

/// Binomial coefficient C(n, k); zero when k > n.
BigInt binom_exact(unsigned n, unsigned k);

/// Floating-point evaluator for the rank-s kernel of a model.
///
/// value(p) is B(p) = P(Bin(r, p) > r - s): the chance that the rank-s
/// entry of r independent draws lands in a class each draw hits with
/// probability p. tail(q) = P(Bin(r, q) >= s) = 1 - B(1 - q) is the same
/// quantity seen from the complement class and keeps full relative
/// accuracy for tiny q.
///
/// Both are sums of nonnegative Bernstein terms, so there is no
/// cancellation anywhere in [0, 1]. Coefficients are precomputed; the
/// object is immutable and cheap to share across threads.
class RankKernel {
 public:
  explicit RankKernel(const ModelParams& params);

  const ModelParams& params() const { return params_; }

  /// B(p). Inputs within 1e-15 of [0, 1] are clamped; DomainError beyond.
  double value(double p) const;
  /// B'(x) = r C(r-1, s-1) x^(r-s) (1-x)^(s-1).
  double derivative(double x) const;
  /// P(Bin(r, q) >= s).
  double tail(double q) const;
  /// d/dq of tail(q) = r C(r-1, s-1) q^(s-1) (1-q)^(r-s).
  double tail_derivative(double q) const;

  /// C(r, s) as a double; the leading coefficient of tail(q) ~ C(r,s) q^s.
  double leading_tail_coefficient() const { return binom_rs_; }

  // Unchecked variants for hot loops; caller guarantees x in [0, 1].
  double value_unchecked(double p) const;
  double derivative_unchecked(double x) const;
  double tail_unchecked(double q) const;
  double tail_derivative_unchecked(double q) const;

 private:
  ModelParams params_;
  std::vector<double> binom_r_;  // C(r, j), j = 0..r
  double slope_coeff_ = 0.0;     // r C(r-1, s-1)
  double binom_rs_ = 0.0;
};

/// Clamps x to [0, 1] when within 1e-15 of it; throws DomainError otherwise.
double clamp_unit(double x, const char* what);

double brs_eval(const ModelParams& params, double p);
double brs_derivative(const ModelParams& params, double x);

/// Exact expansion of B(p) = sum_{i<s} C(r,i) p^(r-i) (1-p)^i in powers of p.
IntegerPolynomial brs_polynomial(const ModelParams& params);

/// Exact expansion of P(Bin(r, q) >= s) in powers of q; only q^s..q^r occur.
IntegerPolynomial tail_polynomial(const ModelParams& params);

}  // namespace choice_attach
