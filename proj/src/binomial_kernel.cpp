#include "choice_attach/binomial_kernel.hpp"

#include <cmath>
#include <string>

namespace choice_attach {

BigInt binom_exact(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt c = 1;
  for (unsigned i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

double clamp_unit(double x, const char* what) {
  constexpr double kSlack = 1e-15;
  if (std::isnan(x) || x < -kSlack || x > 1.0 + kSlack)
    throw DomainError(std::string(what) + ": argument outside [0, 1]: " + std::to_string(x));
  return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
}

RankKernel::RankKernel(const ModelParams& params) : params_(params) {
  params_.validate();
  const int r = params_.r;
  binom_r_.resize(static_cast<std::size_t>(r) + 1);
  for (int j = 0; j <= r; ++j) binom_r_[j] = binom_exact(r, j).convert_to<double>();
  slope_coeff_ = r * binom_exact(r - 1, params_.s - 1).convert_to<double>();
  binom_rs_ = binom_r_[params_.s];
}

namespace {

double ipow(double base, int exp) {
  double result = 1.0;
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

// sum_{j=lo}^{n} C(n,j) x^j (1-x)^(n-j). For x > 1/2 the complementary
// terms j < lo are the small ones, so the result is 1 minus their sum.
double upper_binomial_sum(const std::vector<double>& binom, int n, int lo, double x) {
  const double y = 1.0 - x;
  double sum = 0.0;
  if (x <= 0.5) {
    for (int j = n; j >= lo; --j) sum += binom[j] * ipow(x, j) * ipow(y, n - j);
    return sum;
  }
  for (int j = 0; j < lo; ++j) sum += binom[j] * ipow(x, j) * ipow(y, n - j);
  return 1.0 - sum;
}

}  // namespace

double RankKernel::value_unchecked(double p) const {
  // Bin(r, p) > r - s  <=>  successes j >= r - s + 1.
  return upper_binomial_sum(binom_r_, params_.r, params_.r - params_.s + 1, p);
}

double RankKernel::tail_unchecked(double q) const {
  return upper_binomial_sum(binom_r_, params_.r, params_.s, q);
}

double RankKernel::derivative_unchecked(double x) const {
  const int r = params_.r, s = params_.s;
  return slope_coeff_ * ipow(x, r - s) * ipow(1.0 - x, s - 1);
}

double RankKernel::tail_derivative_unchecked(double q) const {
  const int r = params_.r, s = params_.s;
  return slope_coeff_ * ipow(q, s - 1) * ipow(1.0 - q, r - s);
}

double RankKernel::value(double p) const { return value_unchecked(clamp_unit(p, "brs_eval")); }

double RankKernel::derivative(double x) const {
  return derivative_unchecked(clamp_unit(x, "brs_derivative"));
}

double RankKernel::tail(double q) const { return tail_unchecked(clamp_unit(q, "tail")); }

double RankKernel::tail_derivative(double q) const {
  return tail_derivative_unchecked(clamp_unit(q, "tail_derivative"));
}

double brs_eval(const ModelParams& params, double p) { return RankKernel(params).value(p); }

double brs_derivative(const ModelParams& params, double x) {
  return RankKernel(params).derivative(x);
}

IntegerPolynomial brs_polynomial(const ModelParams& params) {
  params.validate();
  const int r = params.r;
  IntegerPolynomial out;
  for (int i = 0; i < params.s; ++i)
    out += IntegerPolynomial::monomial(binom_exact(r, i), r - i) * one_minus_x_power(i);
  return out;
}

IntegerPolynomial tail_polynomial(const ModelParams& params) {
  params.validate();
  const int r = params.r;
  IntegerPolynomial out;
  for (int i = params.s; i <= r; ++i)
    out += IntegerPolynomial::monomial(binom_exact(r, i), i) * one_minus_x_power(r - i);
  return out;
}

}  // namespace choice_attach
