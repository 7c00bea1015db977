#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace choice_attach {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Dense univariate polynomial with arbitrary-precision integer
/// coefficients, constant term first. Always normalized: no trailing zero
/// coefficients, so the zero polynomial has an empty coefficient vector.
class IntegerPolynomial {
 public:
  IntegerPolynomial() = default;
  explicit IntegerPolynomial(std::vector<BigInt> coefficients);

  static IntegerPolynomial constant(const BigInt& c);
  /// c * x^power
  static IntegerPolynomial monomial(const BigInt& c, int power);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  /// Coefficient of x^power; zero past the degree.
  BigInt coefficient(int power) const;
  /// Requires a nonzero polynomial.
  const BigInt& leading() const { return coeffs_.back(); }

  IntegerPolynomial derivative() const;
  /// x -> 1 - x substitution.
  IntegerPolynomial compose_one_minus() const;
  /// Positive gcd of the coefficients (0 for the zero polynomial).
  BigInt content() const;
  /// Divides by the positive content; keeps the sign of the leading term.
  IntegerPolynomial primitive_part() const;

  BigRational evaluate(const BigRational& x) const;
  /// Horner in double. For diagnostics; not used by exact decisions.
  double evaluate(double x) const;
  /// Sign (-1, 0, 1) of the value at x, in integer arithmetic only.
  int sign_at(const BigRational& x) const;

  IntegerPolynomial operator-() const;
  IntegerPolynomial& operator+=(const IntegerPolynomial& other);
  IntegerPolynomial& operator-=(const IntegerPolynomial& other);
  IntegerPolynomial& operator*=(const BigInt& c);

  friend IntegerPolynomial operator+(IntegerPolynomial a, const IntegerPolynomial& b) { return a += b; }
  friend IntegerPolynomial operator-(IntegerPolynomial a, const IntegerPolynomial& b) { return a -= b; }
  friend IntegerPolynomial operator*(IntegerPolynomial a, const BigInt& c) { return a *= c; }
  friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b);
  friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;

  /// Human-readable form, highest power first, e.g. "-6p^7 + 7p^6".
  std::string to_string(char variable = 'p') const;

 private:
  void normalize();

  std::vector<BigInt> coeffs_;
};

/// (1 - x)^n, expanded.
IntegerPolynomial one_minus_x_power(int n);

/// Remainder of m * a divided by b for the positive integer
/// m = |lc(b)|^(deg a - deg b + 1). Keeping m positive preserves the signs
/// Sturm chains depend on. Requires b nonzero.
IntegerPolynomial pseudo_remainder(const IntegerPolynomial& a, const IntegerPolynomial& b);

/// a / b when b divides a in Z[x]; throws DomainError otherwise.
IntegerPolynomial exact_quotient(const IntegerPolynomial& a, const IntegerPolynomial& b);

/// Primitive gcd with positive leading coefficient. gcd(0, 0) = 0.
IntegerPolynomial gcd(IntegerPolynomial a, IntegerPolynomial b);

/// f / gcd(f, f'), made primitive. Same distinct roots as f, all simple.
IntegerPolynomial squarefree_part(const IntegerPolynomial& f);

/// Divides out every factor (x - 1). Returns the quotient and writes the
/// number of factors removed to `multiplicity` when given.
IntegerPolynomial deflate_root_at_one(IntegerPolynomial f, int* multiplicity = nullptr);

/// Sturm chain of a squarefree polynomial, built from primitive pseudo
/// remainders. Counts distinct real roots in half-open intervals (lo, hi].
class SturmSequence {
 public:
  explicit SturmSequence(const IntegerPolynomial& squarefree);

  int sign_variations(const BigRational& x) const;
  int roots_in(const BigRational& lo, const BigRational& hi) const {
    return sign_variations(lo) - sign_variations(hi);
  }
  const std::vector<IntegerPolynomial>& chain() const { return chain_; }

 private:
  std::vector<IntegerPolynomial> chain_;
};

/// Exact decimal expansion of a rational whose reduced denominator has no
/// prime factors besides 2 and 5 (dyadic bisection points always qualify).
/// Throws DomainError for non-terminating expansions.
std::string exact_decimal(const BigRational& x);

}  // namespace choice_attach
