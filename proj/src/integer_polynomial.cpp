#include "choice_attach/integer_polynomial.hpp"

#include "choice_attach/model.hpp"

#include <algorithm>
#include <utility>

namespace choice_attach {

IntegerPolynomial::IntegerPolynomial(std::vector<BigInt> coefficients)
    : coeffs_(std::move(coefficients)) {
  normalize();
}

IntegerPolynomial IntegerPolynomial::constant(const BigInt& c) {
  return IntegerPolynomial(std::vector<BigInt>{c});
}

IntegerPolynomial IntegerPolynomial::monomial(const BigInt& c, int power) {
  std::vector<BigInt> v(static_cast<std::size_t>(power) + 1);
  v.back() = c;
  return IntegerPolynomial(std::move(v));
}

void IntegerPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntegerPolynomial::coefficient(int power) const {
  if (power < 0 || power > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(power)];
}

IntegerPolynomial IntegerPolynomial::derivative() const {
  if (degree() < 1) return {};
  std::vector<BigInt> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return IntegerPolynomial(std::move(d));
}

IntegerPolynomial IntegerPolynomial::compose_one_minus() const {
  IntegerPolynomial out;
  for (int i = 0; i <= degree(); ++i) {
    if (coeffs_[i] == 0) continue;
    out += one_minus_x_power(i) * coeffs_[i];
  }
  return out;
}

BigInt IntegerPolynomial::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) {
    g = boost::multiprecision::gcd(g, c);
    if (g == 1) break;
  }
  return boost::multiprecision::abs(g);
}

IntegerPolynomial IntegerPolynomial::primitive_part() const {
  if (is_zero()) return {};
  const BigInt g = content();
  std::vector<BigInt> v(coeffs_);
  if (g != 1)
    for (auto& c : v) c /= g;
  return IntegerPolynomial(std::move(v));
}

BigRational IntegerPolynomial::evaluate(const BigRational& x) const {
  BigRational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + BigRational(*it);
  return acc;
}

double IntegerPolynomial::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + it->convert_to<double>();
  return acc;
}

int IntegerPolynomial::sign_at(const BigRational& x) const {
  if (is_zero()) return 0;
  // With x = a/b, b > 0: sign of sum c_i a^i b^(n-i).
  const BigInt a = boost::multiprecision::numerator(x);
  const BigInt b = boost::multiprecision::denominator(x);
  BigInt acc = 0;
  BigInt bpow = 1;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * a + *it * bpow;
    bpow *= b;
  }
  return acc > 0 ? 1 : (acc < 0 ? -1 : 0);
}

IntegerPolynomial IntegerPolynomial::operator-() const {
  std::vector<BigInt> v(coeffs_);
  for (auto& c : v) c = -c;
  return IntegerPolynomial(std::move(v));
}

IntegerPolynomial& IntegerPolynomial::operator+=(const IntegerPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  normalize();
  return *this;
}

IntegerPolynomial& IntegerPolynomial::operator-=(const IntegerPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  normalize();
  return *this;
}

IntegerPolynomial& IntegerPolynomial::operator*=(const BigInt& c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntegerPolynomial(std::move(v));
}

std::string IntegerPolynomial::to_string(char variable) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool negative = c < 0;
    const BigInt mag = negative ? BigInt(-c) : c;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (mag != 1 || i == 0) out += mag.str();
    if (i >= 1) out += variable;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

IntegerPolynomial one_minus_x_power(int n) {
  // Row n of Pascal's triangle with alternating signs.
  std::vector<BigInt> v(static_cast<std::size_t>(n) + 1);
  BigInt c = 1;
  for (int i = 0; i <= n; ++i) {
    v[static_cast<std::size_t>(i)] = (i % 2 == 0) ? c : BigInt(-c);
    c = c * (n - i) / (i + 1);
  }
  return IntegerPolynomial(std::move(v));
}

IntegerPolynomial pseudo_remainder(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (b.is_zero()) throw DomainError("pseudo_remainder: division by zero polynomial");
  const int db = b.degree();
  if (a.degree() < db) return a;
  const BigInt lc = b.leading();
  const int steps = a.degree() - db + 1;
  IntegerPolynomial rem = a;
  int done = 0;
  while (!rem.is_zero() && rem.degree() >= db) {
    const IntegerPolynomial t = IntegerPolynomial::monomial(rem.leading(), rem.degree() - db);
    rem = rem * lc - t * b;
    ++done;
  }
  // rem = lc^done * a - q b; scale to the full lc^steps.
  for (int i = done; i < steps; ++i) rem *= lc;
  if (lc < 0 && steps % 2 == 1) rem = -rem;
  return rem;
}

IntegerPolynomial exact_quotient(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (b.is_zero()) throw DomainError("exact_quotient: division by zero polynomial");
  if (a.is_zero()) return {};
  const int db = b.degree();
  if (a.degree() < db) throw DomainError("exact_quotient: divisor does not divide");
  std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - db) + 1);
  IntegerPolynomial rem = a;
  while (!rem.is_zero() && rem.degree() >= db) {
    BigInt quo, r;
    boost::multiprecision::divide_qr(rem.leading(), b.leading(), quo, r);
    if (r != 0) throw DomainError("exact_quotient: divisor does not divide");
    const int shift = rem.degree() - db;
    q[static_cast<std::size_t>(shift)] = quo;
    rem -= IntegerPolynomial::monomial(quo, shift) * b;
  }
  if (!rem.is_zero()) throw DomainError("exact_quotient: divisor does not divide");
  return IntegerPolynomial(std::move(q));
}

IntegerPolynomial gcd(IntegerPolynomial a, IntegerPolynomial b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  if (b.is_zero()) {
    if (a.is_zero()) return {};
    a = a.primitive_part();
    return a.leading() < 0 ? -a : a;
  }
  a = a.primitive_part();
  b = b.primitive_part();
  while (!b.is_zero()) {
    IntegerPolynomial r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.primitive_part();
  }
  return a.leading() < 0 ? -a : a;
}

IntegerPolynomial squarefree_part(const IntegerPolynomial& f) {
  if (f.degree() < 1) return f.primitive_part();
  const IntegerPolynomial g = gcd(f, f.derivative());
  return exact_quotient(f.primitive_part(), g).primitive_part();
}

IntegerPolynomial deflate_root_at_one(IntegerPolynomial f, int* multiplicity) {
  int removed = 0;
  while (f.degree() >= 1) {
    BigInt sum = 0;
    for (const auto& c : f.coefficients()) sum += c;
    if (sum != 0) break;
    // Synthetic division by (x - 1).
    const auto& c = f.coefficients();
    std::vector<BigInt> q(c.size() - 1);
    BigInt carry = 0;
    for (std::size_t i = c.size() - 1; i >= 1; --i) {
      carry += c[i];
      q[i - 1] = carry;
    }
    f = IntegerPolynomial(std::move(q));
    ++removed;
  }
  if (multiplicity) *multiplicity = removed;
  return f;
}

SturmSequence::SturmSequence(const IntegerPolynomial& squarefree) {
  if (squarefree.is_zero()) throw DomainError("Sturm sequence of the zero polynomial");
  chain_.push_back(squarefree);
  if (squarefree.degree() < 1) return;
  chain_.push_back(squarefree.derivative().primitive_part());
  while (true) {
    const auto& prev = chain_[chain_.size() - 2];
    const auto& cur = chain_.back();
    IntegerPolynomial next = -pseudo_remainder(prev, cur);
    if (next.is_zero()) break;
    chain_.push_back(next.primitive_part());
  }
}

int SturmSequence::sign_variations(const BigRational& x) const {
  int variations = 0;
  int last = 0;
  for (const auto& p : chain_) {
    const int sgn = p.sign_at(x);
    if (sgn == 0) continue;
    if (last != 0 && sgn != last) ++variations;
    last = sgn;
  }
  return variations;
}

std::string exact_decimal(const BigRational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  int twos = 0, fives = 0;
  BigInt d = den;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) throw DomainError("exact_decimal: expansion does not terminate");
  const int digits = std::max(twos, fives);
  // num/den = num * (10^digits / den) / 10^digits.
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = num * (scale / den);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string body = scaled.str();
  if (digits > 0) {
    if (static_cast<int>(body.size()) <= digits) body.insert(0, digits - body.size() + 1, '0');
    body.insert(body.size() - digits, ".");
  }
  return negative ? "-" + body : body;
}

}  // namespace choice_attach
