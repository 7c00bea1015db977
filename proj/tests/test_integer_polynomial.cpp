#include "choice_attach/integer_polynomial.hpp"
#include "choice_attach/model.hpp"

#include <doctest.h>

#include <random>

using namespace choice_attach;

namespace {

IntegerPolynomial poly(std::initializer_list<long> c) {
  std::vector<BigInt> v;
  for (long x : c) v.emplace_back(x);
  return IntegerPolynomial(std::move(v));
}

IntegerPolynomial random_poly(std::mt19937_64& gen, int degree, int magnitude) {
  std::uniform_int_distribution<long> dist(-magnitude, magnitude);
  std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1);
  for (auto& c : v) c = dist(gen);
  if (v.back() == 0) v.back() = 1;
  return IntegerPolynomial(std::move(v));
}

}  // namespace

TEST_CASE("normalization drops trailing zeros") {
  const auto p = poly({1, 2, 0, 0});
  CHECK(p.degree() == 1);
  CHECK(poly({0, 0}).is_zero());
  CHECK(poly({0}).degree() == -1);
  CHECK((p - p).is_zero());
}

TEST_CASE("to_string prints highest power first") {
  CHECK(poly({0, 0, 0, 0, 0, 0, 7, -6}).to_string() == "-6p^7 + 7p^6");
  CHECK(poly({1, -2, 0, 1}).to_string('x') == "x^3 - 2x + 1");
  CHECK(IntegerPolynomial().to_string() == "0");
}

TEST_CASE("derivative and one-minus substitution") {
  CHECK(poly({1, -2, 0, 1}).derivative() == poly({-2, 0, 3}));
  // (1-x)^3
  CHECK(one_minus_x_power(3) == poly({1, -3, 3, -1}));
  // p(x) = x^2 -> (1-x)^2
  CHECK(poly({0, 0, 1}).compose_one_minus() == poly({1, -2, 1}));
}

TEST_CASE("content and primitive part keep the leading sign") {
  const auto p = poly({-6, 0, -12});
  CHECK(p.content() == 6);
  CHECK(p.primitive_part() == poly({-1, 0, -2}));
}

TEST_CASE("sign_at agrees with exact rational evaluation") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 37);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_poly(gen, 1 + trial % 9, 20);
    const BigRational x(num(gen), den(gen));
    const BigRational v = p.evaluate(x);
    const int expected = v > 0 ? 1 : (v < 0 ? -1 : 0);
    CHECK(p.sign_at(x) == expected);
  }
}

TEST_CASE("exact division recovers the factor and rejects non-divisors") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_poly(gen, 1 + trial % 6, 9);
    const auto b = random_poly(gen, 1 + trial % 4, 9);
    CHECK(exact_quotient(a * b, b) == a);
  }
  CHECK_THROWS_AS(exact_quotient(poly({1, 0, 1}), poly({-1, 1})), DomainError);
}

TEST_CASE("pseudo remainder uses a positive multiplier") {
  // a = x^2 + 1, b = -2x + 1: lc(b)^2 = 4 > 0, 4a = (-2x-1) b + 5.
  const auto r = pseudo_remainder(poly({1, 0, 1}), poly({1, -2}));
  CHECK(r == poly({5}));
  // Odd power of a negative leading coefficient: sign must be flipped back.
  // a = x + 3, b = -x + 1: |lc|^1 * a = -(b) + 4.
  CHECK(pseudo_remainder(poly({3, 1}), poly({1, -1})) == poly({4}));
}

TEST_CASE("gcd finds common factors (property)") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = random_poly(gen, 1 + trial % 3, 6).primitive_part();
    const auto a = random_poly(gen, 1 + trial % 4, 6);
    const auto b = random_poly(gen, 2 + trial % 3, 6);
    const auto g = gcd(a * c, b * c);
    // c divides g exactly.
    CHECK_NOTHROW(exact_quotient(g, c));
    CHECK(g.leading() > 0);
  }
  CHECK(gcd(poly({-1, 0, 1}), poly({1, 1})) == poly({1, 1}));
}

TEST_CASE("squarefree part removes repeated factors") {
  // (x-1)^2 (x+2)^3 (2x-1)
  const auto lin1 = poly({-1, 1}), lin2 = poly({2, 1}), lin3 = poly({-1, 2});
  const auto f = lin1 * lin1 * lin2 * lin2 * lin2 * lin3;
  const auto sf = squarefree_part(f);
  CHECK(sf.degree() == 3);
  CHECK(exact_quotient(sf, lin1 * lin2 * lin3).degree() == 0);
}

TEST_CASE("deflate_root_at_one counts multiplicity") {
  const auto lin = poly({-1, 1});
  int mult = -1;
  const auto q = deflate_root_at_one(lin * lin * poly({1, 1, 1}), &mult);
  CHECK(mult == 2);
  CHECK(q == poly({1, 1, 1}));
  deflate_root_at_one(poly({2, 1}), &mult);
  CHECK(mult == 0);
}

TEST_CASE("Sturm counts distinct real roots in half-open intervals") {
  // (x - 1/4)(x - 1/2)(x - 3)  =>  roots 0.25, 0.5, 3.
  const auto f = poly({-1, 4}) * poly({-1, 2}) * poly({-3, 1});
  const SturmSequence st(f);
  CHECK(st.roots_in(0, 1) == 2);
  CHECK(st.roots_in(BigRational(1, 4), 1) == 1);  // (1/4, 1] excludes 1/4
  CHECK(st.roots_in(0, BigRational(1, 4)) == 1);  // (0, 1/4] includes it
  CHECK(st.roots_in(-10, 10) == 3);
  // x^2 + 1 has none.
  CHECK(SturmSequence(poly({1, 0, 1})).roots_in(-100, 100) == 0);
}

TEST_CASE("Sturm count matches root count of random split polynomials (property)") {
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<long> num(-40, 40);
  for (int trial = 0; trial < 30; ++trial) {
    // Product of distinct linear factors (den*x - num) with known roots.
    std::vector<BigRational> roots;
    IntegerPolynomial f = poly({1});
    const int n = 1 + trial % 6;
    while (static_cast<int>(roots.size()) < n) {
      const BigRational root(num(gen), 7);
      if (std::find(roots.begin(), roots.end(), root) != roots.end()) continue;
      roots.push_back(root);
      f = f * poly({-static_cast<long>(boost::multiprecision::numerator(root)),
                    static_cast<long>(boost::multiprecision::denominator(root))});
    }
    const SturmSequence st(f);
    const BigRational lo(-3, 1), hi(2, 1);
    int expected = 0;
    for (const auto& r : roots)
      if (r > lo && r <= hi) ++expected;
    CHECK(st.roots_in(lo, hi) == expected);
  }
}

TEST_CASE("exact_decimal expands terminating rationals") {
  CHECK(exact_decimal(BigRational(1, 2)) == "0.5");
  CHECK(exact_decimal(BigRational(3, 8)) == "0.375");
  CHECK(exact_decimal(BigRational(-1, 1024)) == "-0.0009765625");
  CHECK(exact_decimal(BigRational(7)) == "7");
  CHECK(exact_decimal(BigRational(1, 20)) == "0.05");
  CHECK_THROWS_AS(exact_decimal(BigRational(1, 3)), DomainError);
}
