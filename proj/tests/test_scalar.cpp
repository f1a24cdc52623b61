#include <random>

#include "doctest.h"
#include "qchev/errors.hpp"
#include "qchev/scalar.hpp"

using namespace qchev;

namespace {

Scalar q(long k) { return Scalar::q_power(Rational(k)); }

Scalar random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-4, 4), expo(-3, 3), len(1, 3);
  auto poly = [&]() {
    Scalar p;
    for (int t = len(rng); t > 0; --t) p += Scalar::q_power(Rational(expo(rng)), Rational(coef(rng)));
    return p;
  };
  Scalar n = poly(), d = poly();
  if (d.is_zero()) d = 1;
  return n / d;
}

}  // namespace

TEST_CASE("quantum integers match their expansions") {
  CHECK(quantum_integer(3, 1) == q(2) + 1 + q(-2));
  CHECK(quantum_integer(0, 2).is_zero());
  CHECK(quantum_integer(1, 3) == Scalar(1));
  CHECK(quantum_integer(4, 1) == q(3) + q(1) + q(-1) + q(-3));
  CHECK(quantum_integer(4) / quantum_integer(2) == q(2) + q(-2));
  CHECK(quantum_integer(-5, 2) == -quantum_integer(5, 2));
  // Direct definition (q^m - q^-m)/(q - q^-1).
  for (long m = -6; m <= 6; ++m)
    for (long d = 1; d <= 3; ++d)
      CHECK(quantum_integer(m, d) == (q(d * m) - q(-d * m)) / (q(d) - q(-d)));
}

TEST_CASE("quantum factorials") {
  CHECK(quantum_factorial(0) == Scalar(1));
  CHECK(quantum_factorial(2) == q(1) + q(-1));
  CHECK(quantum_factorial(3) == (q(1) + q(-1)) * (q(2) + 1 + q(-2)));
  CHECK_THROWS_AS(quantum_factorial(-1), DomainError);
  CHECK(quantum_binomial(4, 2) == quantum_factorial(4) / (quantum_factorial(2) * quantum_factorial(2)));
}

TEST_CASE("evaluation") {
  CHECK(evaluate_at_one(quantum_integer(7)) == 7);
  CHECK(evaluate(q(2) + q(-2), Rational(2)) == Rational(17, 4));
  CHECK(evaluate_at_one(quantum_integer(4) / quantum_integer(2)) == 2);
  CHECK_THROWS_AS(evaluate_at_one(Scalar(1) / (q(1) - q(-1))), PoleError);
  CHECK_THROWS_AS(evaluate(Scalar::q_power(Rational(1, 2)), Rational(2)), UnsupportedEvaluation);
  CHECK(evaluate(Scalar::q_power(Rational(1, 2)), EvalAtOne{}) == 1);
  CHECK_THROWS_AS(evaluate(Scalar(1) / (q(1) - 2), Rational(2)), PoleError);
}

TEST_CASE("quantum Pascal-type identity [m+1][m-1] = [m]^2 - 1") {
  for (long d = 1; d <= 3; ++d)
    for (long m = 1; m <= 10; ++m)
      CHECK(quantum_integer(m + 1, d) * quantum_integer(m - 1, d) ==
            quantum_integer(m, d) * quantum_integer(m, d) - 1);
}

TEST_CASE("bar symmetry of quantum integers") {
  for (long m = -5; m <= 8; ++m)
    for (long d = 1; d <= 3; ++d) CHECK(quantum_integer(m, d).bar() == quantum_integer(m, d));
}

TEST_CASE("field axioms on random samples") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a - a).is_zero());
    CHECK((a - a) == Scalar());
    if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("canonical form") {
  Scalar x = (q(2) - q(-2)) / (q(1) - q(-1));
  CHECK(x == q(1) + q(-1));
  CHECK(x.den().is_constant());
  Scalar y = Scalar(1) / (2 * q(3) - 4 * q(1));
  CHECK(y.den().min_exp() == 0);
  CHECK(y.den().leading() == 1);
}

TEST_CASE("serialization round trip") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    Scalar a = random_scalar(rng);
    CHECK(Scalar::parse(a.to_string()) == a);
  }
  CHECK(Scalar().to_string() == "0");
  CHECK((q(2) + 1).to_string() == "1*q^(2/1)+1*q^(0/1)");
  CHECK(Scalar::parse("3/2") == Scalar(Rational(3, 2)));
  CHECK(Scalar::parse("-1*q^(1/2)") == Scalar::q_power(Rational(1, 2), Rational(-1)));
  CHECK(Scalar::parse("(1*q^(1/1))/(1*q^(2/1)+1*q^(0/1))") == q(1) / (q(2) + 1));
  CHECK(Scalar::parse("q+(1*q^(1/1))/(1*q^(2/1)+1*q^(0/1))") == q(1) + q(1) / (q(2) + 1));
  CHECK_THROWS_AS(Scalar::parse("abc"), ParseError);
  CHECK_THROWS_AS(Scalar::parse("(1"), ParseError);
}
