#pragma once

// Exact scalars: rational functions in a fractional power of q with
// arbitrary-precision rational coefficients.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qchev {

using Rational = mpq_class;

/// Exponent unit of the base variable. Every exponent is stored as an integer
/// multiple of 1/kExpDen of a power of q. 120 is the lcm of 2L over all
/// supported Cartan types, so one field serves every datum.
inline constexpr std::int64_t kExpDen = 120;

/// Sparse Laurent polynomial in s = q^(1/kExpDen). Terms are kept sorted by
/// ascending exponent with nonzero coefficients.
class LaurentPoly {
 public:
  using Term = std::pair<std::int64_t, Rational>;

  LaurentPoly() = default;
  explicit LaurentPoly(const Rational& c);
  static LaurentPoly monomial(const Rational& c, std::int64_t exp);
  static LaurentPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::int64_t min_exp() const { return terms_.front().first; }
  std::int64_t max_exp() const { return terms_.back().first; }
  const Rational& leading() const { return terms_.back().second; }

  LaurentPoly shifted(std::int64_t by) const;
  LaurentPoly scaled(const Rational& c) const;
  LaurentPoly bar() const;  // s -> 1/s
  LaurentPoly operator-() const { return scaled(Rational(-1)); }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  /// Exact division by a polynomial known to divide this one.
  LaurentPoly exact_div(const LaurentPoly& d) const;
  /// Sum of coefficients (value at s = 1).
  Rational value_at_one() const;

 private:
  std::vector<Term> terms_;
};

/// Monic gcd of two polynomials whose lowest exponents are 0; the result also
/// has lowest exponent 0.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Element of the field Q(s). Always stored in canonical form.
class Scalar {
 public:
  Scalar() : den_(Rational(1)) {}
  Scalar(int v) : num_(Rational(v)), den_(Rational(1)) {}  // NOLINT implicit on purpose
  Scalar(const Rational& v) : num_(v), den_(Rational(1)) {}  // NOLINT
  Scalar(LaurentPoly num, LaurentPoly den);
  explicit Scalar(LaurentPoly num) : num_(std::move(num)), den_(Rational(1)) {}

  /// c * q^e with e a rational exponent whose denominator divides kExpDen.
  static Scalar q_power(const Rational& e, const Rational& c = Rational(1));
  /// c * s^k, i.e. c * q^(k/kExpDen).
  static Scalar s_power(std::int64_t k, const Rational& c = Rational(1));

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_rational() const { return den_.is_constant() && (num_.is_zero() || num_.is_constant()); }
  /// Valid only if is_rational().
  Rational as_rational() const;
  /// Rough size measure used to pick cheap pivots.
  std::size_t cost() const { return num_.terms().size() + den_.terms().size(); }

  Scalar inverse() const;
  Scalar bar() const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string to_string() const;
  static Scalar parse(const std::string& text);

 private:
  void normalize();
  LaurentPoly num_;
  LaurentPoly den_;
};

/// [m]_{q^d} = (q^{dm} - q^{-dm}) / (q^d - q^{-d}).
Scalar quantum_integer(long m, long d = 1);
/// [m]_{q^d}!; throws DomainError for m < 0.
Scalar quantum_factorial(long m, long d = 1);
/// Gaussian binomial [n choose k]_{q^d}.
Scalar quantum_binomial(long n, long k, long d = 1);

/// Evaluation point: either the symbol "one" (q = 1) or an exact nonzero rational.
struct EvalAtOne {};
using EvalPoint = std::variant<EvalAtOne, Rational>;

/// Exact substitution; see PoleError / UnsupportedEvaluation.
Rational evaluate(const Scalar& x, const EvalPoint& at);
inline Rational evaluate_at_one(const Scalar& x) { return evaluate(x, EvalAtOne{}); }

}  // namespace qchev
