#include "qchev/scalar.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qchev/errors.hpp"

namespace qchev {

namespace {

using Dense = std::vector<Rational>;

void trim(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo b (b nonzero, trimmed).
Dense dense_mod(Dense a, const Dense& b) {
  const std::size_t db = b.size() - 1;
  const Rational& lb = b.back();
  trim(a);
  while (a.size() > db && !a.empty()) {
    const std::size_t shift = a.size() - 1 - db;
    Rational c = a.back() / lb;
    for (std::size_t k = 0; k <= db; ++k) a[shift + k] -= c * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

Rational rpow(const Rational& base, std::int64_t k) {
  mpz_class n, d;
  const unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r(k < 0 ? d : n, k < 0 ? n : d);
  r.canonicalize();
  return r;
}

std::string trim_ws(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational");
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/' || c == '+'))
      throw ParseError("bad rational '" + s + "'");
  Rational r;
  try {
    r = Rational(s[0] == '+' ? s.substr(1) : s, 10);
  } catch (const std::exception&) {
    throw ParseError("bad rational '" + s + "'");
  }
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

// Split on '+' at parenthesis depth 0.
std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '+' && depth == 0 && !cur.empty()) {
      parts.push_back(cur);
      cur.clear();
      continue;
    }
    cur.push_back(c);
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in '" + s + "'");
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

LaurentPoly parse_poly(const std::string& s) {
  std::vector<LaurentPoly::Term> terms;
  for (const std::string& t : split_top(s)) {
    Rational coef(1);
    Rational expo(0);
    std::size_t qpos = t.find('q');
    if (qpos == std::string::npos) {
      coef = parse_rational(t);
    } else {
      std::string c = t.substr(0, qpos);
      if (!c.empty() && c.back() == '*') c.pop_back();
      if (c.empty() || c == "+") coef = 1;
      else if (c == "-") coef = -1;
      else coef = parse_rational(c);
      std::string e = t.substr(qpos + 1);
      if (e.empty()) {
        expo = 1;
      } else {
        if (e[0] != '^') throw ParseError("bad monomial '" + t + "'");
        e = e.substr(1);
        if (!e.empty() && e.front() == '(') {
          if (e.back() != ')') throw ParseError("bad exponent in '" + t + "'");
          e = e.substr(1, e.size() - 2);
        }
        expo = parse_rational(e);
      }
    }
    Rational scaled = expo * kExpDen;
    scaled.canonicalize();
    if (scaled.get_den() != 1)
      throw ParseError("exponent finer than 1/" + std::to_string(kExpDen) + " in '" + t + "'");
    terms.emplace_back(scaled.get_num().get_si(), coef);
  }
  return LaurentPoly::from_terms(std::move(terms));
}

std::string poly_to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    if (!first) os << '+';
    first = false;
    Rational e(it->first, kExpDen);
    e.canonicalize();
    os << it->second.get_str() << "*q^(" << e.get_num().get_str() << '/' << e.get_den().get_str() << ')';
  }
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) terms_.emplace_back(0, c);
}

LaurentPoly LaurentPoly::monomial(const Rational& c, std::int64_t exp) {
  LaurentPoly p;
  if (c != 0) p.terms_.emplace_back(exp, c);
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  LaurentPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (t.second != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

LaurentPoly LaurentPoly::shifted(std::int64_t by) const {
  LaurentPoly p = *this;
  for (auto& t : p.terms_) t.first += by;
  return p;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  LaurentPoly p = *this;
  for (auto& t : p.terms_) t.second *= c;
  return p;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly p;
  p.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) p.terms_.emplace_back(-it->first, it->second);
  return p;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      Rational c = a.terms_[i].second + b.terms_[j].second;
      if (c != 0) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1) return b.scaled(a.terms_[0].second).shifted(a.terms_[0].first);
  if (b.terms_.size() == 1) return a.scaled(b.terms_[0].second).shifted(b.terms_[0].first);
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) out.emplace_back(x.first + y.first, x.second * y.second);
  return LaurentPoly::from_terms(std::move(out));
}

LaurentPoly LaurentPoly::exact_div(const LaurentPoly& d) const {
  if (d.is_zero()) throw DomainError("division by zero polynomial");
  if (d.is_monomial()) {
    Rational inv = 1 / d.terms_[0].second;
    return scaled(inv).shifted(-d.terms_[0].first);
  }
  std::vector<Term> quotient;
  LaurentPoly r = *this;
  const Rational inv_lead = 1 / d.leading();
  while (!r.is_zero()) {
    if (r.max_exp() - r.min_exp() < d.max_exp() - d.min_exp())
      throw TheoremViolation("exact_div: polynomial does not divide");
    const std::int64_t t = r.max_exp() - d.max_exp();
    Rational c = r.leading() * inv_lead;
    quotient.emplace_back(t, c);
    r = r - d.scaled(c).shifted(t);
  }
  return from_terms(std::move(quotient));
}

Rational LaurentPoly::value_at_one() const {
  Rational s(0);
  for (const auto& t : terms_) s += t.second;
  return s;
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return LaurentPoly(Rational(1));
  if (a.is_constant() || b.is_constant()) {
    if (a.is_zero()) return b.scaled(1 / b.leading());
    if (b.is_zero()) return a.scaled(1 / a.leading());
    return LaurentPoly(Rational(1));
  }
  std::int64_t stride = 0;
  for (const auto& t : a.terms()) stride = std::gcd(stride, t.first);
  for (const auto& t : b.terms()) stride = std::gcd(stride, t.first);
  auto to_dense = [stride](const LaurentPoly& p) {
    Dense d(static_cast<std::size_t>(p.max_exp() / stride) + 1, Rational(0));
    for (const auto& t : p.terms()) d[static_cast<std::size_t>(t.first / stride)] = t.second;
    return d;
  };
  Dense x = to_dense(a);
  Dense y = to_dense(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    Dense r = dense_mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  std::vector<LaurentPoly::Term> terms;
  const Rational lead = x.back();
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] != 0) terms.emplace_back(static_cast<std::int64_t>(k) * stride, x[k] / lead);
  return LaurentPoly::from_terms(std::move(terms));
}

// --------------------------------------------------------------------- Scalar

Scalar::Scalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw PoleError("zero denominator");
  normalize();
}

Scalar Scalar::q_power(const Rational& e, const Rational& c) {
  Rational scaled = e * kExpDen;
  scaled.canonicalize();
  if (scaled.get_den() != 1) throw DomainError("exponent " + e.get_str() + " is not a multiple of 1/120");
  return s_power(scaled.get_num().get_si(), c);
}

Scalar Scalar::s_power(std::int64_t k, const Rational& c) {
  Scalar r;
  r.num_ = LaurentPoly::monomial(c, k);
  return r;
}

bool Scalar::is_one() const { return den_.is_constant() && num_.is_constant() && !num_.is_zero() && num_.leading() == 1; }

Rational Scalar::as_rational() const {
  if (!is_rational()) throw DomainError("scalar is not a rational number");
  return num_.is_zero() ? Rational(0) : num_.leading();
}

void Scalar::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(Rational(1));
    return;
  }
  const std::int64_t k = den_.min_exp();
  if (k != 0) {
    den_ = den_.shifted(-k);
    num_ = num_.shifted(-k);
  }
  if (den_.is_constant()) {
    if (den_.leading() != 1) {
      num_ = num_.scaled(1 / den_.leading());
      den_ = LaurentPoly(Rational(1));
    }
    return;
  }
  const std::int64_t nm = num_.min_exp();
  LaurentPoly np = num_.shifted(-nm);
  LaurentPoly g = poly_gcd(np, den_);
  if (!g.is_constant()) {
    np = np.exact_div(g);
    den_ = den_.exact_div(g);
  }
  const Rational lc = den_.leading();
  if (lc != 1) {
    const Rational inv = 1 / lc;
    np = np.scaled(inv);
    den_ = den_.scaled(inv);
  }
  num_ = np.shifted(nm);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw PoleError("inverse of zero");
  return Scalar(den_, num_);
}

Scalar Scalar::bar() const { return Scalar(num_.bar(), den_.bar()); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ = num_ + o.num_;
    if (!den_.is_constant()) normalize();
    else if (num_.is_zero()) den_ = LaurentPoly(Rational(1));
    return *this;
  }
  LaurentPoly g = poly_gcd(den_, o.den_);
  LaurentPoly a = den_.exact_div(g);
  LaurentPoly b = o.den_.exact_div(g);
  num_ = num_ * b + o.num_ * a;
  den_ = den_ * b;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero() || o.is_zero()) return *this = Scalar();
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ = num_ * o.num_;
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

std::string Scalar::to_string() const {
  if (den_.is_constant()) return poly_to_string(num_);
  return "(" + poly_to_string(num_) + ")/(" + poly_to_string(den_) + ")";
}

Scalar Scalar::parse(const std::string& raw) {
  const std::string s = trim_ws(raw);
  if (s.empty()) throw ParseError("empty scalar");
  // A sum with quotient summands, e.g. "q+(1)/(q+1)".
  const auto parts = split_top(s);
  if (parts.size() > 1 && std::any_of(parts.begin(), parts.end(), [](const std::string& t) { return t.front() == '('; })) {
    Scalar sum;
    for (const auto& t : parts) sum += parse(t);
    return sum;
  }
  if (s.front() == '(') {
    int depth = 0;
    std::size_t close = std::string::npos;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] == '(') ++depth;
      if (s[k] == ')' && --depth == 0) {
        close = k;
        break;
      }
    }
    if (close != std::string::npos && close + 2 < s.size() && s.compare(close + 1, 2, "/(") == 0 && s.back() == ')') {
      LaurentPoly n = parse_poly(s.substr(1, close - 1));
      LaurentPoly d = parse_poly(s.substr(close + 3, s.size() - close - 4));
      if (d.is_zero()) throw ParseError("zero denominator in '" + raw + "'");
      return Scalar(std::move(n), std::move(d));
    }
    if (close == s.size() - 1) return parse(s.substr(1, s.size() - 2));
  }
  return Scalar(parse_poly(s));
}

// ------------------------------------------------------------ quantum numbers

Scalar quantum_integer(long m, long d) {
  if (d <= 0) throw DomainError("quantum_integer: d must be positive");
  if (m == 0) return Scalar();
  const long a = m < 0 ? -m : m;
  std::vector<LaurentPoly::Term> terms;
  for (long j = 0; j < a; ++j)
    terms.emplace_back(static_cast<std::int64_t>(d) * (a - 1 - 2 * j) * kExpDen, Rational(m < 0 ? -1 : 1));
  return Scalar(LaurentPoly::from_terms(std::move(terms)));
}

Scalar quantum_factorial(long m, long d) {
  if (m < 0) throw DomainError("quantum_factorial of negative integer");
  Scalar r(1);
  for (long k = 2; k <= m; ++k) r *= quantum_integer(k, d);
  return r;
}

Scalar quantum_binomial(long n, long k, long d) {
  if (k < 0 || k > n) return Scalar();
  Scalar r(1);
  for (long j = 1; j <= k; ++j) r = r * quantum_integer(n - k + j, d) / quantum_integer(j, d);
  return r;
}

// ----------------------------------------------------------------- evaluation

namespace {

Rational eval_poly(const LaurentPoly& p, const Rational& q) {
  Rational acc(0);
  for (const auto& t : p.terms()) {
    if (t.first % kExpDen != 0)
      throw UnsupportedEvaluation("fractional power q^(" + std::to_string(t.first) + "/" +
                                  std::to_string(kExpDen) + ") at a rational point");
    acc += t.second * rpow(q, t.first / kExpDen);
  }
  return acc;
}

}  // namespace

Rational evaluate(const Scalar& x, const EvalPoint& at) {
  if (std::holds_alternative<EvalAtOne>(at)) {
    const Rational d = x.den().value_at_one();
    if (d == 0) throw PoleError("pole at q = 1");
    return x.num().value_at_one() / d;
  }
  const Rational& q = std::get<Rational>(at);
  if (q == 0) throw DomainError("evaluation at q = 0");
  const Rational d = eval_poly(x.den(), q);
  if (d == 0) throw PoleError("pole at q = " + q.get_str());
  return eval_poly(x.num(), q) / d;
}

}  // namespace qchev
