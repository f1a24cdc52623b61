#include "qchev/torus.hpp"

#include "qchev/errors.hpp"
#include "qchev/intertwiner.hpp"
#include "qchev/hull.hpp"

namespace qchev {

// ------------------------------------------------------------------ CharPoly

CharPoly CharPoly::constant(const Scalar& c, int rank) { return monomial(Weight::zero(rank), c); }

CharPoly CharPoly::monomial(const Weight& w, const Scalar& c) {
  CharPoly p;
  p.add(w, c);
  return p;
}

void CharPoly::add(const Weight& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

CharPoly CharPoly::operator-() const {
  CharPoly p = *this;
  for (auto& [w, c] : p.terms_) c = -c;
  return p;
}

CharPoly operator+(CharPoly a, const CharPoly& b) {
  for (const auto& [w, c] : b.terms_) a.add(w, c);
  return a;
}

CharPoly operator*(const CharPoly& a, const CharPoly& b) {
  CharPoly p;
  for (const auto& [w1, c1] : a.terms_)
    for (const auto& [w2, c2] : b.terms_) p.add(w1 + w2, c1 * c2);
  return p;
}

CharPoly operator*(const Scalar& s, const CharPoly& a) {
  if (s.is_zero()) return {};
  CharPoly p = a;
  for (auto& [w, c] : p.terms_) c *= s;
  return p;
}

CharPoly CharPoly::pushforward(const CartanDatum& dat, const WeylElement& w) const {
  CharPoly p;
  for (const auto& [nu, c] : terms_) p.add(w.act(dat, nu), c);
  return p;
}

Scalar CharPoly::evaluate(const CartanDatum& dat, const Weight& lambda, int q_power) const {
  Scalar s;
  for (const auto& [nu, c] : terms_) s += c * Scalar::q_power(2 * q_power * dat.pairing(nu, lambda));
  return s;
}

CharPoly qstring_factor(const WeightModule& V, int i, int k) {
  const CartanDatum& dat = V.datum();
  CharPoly p = CharPoly::constant(Scalar(1), dat.rank());
  p.add(dat.simple_root(i), -Scalar::q_power(Rational(2 * k * V.qd(i))));
  return p;
}

// ------------------------------------------------------------- TorusFunction

std::vector<Weight> TorusFunction::support() const {
  std::vector<Weight> s;
  for (const auto& [w, v] : terms_) s.push_back(w);
  return s;
}

void TorusFunction::add_term(const Weight& nu, const SVector& v) {
  if (v.size() != V_->dim()) throw DomainError("coefficient vector has the wrong length");
  if (nu.rank() != V_->datum().rank()) throw DomainError("weight rank mismatch");
  if (is_zero_vector(v)) return;
  auto it = terms_.find(nu);
  if (it == terms_.end()) {
    terms_.emplace(nu, v);
    return;
  }
  for (std::size_t k = 0; k < v.size(); ++k) it->second[k] += v[k];
  if (is_zero_vector(it->second)) terms_.erase(it);
}

void TorusFunction::add_zero_weight_term(const Weight& nu, const SVector& v0) {
  const std::size_t z = zero_weight_dim(*V_);
  if (v0.size() != z) throw DomainError("V[0] vector has the wrong length");
  if (z == 0) return;
  const std::size_t off = zero_weight_offset(*V_);
  SVector full(V_->dim());
  for (std::size_t k = 0; k < z; ++k) full[off + k] = v0[k];
  add_term(nu, full);
}

TorusFunction TorusFunction::operator-() const {
  TorusFunction f = *this;
  for (auto& [w, v] : f.terms_)
    for (Scalar& x : v) x = -x;
  return f;
}

TorusFunction operator+(TorusFunction a, const TorusFunction& b) {
  for (const auto& [w, v] : b.terms_) a.add_term(w, v);
  return a;
}

TorusFunction operator*(const Scalar& s, const TorusFunction& f) {
  TorusFunction g(f.V_);
  if (s.is_zero()) return g;
  g.terms_ = f.terms_;
  for (auto& [w, v] : g.terms_)
    for (Scalar& x : v) x *= s;
  return g;
}

TorusFunction operator*(const CharPoly& p, const TorusFunction& f) {
  TorusFunction g(f.V_);
  for (const auto& [mu, c] : p.terms())
    for (const auto& [nu, v] : f.terms_) {
      SVector w = v;
      for (Scalar& x : w) x *= c;
      g.add_term(mu + nu, w);
    }
  return g;
}

std::map<Weight, SVector> TorusFunction::zero_weight_terms() const {
  std::map<Weight, SVector> out;
  for (const auto& [w, v] : terms_) out.emplace(w, zero_weight_part(*V_, v));
  return out;
}

// ---------------------------------------------------------------- operations

TorusFunction e_action(const TorusFunction& f, int i, int n) {
  if (n < 0) throw DomainError("e_action: negative power");
  if (n == 0) return f;
  const SMatrix e = f.module().e_full(i);
  SMatrix p = e;
  for (int k = 1; k < n; ++k) p = e * p;
  TorusFunction g(f.module_ptr());
  for (const auto& [w, v] : f.terms()) g.add_term(w, p.apply(v));
  return g;
}

std::pair<Weight, int> alpha_coset(const CartanDatum& dat, const Weight& nu, int i) {
  const int h = nu[i];
  const int t = h >= 0 ? h / 2 : -((-h + 1) / 2);
  return {nu - t * dat.simple_root(i), t};
}

DivisionResult divide_by_qstring(const TorusFunction& f, int i, int n) {
  if (n < 1) throw DomainError("divide_by_qstring: n must be positive");
  const WeightModule& V = f.module();
  const CartanDatum& dat = V.datum();
  const Weight alpha = dat.simple_root(i);
  TorusFunction cur = f;
  for (int k = 1; k <= n; ++k) {
    const Scalar c = Scalar::q_power(Rational(2 * k * V.qd(i)));
    std::map<Weight, std::map<int, SVector>> cosets;
    for (const auto& [w, v] : cur.terms()) {
      auto [rep, t] = alpha_coset(dat, w, i);
      cosets[rep][t] = v;
    }
    TorusFunction quot(f.module_ptr());
    for (const auto& [rep, string] : cosets) {
      const int tmin = string.begin()->first, tmax = string.rbegin()->first;
      SVector g(V.dim());
      for (int t = tmin; t <= tmax; ++t) {
        SVector next(V.dim());
        auto it = string.find(t);
        for (std::size_t x = 0; x < V.dim(); ++x) {
          next[x] = c * g[x];
          if (it != string.end()) next[x] += it->second[x];
        }
        if (t == tmax) {
          if (!is_zero_vector(next)) return NotDivisible{k, rep, rep + tmax * alpha, next};
        } else {
          quot.add_term(rep + t * alpha, next);
        }
        g = std::move(next);
      }
    }
    cur = std::move(quot);
  }
  return cur;
}

SVector evaluate_at_weight(const TorusFunction& f, const Weight& lambda) {
  const WeightModule& V = f.module();
  SVector out(V.dim());
  for (const auto& [nu, v] : f.terms()) {
    const Scalar m = Scalar::q_power(2 * V.q_power() * V.datum().pairing(nu, lambda));
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero()) out[k] += m * v[k];
  }
  return out;
}

TorusFunction weyl_pushforward(const TorusFunction& f, const WeylElement& w) {
  TorusFunction g(f.module_ptr());
  for (const auto& [nu, v] : f.terms()) g.add_term(w.act(f.module().datum(), nu), v);
  return g;
}

std::map<Weight, QVector> classical_limit(const TorusFunction& f) {
  std::map<Weight, QVector> out;
  for (const auto& [nu, v] : f.terms()) {
    QVector c(v.size());
    bool nonzero = false;
    for (std::size_t k = 0; k < v.size(); ++k) {
      c[k] = evaluate_at_one(v[k]);
      nonzero = nonzero || c[k] != 0;
    }
    if (nonzero) out.emplace(nu, std::move(c));
  }
  return out;
}

std::vector<Weight> weight_diagram(const std::vector<Weight>& support) {
  return ConvexHull(support).lattice_points();
}

std::vector<Weight> weight_diagram(const TorusFunction& f) { return weight_diagram(f.support()); }

}  // namespace qchev
