#pragma once

// Functions on the torus with values in a module V: finite sums Σ v_ν e^ν.

#include <map>
#include <variant>
#include <vector>

#include "qchev/module.hpp"

namespace qchev {

/// Element of the character ring Q(q)[P]: a finite sum Σ c_ν e^ν.
class CharPoly {
 public:
  CharPoly() = default;
  static CharPoly constant(const Scalar& c, int rank);
  static CharPoly monomial(const Weight& w, const Scalar& c = Scalar(1));

  const std::map<Weight, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Weight& w, const Scalar& c);

  CharPoly operator-() const;
  friend CharPoly operator+(CharPoly a, const CharPoly& b);
  friend CharPoly operator-(CharPoly a, const CharPoly& b) { return a + (-b); }
  friend CharPoly operator*(const CharPoly& a, const CharPoly& b);
  friend CharPoly operator*(const Scalar& s, const CharPoly& a);
  friend bool operator==(const CharPoly& a, const CharPoly& b) { return a.terms_ == b.terms_; }

  /// e^ν ↦ e^{wν}.
  CharPoly pushforward(const CartanDatum& dat, const WeylElement& w) const;
  /// Value at q^{2λ}: e^ν ↦ q^{2 p ⟨ν,λ⟩}, p the quantum-parameter multiplier.
  Scalar evaluate(const CartanDatum& dat, const Weight& lambda, int q_power = 1) const;

 private:
  std::map<Weight, Scalar> terms_;
};

/// 1 − q_i^{2k} e^{α_i}.
CharPoly qstring_factor(const WeightModule& V, int i, int k);

class TorusFunction {
 public:
  explicit TorusFunction(ModulePtr V) : V_(std::move(V)) {}

  const WeightModule& module() const { return *V_; }
  const ModulePtr& module_ptr() const { return V_; }
  const std::map<Weight, SVector>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::vector<Weight> support() const;

  /// Adds v e^ν; v must have length dim V.
  void add_term(const Weight& nu, const SVector& v);
  /// Adds v e^ν with v given in V[0] coordinates.
  void add_zero_weight_term(const Weight& nu, const SVector& v0);

  TorusFunction operator-() const;
  friend TorusFunction operator+(TorusFunction a, const TorusFunction& b);
  friend TorusFunction operator-(TorusFunction a, const TorusFunction& b) { return a + (-b); }
  friend TorusFunction operator*(const Scalar& s, const TorusFunction& f);
  friend TorusFunction operator*(const CharPoly& p, const TorusFunction& f);
  friend bool operator==(const TorusFunction& a, const TorusFunction& b) { return a.terms_ == b.terms_; }

  /// Coefficients restricted to V[0] coordinates (throws if any component
  /// lies outside V[0]).
  std::map<Weight, SVector> zero_weight_terms() const;

 private:
  ModulePtr V_;
  std::map<Weight, SVector> terms_;
};

TorusFunction e_action(const TorusFunction& f, int i, int n);

struct NotDivisible {
  int factor = 0;     // k of the first factor 1 − q_i^{2k} e^{α_i} that fails
  Weight coset_rep;   // representative of the α_i-coset where it fails
  Weight at;          // weight carrying the remainder
  SVector remainder;  // nonzero
};
using DivisionResult = std::variant<TorusFunction, NotDivisible>;

/// Exact division by ∏_{k=1}^n (1 − q_i^{2k} e^{α_i}).
DivisionResult divide_by_qstring(const TorusFunction& f, int i, int n);

SVector evaluate_at_weight(const TorusFunction& f, const Weight& lambda);
TorusFunction weyl_pushforward(const TorusFunction& f, const WeylElement& w);
std::map<Weight, QVector> classical_limit(const TorusFunction& f);
/// Lattice points of the convex hull of the support.
std::vector<Weight> weight_diagram(const TorusFunction& f);
std::vector<Weight> weight_diagram(const std::vector<Weight>& support);

/// Representative of ν + Zα_i with rep(h_i) ∈ {0, 1}, and the position t with
/// ν = rep + t α_i.
std::pair<Weight, int> alpha_coset(const CartanDatum& dat, const Weight& nu, int i);

}  // namespace qchev
