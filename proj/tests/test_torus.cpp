#include <random>

#include "doctest.h"
#include "qchev/errors.hpp"
#include "qchev/hull.hpp"
#include "qchev/torus.hpp"

using namespace qchev;

namespace {

ModulePtr irr(const CartanDatum& dat, const Weight& w) { return std::make_shared<const WeightModule>(irreducible(dat, w)); }
Scalar q(long k) { return Scalar::q_power(Rational(k)); }

}  // namespace

TEST_CASE("character ring arithmetic") {
  CartanDatum a2('A', 2);
  CharPoly a = CharPoly::monomial(Weight{1, 0}) + CharPoly::constant(q(1), 2);
  CharPoly b = CharPoly::monomial(Weight{-1, 0}) - CharPoly::constant(q(1), 2);
  CharPoly p = a * b;
  CHECK(p.terms().size() == 3);
  CHECK(p.terms().at(Weight{0, 0}) == Scalar(1) - q(2));
  CHECK((a - a).is_zero());
  const WeylElement s1 = WeylElement::simple(a2, 0);
  CHECK(CharPoly::monomial(Weight{1, 0}).pushforward(a2, s1) == CharPoly::monomial(Weight{-1, 1}));
}

TEST_CASE("character of L_1 at the fundamental weight") {
  CartanDatum a1('A', 1);
  TorusFunction chi(irr(a1, Weight{0}));
  chi.add_term(Weight{1}, {Scalar(1)});
  chi.add_term(Weight{-1}, {Scalar(1)});
  CHECK(evaluate_at_weight(chi, Weight{1})[0] == quantum_integer(2));
  CHECK(evaluate_at_weight(chi, Weight{0})[0] == Scalar(2));
  CHECK(weyl_pushforward(chi, WeylElement::simple(a1, 0)) == chi);
  CHECK(classical_limit(chi).size() == 2);
}

TEST_CASE("division by q-strings") {
  CartanDatum a1('A', 1);
  ModulePtr V = irr(a1, Weight{2});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    TorusFunction g(V);
    for (int n = -4; n <= 4; ++n) {
      SVector v(V->dim());
      for (auto& x : v) x = Scalar(coef(rng));
      g.add_term(Weight{n}, v);
    }
    for (int n = 1; n <= 3; ++n) {
      TorusFunction f = g;
      for (int k = 1; k <= n; ++k) f = qstring_factor(*V, 0, k) * f;
      auto r = divide_by_qstring(f, 0, n);
      REQUIRE(std::holds_alternative<TorusFunction>(r));
      CHECK(std::get<TorusFunction>(r) == g);
    }
  }
  TorusFunction h(V);
  h.add_term(Weight{0}, {Scalar(0), Scalar(1), Scalar(0)});
  auto r = divide_by_qstring(h, 0, 1);
  REQUIRE(std::holds_alternative<NotDivisible>(r));
  CHECK(std::get<NotDivisible>(r).factor == 1);
  // 1 - q^2 e^alpha divides e^0 - q^2 e^alpha but 1 - q^4 e^alpha does not.
  h.add_term(Weight{2}, {Scalar(0), -q(2), Scalar(0)});
  CHECK(std::holds_alternative<TorusFunction>(divide_by_qstring(h, 0, 1)));
  CHECK(std::holds_alternative<NotDivisible>(divide_by_qstring(h, 0, 2)));
  CHECK_THROWS_AS(divide_by_qstring(h, 0, 0), DomainError);
}

TEST_CASE("E action and zero-weight terms") {
  CartanDatum a1('A', 1);
  ModulePtr V = irr(a1, Weight{2});
  TorusFunction f(V);
  f.add_zero_weight_term(Weight{3}, {Scalar(2)});
  CHECK(f.zero_weight_terms().at(Weight{3}) == SVector{Scalar(2)});
  TorusFunction e1 = e_action(f, 0, 1);
  CHECK(e1.terms().size() == 1);
  CHECK(e_action(f, 0, 2).is_zero());
  CHECK_THROWS_AS(e1.zero_weight_terms(), DomainError);
  CHECK_THROWS_AS(f.add_term(Weight{0}, {Scalar(1)}), DomainError);
}

TEST_CASE("cosets of the root lattice along one direction") {
  CartanDatum a2('A', 2);
  for (const Weight& nu : {Weight{3, -1}, Weight{-2, 4}, Weight{0, 0}, Weight{-1, 1}}) {
    auto [rep, t] = alpha_coset(a2, nu, 0);
    CHECK((rep[0] == 0 || rep[0] == 1));
    CHECK(rep + t * a2.simple_root(0) == nu);
  }
}

TEST_CASE("convex hulls and weight diagrams") {
  CHECK(weight_diagram(std::vector<Weight>{Weight{-2}, Weight{2}}).size() == 5);
  CHECK(weight_diagram(std::vector<Weight>{Weight{3}}).size() == 1);
  CHECK(weight_diagram(std::vector<Weight>{}).empty());
  CartanDatum a2('A', 2);
  auto orbit = weyl_orbit(a2, Weight{1, 1});
  CHECK(orbit.size() == 6);
  auto wd = weight_diagram(orbit);
  // Six roots, zero, and the six weights ±ω1, ±ω2, ±(ω1−ω2).
  CHECK(wd.size() == 13);
  ConvexHull h(orbit);
  CHECK(h.dimension() == 2);
  CHECK(h.vertices().size() == 6);
  CHECK(h.contains(Weight{0, 0}));
  CHECK(!h.contains(Weight{2, 0}));
  // Interior and edge points are not vertices.
  ConvexHull seg(std::vector<Weight>{Weight{0, 0}, Weight{1, 1}, Weight{2, 2}});
  CHECK(seg.dimension() == 1);
  CHECK(seg.vertices() == std::vector<Weight>{Weight{0, 0}, Weight{2, 2}});
  CHECK(seg.lattice_points().size() == 3);
  CHECK(!seg.contains(Weight{1, 0}));
  // B2 orbit of (1,1): 8 vertices.
  CartanDatum b2('B', 2);
  ConvexHull oct(weyl_orbit(b2, Weight{1, 1}));
  CHECK(oct.vertices().size() == 8);
}
