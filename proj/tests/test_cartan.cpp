#include <random>
#include <set>

#include "doctest.h"
#include "qchev/cartan.hpp"
#include "qchev/errors.hpp"

using namespace qchev;

namespace {

const char* kTypes[] = {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2"};

// Brute-force Weyl group size by orbit of a generic weight.
std::size_t orbit_size(const CartanDatum& d) {
  std::set<Weight> seen{d.rho()};
  std::vector<Weight> todo{d.rho()};
  while (!todo.empty()) {
    Weight x = todo.back();
    todo.pop_back();
    for (int i = 0; i < d.rank(); ++i) {
      Weight y = d.reflect(i, x);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen.size();
}

Weight random_weight(std::mt19937& rng, int r) {
  std::uniform_int_distribution<int> u(-5, 5);
  Weight w = Weight::zero(r);
  for (int& x : w.c) x = u(rng);
  return w;
}

}  // namespace

TEST_CASE("Cartan data tables") {
  CartanDatum a1('A', 1);
  CHECK(a1.matrix() == std::vector<std::vector<int>>{{2}});
  CHECK(a1.pairing_denominator() == 2);
  CartanDatum a2('A', 2);
  CHECK(a2.matrix() == std::vector<std::vector<int>>{{2, -1}, {-1, 2}});
  CHECK(a2.symmetrizers() == std::vector<int>{1, 1});
  CartanDatum b2('B', 2);
  CHECK(b2.symmetrizers() == std::vector<int>{2, 1});
  // Brute-force oracle: the only symmetrizer in {1,2,3}^2 is the stored one.
  std::vector<std::vector<int>> valid;
  for (int d1 = 1; d1 <= 3; ++d1)
    for (int d2 = 1; d2 <= 3; ++d2)
      if (d1 * b2.a(0, 1) == d2 * b2.a(1, 0)) valid.push_back({d1, d2});
  CHECK(valid == std::vector<std::vector<int>>{{2, 1}});
  CHECK(CartanDatum::from_name("G2").symmetrizers() == std::vector<int>{1, 3});
  CHECK_THROWS_AS(CartanDatum('E', 6), ConfigError);
  CHECK_THROWS_AS(CartanDatum('A', 5), ConfigError);
  CHECK_THROWS_AS(CartanDatum('D', 3), ConfigError);
  CHECK_THROWS_AS(CartanDatum::from_name("X"), ConfigError);
  CHECK_THROWS_AS(CartanDatum::from_name("A1x"), ConfigError);
}

TEST_CASE("pairing") {
  CartanDatum a1('A', 1);
  CHECK(a1.pairing(Weight{2}, Weight{2}) == 2);
  CHECK(a1.pairing(Weight{1}, Weight{1}) == Rational(1, 2));
  for (const char* t : kTypes) {
    CartanDatum d = CartanDatum::from_name(t);
    for (int i = 0; i < d.rank(); ++i)
      for (int j = 0; j < d.rank(); ++j) {
        CHECK(d.pairing(d.simple_root(i), d.simple_root(j)) == d.d(i) * d.a(i, j));
        Rational p = d.pairing(d.fundamental(i), d.fundamental(j)) * d.pairing_denominator();
        CHECK(p.get_den() == 1);
      }
    CHECK(d.pairing(d.rho(), Weight::zero(d.rank())) == 0);
  }
}

TEST_CASE("Weyl group sizes and longest element") {
  std::map<std::string, std::size_t> expected{{"A1", 2}, {"A2", 6}, {"A3", 24}, {"A4", 120}, {"B2", 8},
                                              {"B3", 48}, {"B4", 384}, {"C3", 48}, {"D4", 192}, {"G2", 12}};
  for (const auto& [name, n] : expected) {
    CartanDatum d = CartanDatum::from_name(name);
    auto W = weyl_group(d);
    CHECK(W.size() == n);
    CHECK(orbit_size(d) == n);
    WeylElement w0 = longest_element(d);
    CHECK(w0.length() == static_cast<int>(d.positive_roots().size()));
    for (const auto& w : W) CHECK(inversion_count(d, w) == w.length());
  }
  CHECK(longest_element(CartanDatum('A', 2)).length() == 3);
}

TEST_CASE("Weyl actions: involution, braid relations, invariance of the form") {
  std::mt19937 rng(7);
  for (const char* t : kTypes) {
    CartanDatum d = CartanDatum::from_name(t);
    auto W = weyl_group(d);
    for (int trial = 0; trial < 10; ++trial) {
      Weight l = random_weight(rng, d.rank()), m = random_weight(rng, d.rank());
      for (int i = 0; i < d.rank(); ++i) CHECK(d.reflect(i, d.reflect(i, l)) == l);
      const WeylElement& w = W[static_cast<std::size_t>(trial * 7) % W.size()];
      const WeylElement& v = W[static_cast<std::size_t>(trial * 3 + 1) % W.size()];
      CHECK(d.pairing(w.act(d, l), w.act(d, m)) == d.pairing(l, m));
      CHECK(w.compose(d, v).act(d, l) == w.act(d, v.act(d, l)));
      CHECK(dot_action(d, w.compose(d, v), l) == dot_action(d, w, dot_action(d, v, l)));
      CHECK(w.inverse(d).act(d, w.act(d, l)) == l);
    }
  }
  CartanDatum a2('A', 2);
  CHECK(WeylElement::from_word(a2, {0, 1, 0}) == WeylElement::from_word(a2, {1, 0, 1}));
  CHECK(WeylElement::from_word(a2, {0, 1, 0}).reduced_word() == std::vector<int>{0, 1, 0});
  CHECK(WeylElement::from_word(a2, {0, 0}) == WeylElement::identity(a2));
}

TEST_CASE("dot action examples") {
  CartanDatum a1('A', 1);
  WeylElement s = WeylElement::simple(a1, 0);
  for (int l = -4; l <= 6; ++l) CHECK(dot_action(a1, s, Weight{l}) == Weight{-l - 2});
  CHECK(dot_action(a1, WeylElement::identity(a1), Weight{3}) == Weight{3});
  CartanDatum a2('A', 2);
  CHECK(dot_action(a2, WeylElement::simple(a2, 0), Weight{0, 0}) == Weight{-2, 1});
}

TEST_CASE("dominant representative") {
  CartanDatum a1('A', 1);
  auto r = dominant_representative(a1, Weight{-3});
  CHECK(r.mu == Weight{3});
  CHECK(r.w == WeylElement::simple(a1, 0));
  CartanDatum a2('A', 2);
  auto r2 = dominant_representative(a2, Weight{-1, -1});
  CHECK(r2.mu.is_dominant());
  CHECK(r2.w.act(a2, r2.mu) == Weight{-1, -1});
  auto orbit = weyl_orbit(a2, Weight{-1, -1});
  int dominant = 0;
  for (const Weight& x : orbit) dominant += x.is_dominant();
  CHECK(dominant == 1);
  CHECK(std::find(orbit.begin(), orbit.end(), r2.mu) != orbit.end());
  std::mt19937 rng(3);
  for (const char* t : kTypes) {
    CartanDatum d = CartanDatum::from_name(t);
    for (int trial = 0; trial < 10; ++trial) {
      Weight l = random_weight(rng, d.rank());
      auto rep = dominant_representative(d, l);
      CHECK(rep.mu.is_dominant());
      CHECK(rep.w.act(d, rep.mu) == l);
    }
    Weight dom = d.rho();
    CHECK(dominant_representative(d, dom).w == WeylElement::identity(d));
  }
}
