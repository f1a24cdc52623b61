#include "doctest.h"
#include "qchev/errors.hpp"
#include "qchev/module.hpp"

using namespace qchev;

namespace {

Scalar q(long k) { return Scalar::q_power(Rational(k)); }

bool all_dims_one(const WeightModule& m) {
  for (const auto& s : m.spaces())
    if (s.dim != 1) return false;
  return true;
}

}  // namespace

TEST_CASE("rank-one truncated Verma") {
  CartanDatum a1('A', 1);
  WeightModule M = verma_truncated(a1, Weight{3}, 5);
  CHECK(M.spaces().size() == 6);
  CHECK(all_dims_one(M));
  for (int n = 0; n <= 5; ++n) {
    // <F^n m, F^n m> = prod_{k=1}^n [k][3-k+1].
    Scalar expect(1);
    for (int k = 1; k <= n; ++k) expect *= quantum_integer(k) * quantum_integer(3 - k + 1);
    CHECK(contravariant_form(M, Weight{3 - 2 * n})(0, 0) == expect);
  }
  WeightModule M2 = verma_truncated(a1, Weight{2}, 4);
  CHECK(contravariant_form(M2, Weight{2 - 6})(0, 0).is_zero());
  CHECK(contravariant_form(verma_truncated(a1, Weight{1}, 2), Weight{-1})(0, 0) == Scalar(1));
  CHECK(contravariant_form(M, Weight{3})(0, 0) == Scalar(1));
  CHECK_THROWS_AS(contravariant_form(M, Weight{0}), DomainError);
}

TEST_CASE("A2 Verma weight space of F1F2 and F2F1") {
  CartanDatum a2('A', 2);
  WeightModule M = verma_truncated(a2, Weight{1, 1}, 2);
  const Weight nu = Weight{1, 1} - a2.simple_root(0) - a2.simple_root(1);
  CHECK(M.dim_of(nu) == 2);
  CHECK(M.dim_of(Weight{1, 1} - 2 * a2.simple_root(0)) == 1);
  // Kostant partition counts at depth 3: weight α1+α2 twice... the Serre
  // relations must cut F1F1F2, F1F2F1, F2F1F1 down to 2 dimensions.
  WeightModule M3 = verma_truncated(a2, Weight{0, 0}, 3);
  CHECK(M3.dim_of(Weight{0, 0} - 2 * a2.simple_root(0) - a2.simple_root(1)) == 2);
  // Symmetric Gram matrix.
  SMatrix g = contravariant_form(M, nu);
  CHECK(g == g.transpose());
}

TEST_CASE("Verma relation check fails only at the boundary") {
  CartanDatum a1('A', 1);
  WeightModule M = verma_truncated(a1, Weight{3}, 4);
  auto v = check_relations(M);
  REQUIRE(!v.empty());
  for (const auto& x : v) CHECK(x.weight == Weight{3 - 8});
  CartanDatum b2('B', 2);
  WeightModule N = verma_truncated(b2, Weight{1, 0}, 4);
  for (const auto& x : check_relations(N)) CHECK(b2.height(Weight{1, 0} - x.weight) >= 3);
}

TEST_CASE("irreducible modules: dimensions") {
  CartanDatum a1('A', 1);
  for (int mu = 0; mu <= 6; ++mu) {
    WeightModule L = irreducible(a1, Weight{mu});
    CHECK(L.dim() == static_cast<std::size_t>(mu + 1));
    CHECK(all_dims_one(L));
    CHECK(check_relations(L).empty());
  }
  WeightModule L2 = irreducible(a1, Weight{2});
  CHECK(L2.spaces().size() == 3);
  CHECK(L2.space(0).weight == Weight{2});
  CHECK(L2.space(1).weight == Weight{0});
  CHECK(L2.space(2).weight == Weight{-2});
  CHECK_THROWS_AS(irreducible(a1, Weight{-1}), DomainError);

  struct Case {
    const char* type;
    Weight hw;
  };
  for (const Case& c : {Case{"A2", {1, 0}}, Case{"A2", {1, 1}}, Case{"A2", {2, 1}}, Case{"B2", {1, 0}},
                        Case{"B2", {0, 1}}, Case{"B2", {0, 2}}, Case{"C2", {1, 1}}, Case{"G2", {1, 0}},
                        Case{"A3", {1, 0, 1}}, Case{"B3", {0, 0, 1}}}) {
    CartanDatum d = CartanDatum::from_name(c.type);
    WeightModule L = irreducible(d, c.hw);
    CHECK(Rational(static_cast<long>(L.dim())) == weyl_dimension(d, c.hw));
    CHECK(check_relations(L).empty());
    // W-invariance of the character.
    for (const auto& s : L.spaces())
      for (int i = 0; i < d.rank(); ++i) CHECK(L.dim_of(d.reflect(i, s.weight)) == s.dim);
  }
  CHECK(irreducible(CartanDatum('A', 2), Weight{1, 0}).dim() == 3);
}

TEST_CASE("radical of the contravariant form equals the quotient kernel") {
  CartanDatum a2('A', 2);
  const Weight lam{1, 1};
  WeightModule M = verma_truncated(a2, lam, 5);
  WeightModule L = irreducible(a2, lam);
  for (const auto& s : M.spaces()) {
    SMatrix g = contravariant_form(M, s.weight);
    CHECK(rank(g) == L.dim_of(s.weight));
  }
  CartanDatum b2('B', 2);
  WeightModule Mb = verma_truncated(b2, Weight{0, 2}, 5);
  WeightModule Lb = irreducible(b2, Weight{0, 2});
  for (const auto& s : Mb.spaces()) CHECK(rank(contravariant_form(Mb, s.weight)) == Lb.dim_of(s.weight));
}

TEST_CASE("radical is a submodule and the highest string is cut") {
  CartanDatum a1('A', 1);
  for (int lam = 0; lam <= 4; ++lam) {
    WeightModule M = verma_truncated(a1, Weight{lam}, lam + 2);
    // F^{λ+1} m spans the radical at weight -λ-2; applying F keeps it radical.
    CHECK(contravariant_form(M, Weight{-lam - 2})(0, 0).is_zero());
    CHECK(contravariant_form(M, Weight{-lam - 4})(0, 0).is_zero());
    CHECK(!contravariant_form(M, Weight{-lam})(0, 0).is_zero());
  }
}

TEST_CASE("classical limit of an irreducible is a g-module") {
  CartanDatum a2('A', 2);
  WeightModule L = irreducible(a2, Weight{1, 1});
  for (int i = 0; i < 2; ++i) {
    SMatrix e = L.e_full(i), f = L.f_full(i);
    SMatrix c = e * f - f * e;
    for (std::size_t k = 0; k < L.spaces().size(); ++k) {
      const auto& s = L.space(k);
      for (std::size_t x = 0; x < s.dim; ++x)
        CHECK(evaluate_at_one(c(s.offset + x, s.offset + x)) == s.weight[i]);
    }
  }
}

TEST_CASE("tensor products") {
  CartanDatum a1('A', 1);
  WeightModule L0 = irreducible(a1, Weight{0}), L1 = irreducible(a1, Weight{1}), L2 = irreducible(a1, Weight{2}),
               L4 = irreducible(a1, Weight{4});
  WeightModule T = tensor(L0, L4);
  REQUIRE(T.spaces().size() == L4.spaces().size());
  for (std::size_t k = 0; k < T.spaces().size(); ++k) {
    CHECK(T.e(0, k).target == L4.e(0, k).target);
    if (T.e(0, k).target >= 0) CHECK(T.e(0, k).m == L4.e(0, k).m);
    if (T.f(0, k).target >= 0) CHECK(T.f(0, k).m == L4.f(0, k).m);
  }
  CHECK(tensor(L2, L2).dim_of(Weight{0}) == 3);
  CHECK(check_relations(tensor(L1, L1)).empty());
  CHECK(check_relations(tensor(L2, L4)).empty());
  CartanDatum a2('A', 2);
  WeightModule V = irreducible(a2, Weight{1, 0});
  CHECK(check_relations(tensor(V, irreducible(a2, Weight{0, 1}))).empty());
  CHECK_THROWS_AS(tensor(L1, V), DomainError);
}

TEST_CASE("direct sums and restriction") {
  CartanDatum a2('A', 2);
  WeightModule adj = irreducible(a2, Weight{1, 1});
  WeightModule r = restrict_sl2(adj, 0);
  CHECK(r.datum().rank() == 1);
  CHECK(r.dim_of(Weight{0}) == 2);
  CHECK(check_relations(r).empty());
  WeightModule r2 = restrict_sl2(irreducible(a2, Weight{1, 0}), 0);
  // L1 + L0: weights 1, -1 (one each) and 0 (one).
  CHECK(r2.dim_of(Weight{1}) == 1);
  CHECK(r2.dim_of(Weight{-1}) == 1);
  CHECK(r2.dim_of(Weight{0}) == 1);
  CartanDatum a1('A', 1);
  WeightModule L3 = irreducible(a1, Weight{3});
  WeightModule r3 = restrict_sl2(L3, 0);
  for (std::size_t k = 0; k < L3.spaces().size(); ++k) {
    CHECK(r3.space(k).weight == L3.space(k).weight);
    if (L3.e(0, k).target >= 0) CHECK(r3.e(0, k).m == L3.e(0, k).m);
  }
  CartanDatum b2('B', 2);
  WeightModule rb = restrict_sl2(irreducible(b2, Weight{0, 2}), 0);
  CHECK(rb.q_power() == 2);
  CHECK(check_relations(rb).empty());
  WeightModule s = module_from_highest_weights(a1, {Weight{2}, Weight{0}});
  CHECK(s.dim() == 4);
  CHECK(s.dim_of(Weight{0}) == 2);
  CHECK(check_relations(s).empty());
}

TEST_CASE("quantum parameter convention of tensor products") {
  CartanDatum a1('A', 1);
  WeightModule L1 = irreducible(a1, Weight{1});
  WeightModule T = tensor(L1, L1);
  // E on v_{-1} (x) v_{-1}: E v (x) q^{-1} v + v (x) E v.
  const int k = T.index_of(Weight{-2});
  REQUIRE(k >= 0);
  const OpBlock& e = T.e(0, static_cast<std::size_t>(k));
  REQUIRE(e.target >= 0);
  const Scalar ef = L1.e(0, 1).m(0, 0);
  CHECK(e.m(0, 0) == ef * q(-1));
  CHECK(e.m(1, 0) == ef);
}
