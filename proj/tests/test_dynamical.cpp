#include "doctest.h"
#include "qchev/dynamical.hpp"
#include "qchev/errors.hpp"

using namespace qchev;

namespace {

Scalar q(long k) { return Scalar::q_power(Rational(k)); }

}  // namespace

TEST_CASE("rank-one product formula") {
  CHECK(a_operator_rank1_formula(0, 5) == Scalar(1));
  for (long l = 1; l <= 6; ++l)
    CHECK(a_operator_rank1_formula(1, l) == -(quantum_integer(l + 2) / quantum_integer(l)));
  CHECK(a_operator_rank1_formula(1, 2) == -(q(2) + q(-2)));
  CHECK_THROWS_AS(a_operator_rank1_formula(2, 1), PoleError);
  CHECK_THROWS_AS(a_operator_rank1_formula(1, 0), PoleError);
  CHECK_NOTHROW(a_operator_rank1_formula(1, -3));
}

TEST_CASE("rank-one operator read off from Verma intertwiners") {
  CHECK(a_operator_rank1_direct(0, 2, 3) == Scalar(1));
  for (int m = 1; m <= 2; ++m)
    for (int l = m; l <= m + 3; ++l) CHECK(a_operator_rank1_direct(m, l, l + 1) == a_operator_rank1_formula(m, l));
  CHECK_THROWS_AS(a_operator_rank1_direct(1, 3, 3), DepthError);
}

TEST_CASE("extremal singular vectors") {
  CartanDatum a1('A', 1);
  WeightModule M = verma_truncated(a1, Weight{3}, 5);
  ExtremalVector e0 = extremal_singular_vector(M, WeylElement::identity(a1), Weight{3});
  CHECK(e0.space == 0);
  CHECK(e0.v == SVector{Scalar(1)});
  ExtremalVector e1 = extremal_singular_vector(M, WeylElement::simple(a1, 0), Weight{3});
  CHECK(e1.weight == Weight{-5});
  CHECK(e1.exponents == std::vector<int>{4});
  CHECK(e1.v == SVector{quantum_factorial(4).inverse()});
  CHECK_THROWS_AS(extremal_singular_vector(verma_truncated(a1, Weight{3}, 3), WeylElement::simple(a1, 0), Weight{3}),
                  DepthError);

  CartanDatum a2('A', 2);
  WeightModule N = verma_truncated(a2, Weight{1, 0}, 6);
  ExtremalVector e = extremal_singular_vector(N, std::vector<int>{0, 1}, Weight{1, 0});
  CHECK(e.exponents == std::vector<int>{3, 1});
  CHECK(e.weight == Weight{-4, 1});
  // Both reduced words of the longest element give the same vector.
  ExtremalVector x = extremal_singular_vector(N, std::vector<int>{0, 1, 0}, Weight{1, 0});
  ExtremalVector y = extremal_singular_vector(N, std::vector<int>{1, 0, 1}, Weight{1, 0});
  CHECK(x.space == y.space);
  CHECK(x.v == y.v);
  CHECK_THROWS_AS(extremal_singular_vector(N, std::vector<int>{0, 0}, Weight{1, 0}), DomainError);
}

TEST_CASE("operators on V[0]") {
  CartanDatum a1('A', 1);
  WeightModule L2 = irreducible(a1, Weight{2});
  const WeylElement s = WeylElement::simple(a1, 0);
  CHECK(a_operator_V0(s, L2, Weight{2})(0, 0) == -(q(2) + q(-2)));
  CHECK(a_operator_V0(WeylElement::identity(a1), L2, Weight{2}) == SMatrix::identity(1));

  CartanDatum a2('A', 2);
  WeightModule adj = irreducible(a2, Weight{1, 1});
  ZeroWeightBlocks b = rank_one_blocks(adj, 0);
  CHECK(b.ms == std::vector<int>{0, 1});
  CHECK(b.dims == std::vector<std::size_t>{1, 1});
  CHECK(b.projectors[0] * b.projectors[0] == b.projectors[0]);
  CHECK(b.projectors[0] + b.projectors[1] == SMatrix::identity(2));
  // The s_1 operator acts by 1 on the trivial block.
  SMatrix a = a_operator_simple(adj, 0, 3);
  CHECK(a * b.projectors[0] == b.projectors[0]);
  CHECK(a * b.projectors[1] == a_operator_rank1_formula(1, 3) * b.projectors[1]);
}

TEST_CASE("symbolic unshifted operators") {
  CartanDatum a1('A', 1);
  WeightModule L2 = irreducible(a1, Weight{2});
  const WeylElement s = WeylElement::simple(a1, 0);
  SymbolicOperator S = unshifted_symbolic(s, L2);
  for (int z = -6; z <= 6; ++z) {
    if (z == -1) continue;
    const Scalar expect = (q(1 - z) - q(z - 1)) / (q(1 + z) - q(-1 - z));
    CHECK(S.evaluate(a1, Weight{z}, 1)(0, 0) == expect);
    CHECK(unshifted_operator(s, L2, Weight{z})(0, 0) == expect);
  }
  CHECK_THROWS_AS(S.evaluate(a1, Weight{-1}, 1), PoleError);
  CHECK((S.substitute(a1, s) * S).is_identity());

  CartanDatum a2('A', 2);
  WeightModule adj = irreducible(a2, Weight{1, 1});
  for (const WeylElement& w : weyl_group(a2)) {
    SymbolicOperator T = unshifted_symbolic(w, adj);
    for (const Weight& l : {Weight{2, 3}, Weight{4, 1}, Weight{-5, 1}})
      CHECK(T.evaluate(a2, l, 1) == unshifted_operator(w, adj, l));
  }
  WeightModule triv = irreducible(a2, Weight{0, 0});
  for (const WeylElement& w : weyl_group(a2)) CHECK(unshifted_symbolic(w, triv).is_identity());
}
