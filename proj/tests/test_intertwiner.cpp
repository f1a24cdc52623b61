#include "doctest.h"
#include "qchev/errors.hpp"
#include "qchev/intertwiner.hpp"

using namespace qchev;

namespace {

ModulePtr irr(const CartanDatum& dat, const Weight& w) { return std::make_shared<const WeightModule>(irreducible(dat, w)); }

}  // namespace

TEST_CASE("singular vectors in rank-one tensor products") {
  CartanDatum a1('A', 1);
  WeightModule L2 = irreducible(a1, Weight{2});
  WeightModule P = tensor(L2, L2);
  CHECK(singular_vectors(P, Weight{2}).size() == 1);
  CHECK(singular_vectors(P, Weight{4}).size() == 1);
  CHECK(singular_vectors(P, Weight{0}).size() == 1);
  CHECK(singular_vectors(P, Weight{-2}).empty());
  CHECK(singular_vectors(P, Weight{6}).empty());
  WeightModule Q = tensor(irreducible(a1, Weight{0}), L2);
  CHECK(singular_vectors(Q, Weight{0}).empty());
}

TEST_CASE("Hom(L_l, L_l x L_2m) dimension table") {
  CartanDatum a1('A', 1);
  for (int m = 0; m <= 2; ++m) {
    ModulePtr V = irr(a1, Weight{2 * m});
    for (int l = 0; l <= 5; ++l) CHECK(hom_dimension(Weight{l}, V) == (l >= m ? 1u : 0u));
  }
  CHECK_THROWS_AS(hom_dimension(Weight{-1}, irr(a1, Weight{2})), DomainError);
}

TEST_CASE("A2 adjoint intertwiner spaces") {
  CartanDatum a2('A', 2);
  ModulePtr adj = irr(a2, Weight{1, 1});
  CHECK(hom_dimension(Weight{0, 0}, adj) == 0);
  CHECK(hom_dimension(Weight{1, 0}, adj) == 1);
  CHECK(hom_dimension(Weight{0, 1}, adj) == 1);
  CHECK(hom_dimension(Weight{1, 1}, adj) == 2);
  CHECK(hom_dimension(Weight{2, 1}, adj) == 2);
}

TEST_CASE("rank-one intertwiner coefficients") {
  CartanDatum a1('A', 1);
  ModulePtr L2 = irr(a1, Weight{2});
  for (int mu = 1; mu <= 4; ++mu) {
    Intertwiner phi = intertwiner_from_expectation(Weight{mu}, L2, SVector{Scalar(1)});
    CHECK(check_intertwiner(phi));
    CHECK(expectation_value(phi) == SVector{Scalar(1)});
    // The image of l_mu has one more coefficient, on F l_mu (x) v_2.
    REQUIRE(phi.image.size() == 2);
    const Scalar c = phi.image[0].is_one() ? phi.image[1] : phi.image[0];
    CHECK(evaluate_at_one(c) == Rational(-2) / mu);
  }
  CHECK_THROWS_AS(intertwiner_from_expectation(Weight{0}, L2, SVector{Scalar(1)}), NoIntertwiner);
  CHECK_THROWS_AS(intertwiner_from_expectation(Weight{1}, L2, SVector{Scalar(1), Scalar(1)}), DomainError);
  Intertwiner zero = intertwiner_from_expectation(Weight{0}, L2, SVector{Scalar(0)});
  CHECK(is_zero_vector(zero.image));
}

TEST_CASE("intertwiners for B2 and the trivial module") {
  CartanDatum b2('B', 2);
  ModulePtr adj = irr(b2, Weight{0, 2});
  CHECK(adj->dim() == 10);
  ContextPtr ctx = make_context(Weight{1, 0}, adj);
  auto basis = intertwiner_basis(ctx);
  CHECK(basis.size() == e_power_kernel_dim(Weight{1, 0}, *adj));
  for (const auto& phi : basis) CHECK(check_intertwiner(phi));

  ModulePtr triv = irr(b2, Weight{0, 0});
  Intertwiner id = intertwiner_from_expectation(Weight{1, 1}, triv, SVector{Scalar(1)});
  CHECK(check_intertwiner(id));
  for (const auto& [space, v] : intertwiner_images(id)) {
    CHECK(space >= 0);
    CHECK(v.size() >= 1);
  }
}
