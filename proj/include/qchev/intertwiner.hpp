#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "qchev/module.hpp"

namespace qchev {

/// L_μ, V and L_μ ⊗ V together with the block layout of the product.
struct TensorContext {
  Weight mu;
  ModulePtr L, V, LV;
  std::vector<std::vector<TensorBlock>> layout;
  int mu_space = -1;              // index of (L_μ ⊗ V)[μ], -1 if absent
  std::size_t expect_offset = 0;  // offset of the l_μ ⊗ V[0] block inside it
  std::size_t v0_dim = 0;

  /// Offset of the L[ν] ⊗ V[0] block inside (L⊗V)[ν] for the L-space k, or -1.
  long diagonal_offset(std::size_t l_space) const;
};
using ContextPtr = std::shared_ptr<const TensorContext>;

ContextPtr make_context(const Weight& mu, ModulePtr V);

/// A module map L_μ → L_μ ⊗ V, stored through the image of l_μ.
struct Intertwiner {
  ContextPtr ctx;
  SVector image;  // coordinates in (L_μ ⊗ V)[μ]
};

/// Canonical echelon basis of the vectors in M[ν] killed by every E_i.
std::vector<SVector> singular_vectors(const WeightModule& m, const Weight& nu);

/// dim{v ∈ V[0] : E_i^{μ(h_i)+1} v = 0 for all i}.
std::size_t e_power_kernel_dim(const Weight& mu, const WeightModule& V);
/// True iff E_i^{μ(h_i)+1} v = 0 for all i; v given in V[0] coordinates.
bool satisfies_e_power(const Weight& mu, const WeightModule& V, const SVector& v);

/// Canonical basis of the admissible expectation values (the kernel above).
std::vector<SVector> admissible_expectations(const Weight& mu, const WeightModule& V);

/// Dimension of Hom(L_μ, L_μ ⊗ V) by a kernel computation, cross-checked
/// against e_power_kernel_dim.
std::size_t hom_dimension(const Weight& mu, const ModulePtr& V);

/// Basis of the intertwiner space (singular vectors of weight μ).
std::vector<Intertwiner> intertwiner_basis(const ContextPtr& ctx);

/// Expectation values of a list of intertwiners as columns of a V[0] × n matrix.
SMatrix expectation_matrix(const std::vector<Intertwiner>& basis, std::size_t v0_dim);

/// The unique intertwiner with expectation value v (V[0] coordinates).
Intertwiner intertwiner_from_expectation(const ContextPtr& ctx, const SVector& v);
Intertwiner intertwiner_from_expectation(const Weight& mu, const ModulePtr& V, const SVector& v);

/// The l_μ ⊗ V[0] block of the image of l_μ.
SVector expectation_value(const Intertwiner& phi);

/// Φ applied to every basis vector of L_μ (in global basis order). Each entry
/// is (index of the (L⊗V) weight space or -1 for zero, coordinates there).
std::vector<std::pair<int, SVector>> intertwiner_images(const Intertwiner& phi);

/// Exhaustive check of Φ(X l) = Δ(X) Φ(l) for X in {E_i, F_i}.
bool check_intertwiner(const Intertwiner& phi);

/// Projection of a full V-vector onto V[0] coordinates; throws DomainError if
/// the vector has components outside V[0].
SVector zero_weight_part(const WeightModule& V, const SVector& full);

}  // namespace qchev
