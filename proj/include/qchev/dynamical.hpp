#pragma once

#include <vector>

#include "qchev/module.hpp"
#include "qchev/torus.hpp"

namespace qchev {

/// Decomposition of V[0] under the i-th rank-one subalgebra: V[0] splits into
/// the zero-weight lines of L_{2m} summands, i.e. the eigenspaces of F_i E_i
/// with eigenvalue [m]_{q_i}[m+1]_{q_i}.
struct ZeroWeightBlocks {
  int i = 0;
  long qd = 1;                        // q_i = q^qd
  std::vector<int> ms;                // string parameters present
  std::vector<std::size_t> dims;      // block dimensions
  std::vector<SMatrix> projectors;    // one per entry of ms, on V[0]
};
ZeroWeightBlocks rank_one_blocks(const WeightModule& V, int i);

/// (−1)^m ∏_{j=1}^m [λ+1+j]_{q^d} / [λ+1−j]_{q^d}.
Scalar a_operator_rank1_formula(long m, long lambda, long d = 1);

/// Same quantity read off from intertwiners of truncated Verma modules.
Scalar a_operator_rank1_direct(int m, int lambda, int depth);

/// A_{s_i,V}(λ) on V[0], where n = λ(h_i).
SMatrix a_operator_simple(const WeightModule& V, int i, long n);
/// A_{w,V}(λ) on V[0] via the dot-shifted product over a reduced word.
SMatrix a_operator_V0(const WeylElement& w, const WeightModule& V, const Weight& lambda);
/// 𝒜_{w,V}(λ) = A_{w,V}(−λ−ρ).
SMatrix unshifted_operator(const WeylElement& w, const WeightModule& V, const Weight& lambda);

/// Matrix on V[0] with entries in Q(q)(P): numerator entries in the character
/// ring and one common denominator. The symbolic weight λ enters through
/// e^ν ↦ q^{2⟨ν,λ⟩}.
struct SymbolicOperator {
  std::size_t n = 0;
  std::vector<CharPoly> num;  // row-major
  CharPoly den;

  static SymbolicOperator identity(std::size_t n, int rank);
  const CharPoly& at(std::size_t r, std::size_t c) const { return num[r * n + c]; }
  SymbolicOperator operator*(const SymbolicOperator& o) const;
  /// The operator λ ↦ this(uλ).
  SymbolicOperator substitute(const CartanDatum& dat, const WeylElement& u) const;
  bool equals(const SymbolicOperator& o) const;
  bool is_identity() const;
  SMatrix evaluate(const CartanDatum& dat, const Weight& lambda, int q_power) const;
};

SymbolicOperator unshifted_symbolic_simple(const WeightModule& V, int i);
SymbolicOperator unshifted_symbolic(const WeylElement& w, const WeightModule& V);

struct ExtremalVector {
  Weight weight;               // w·λ
  std::vector<int> exponents;  // n_j along the reduced word
  int space = -1;              // index in the Verma module
  SVector v;
};
std::vector<int> extremal_exponents(const CartanDatum& dat, const std::vector<int>& word, const Weight& lambda);
/// m^λ_{w·λ} = F_{i1}^{n1} ... F_{il}^{nl} / ([n1]! ... [nl]!) m_λ, verified singular.
ExtremalVector extremal_singular_vector(const WeightModule& M, const WeylElement& w, const Weight& lambda);
/// Same, along an explicitly given reduced word.
ExtremalVector extremal_singular_vector(const WeightModule& M, const std::vector<int>& word, const Weight& lambda);

}  // namespace qchev
