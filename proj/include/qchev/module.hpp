#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qchev/cartan.hpp"
#include "qchev/linalg.hpp"

namespace qchev {

struct WeightSpace {
  Weight weight;
  std::size_t dim = 0;
  std::size_t offset = 0;               // first global basis index
  std::vector<std::string> labels;
  std::vector<std::vector<int>> words;  // F-words (Verma and irreducible only)
};

/// Action of one generator on one weight space. target < 0 means the image
/// lies outside the stored module (zero, or beyond a truncation boundary).
struct OpBlock {
  int target = -1;
  SMatrix m;
};

/// A finite weight-graded module. The effective quantum parameter of the i-th
/// node is q^(q_power * d_i).
class WeightModule {
 public:
  WeightModule(CartanDatum datum, int q_power = 1);

  const CartanDatum& datum() const { return datum_; }
  int q_power() const { return q_power_; }
  /// Exponent multiplier d for [·]_{q^d} on node i.
  long qd(int i) const { return static_cast<long>(q_power_) * datum_.d(i); }

  std::size_t dim() const { return dim_; }
  const std::vector<WeightSpace>& spaces() const { return spaces_; }
  const WeightSpace& space(std::size_t k) const { return spaces_[k]; }
  int index_of(const Weight& w) const;
  std::size_t dim_of(const Weight& w) const;

  const OpBlock& e(int i, std::size_t k) const { return e_[static_cast<std::size_t>(i)][k]; }
  const OpBlock& f(int i, std::size_t k) const { return f_[static_cast<std::size_t>(i)][k]; }

  const std::optional<Weight>& highest_weight() const { return highest_; }
  const std::optional<int>& truncation_depth() const { return depth_; }
  /// For restricted modules: global index of each basis vector in the parent.
  const std::vector<std::size_t>& parent_index() const { return parent_index_; }
  std::string description() const { return description_; }

  /// Full matrix of E_i (or F_i) on the whole module.
  SMatrix e_full(int i) const;
  SMatrix f_full(int i) const;

  // Mutation interface used by the constructors below.
  std::size_t add_space(const Weight& w, std::size_t dim, std::vector<std::string> labels = {},
                        std::vector<std::vector<int>> words = {});
  void set_e(int i, std::size_t k, OpBlock b) { e_[static_cast<std::size_t>(i)][k] = std::move(b); }
  void set_f(int i, std::size_t k, OpBlock b) { f_[static_cast<std::size_t>(i)][k] = std::move(b); }
  void set_highest_weight(const Weight& w) { highest_ = w; }
  void set_truncation_depth(int d) { depth_ = d; }
  void set_parent_index(std::vector<std::size_t> p) { parent_index_ = std::move(p); }
  void set_description(std::string s) { description_ = std::move(s); }

 private:
  CartanDatum datum_;
  int q_power_;
  std::size_t dim_ = 0;
  std::vector<WeightSpace> spaces_;
  std::map<Weight, std::size_t> index_;
  std::vector<std::vector<OpBlock>> e_, f_;
  std::optional<Weight> highest_;
  std::optional<int> depth_;
  std::vector<std::size_t> parent_index_;
  std::string description_;
};

using ModulePtr = std::shared_ptr<const WeightModule>;

/// Truncated Verma module: all weights λ − β with height(β) ≤ depth.
WeightModule verma_truncated(const CartanDatum& dat, const Weight& lambda, int depth);

/// Gram matrix of the contravariant form on M[ν].
SMatrix contravariant_form(const WeightModule& m, const Weight& nu);

/// Finite-dimensional irreducible module with dominant highest weight λ.
WeightModule irreducible(const CartanDatum& dat, const Weight& lambda);

/// Tensor product with the coproduct Δ(E_i) = E_i⊗K_i + 1⊗E_i,
/// Δ(F_i) = F_i⊗1 + K_i^{-1}⊗F_i.
WeightModule tensor(const WeightModule& a, const WeightModule& b);

struct TensorBlock {
  std::size_t a_space, b_space, offset;  // offset inside the product weight space
};
/// Position of the (a_space, b_space) blocks in each weight space of tensor(a, b).
std::vector<std::vector<TensorBlock>> tensor_layout(const WeightModule& a, const WeightModule& b,
                                                    const WeightModule& ab);

WeightModule direct_sum(const WeightModule& a, const WeightModule& b);
/// Direct sum of irreducibles with the given highest weights (in order).
WeightModule module_from_highest_weights(const CartanDatum& dat, const std::vector<Weight>& hws);

/// The U_{q_i}(sl2)-module obtained by keeping only E_i, F_i.
WeightModule restrict_sl2(const WeightModule& m, int i);

struct RelationViolation {
  std::string kind;  // "commutator", "serre_e", "serre_f"
  Weight weight;
  int i = 0, j = 0;
};
std::vector<RelationViolation> check_relations(const WeightModule& m);

/// Composition of generator actions on a weight-space block. `word` is applied
/// right to left; letters are (is_e, index).
struct Letter {
  bool is_e;
  int i;
};
OpBlock apply_word(const WeightModule& m, const std::vector<Letter>& word, std::size_t space);

/// Dimension of V[0] (0 if 0 is not a weight).
std::size_t zero_weight_dim(const WeightModule& v);
/// Global basis offset of V[0]; throws if absent.
std::size_t zero_weight_offset(const WeightModule& v);

/// Weyl dimension formula, used as an independent check.
Rational weyl_dimension(const CartanDatum& dat, const Weight& lambda);

}  // namespace qchev
