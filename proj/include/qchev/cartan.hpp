#pragma once

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qchev/linalg.hpp"
#include "qchev/scalar.hpp"

namespace qchev {

/// Largest supported rank. Nothing below depends on this value except input
/// validation.
inline constexpr int kMaxRank = 4;

/// Integral weight in fundamental-weight coordinates (λ(h_1), ..., λ(h_r)).
struct Weight {
  std::vector<int> c;

  Weight() = default;
  explicit Weight(std::vector<int> coords) : c(std::move(coords)) {}
  Weight(std::initializer_list<int> coords) : c(coords) {}
  static Weight zero(int rank) { return Weight(std::vector<int>(static_cast<std::size_t>(rank), 0)); }

  int rank() const { return static_cast<int>(c.size()); }
  int operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  bool is_zero() const;
  bool is_dominant() const;

  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(int k, Weight a) {
    for (int& x : a.c) x *= k;
    return a;
  }
  Weight operator-() const { return -1 * *this; }
  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight& a, const Weight& b) { return a.c <=> b.c; }

  std::string to_string() const;
};

class CartanDatum {
 public:
  CartanDatum(char type, int rank);
  /// Parses "A2", "B3", "G2", ...
  static CartanDatum from_name(const std::string& name);

  char type() const { return type_; }
  int rank() const { return rank_; }
  std::string name() const { return std::string(1, type_) + std::to_string(rank_); }
  int a(int i, int j) const { return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const std::vector<std::vector<int>>& matrix() const { return a_; }
  int d(int i) const { return d_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& symmetrizers() const { return d_; }
  int pairing_denominator() const { return L_; }

  Weight simple_root(int i) const;
  Weight fundamental(int i) const;
  Weight rho() const { return Weight(std::vector<int>(static_cast<std::size_t>(rank_), 1)); }
  const std::vector<Weight>& positive_roots() const { return pos_roots_; }

  /// ⟨λ, μ⟩ with ⟨α_i, α_j⟩ = d_i a_ij.
  Rational pairing(const Weight& l, const Weight& m) const;
  /// Coordinates of λ in the simple-root basis.
  std::vector<Rational> root_coords(const Weight& l) const;
  bool in_root_lattice(const Weight& l) const;
  /// Sum of root coordinates; λ must lie in the root lattice.
  int height(const Weight& l) const;
  Weight reflect(int i, const Weight& l) const;

  friend bool operator==(const CartanDatum& a, const CartanDatum& b) {
    return a.type_ == b.type_ && a.rank_ == b.rank_;
  }

 private:
  char type_;
  int rank_;
  std::vector<std::vector<int>> a_;
  std::vector<int> d_;
  int L_ = 1;
  QMatrix gram_;      // ⟨ω_i, ω_j⟩
  QMatrix inv_cartan_; // root coordinates of fundamental weights
  std::vector<Weight> pos_roots_;
};

/// Weyl group element, canonicalized by the image of ρ. The reduced word
/// (i_1, ..., i_l) means w = s_{i_1} ... s_{i_l}; it is the lexicographically
/// smallest reduced word.
class WeylElement {
 public:
  static WeylElement identity(const CartanDatum& dat);
  static WeylElement from_word(const CartanDatum& dat, const std::vector<int>& word);
  static WeylElement simple(const CartanDatum& dat, int i) { return from_word(dat, {i}); }

  const std::vector<int>& reduced_word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  const Weight& rho_image() const { return rho_image_; }
  int sign() const { return length() % 2 == 0 ? 1 : -1; }

  Weight act(const CartanDatum& dat, const Weight& l) const;
  WeylElement inverse(const CartanDatum& dat) const;
  /// Product this * o.
  WeylElement compose(const CartanDatum& dat, const WeylElement& o) const;
  std::string to_string() const;

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.rho_image_ == b.rho_image_; }
  friend auto operator<=>(const WeylElement& a, const WeylElement& b) {
    if (auto c = a.word_.size() <=> b.word_.size(); c != 0) return c;
    return a.word_ <=> b.word_;
  }

 private:
  WeylElement(std::vector<int> w, Weight r) : word_(std::move(w)), rho_image_(std::move(r)) {}
  static WeylElement from_rho_image(const CartanDatum& dat, Weight image);
  std::vector<int> word_;
  Weight rho_image_;
};

/// All elements, sorted by (length, reduced word).
std::vector<WeylElement> weyl_group(const CartanDatum& dat);
WeylElement longest_element(const CartanDatum& dat);

/// w·λ = w(λ+ρ) − ρ.
Weight dot_action(const CartanDatum& dat, const WeylElement& w, const Weight& l);

struct DominantRep {
  Weight mu;
  WeylElement w;  // w mu = λ
};
DominantRep dominant_representative(const CartanDatum& dat, const Weight& l);

/// Number of positive roots sent to negative roots.
int inversion_count(const CartanDatum& dat, const WeylElement& w);

/// The W-orbit of a weight, sorted.
std::vector<Weight> weyl_orbit(const CartanDatum& dat, const Weight& l);

}  // namespace qchev
