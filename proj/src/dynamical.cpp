#include "qchev/dynamical.hpp"

#include <algorithm>

#include "qchev/errors.hpp"
#include "qchev/intertwiner.hpp"

namespace qchev {

ZeroWeightBlocks rank_one_blocks(const WeightModule& V, int i) {
  ZeroWeightBlocks out;
  out.i = i;
  out.qd = V.qd(i);
  const int zs = V.index_of(Weight::zero(V.datum().rank()));
  if (zs < 0) return out;
  const std::size_t z = V.space(static_cast<std::size_t>(zs)).dim;
  OpBlock fe = apply_word(V, {{false, i}, {true, i}}, static_cast<std::size_t>(zs));
  SMatrix T = fe.target < 0 ? SMatrix(z, z) : fe.m;
  int top = 0;
  for (const auto& s : V.spaces()) top = std::max(top, std::abs(s.weight[i]) / 2);
  std::vector<SVector> cols;
  std::vector<std::size_t> starts;
  for (int m = 0; m <= top; ++m) {
    const Scalar ev = quantum_integer(m, out.qd) * quantum_integer(m + 1, out.qd);
    auto ker = kernel_basis(T - ev * SMatrix::identity(z));
    if (ker.empty()) continue;
    out.ms.push_back(m);
    out.dims.push_back(ker.size());
    starts.push_back(cols.size());
    for (auto& v : ker) cols.push_back(std::move(v));
  }
  if (cols.size() != z) throw TheoremViolation("F_iE_i is not diagonalizable on V[0] with the expected spectrum");
  const SMatrix B = from_columns(cols, z);
  const SMatrix Binv = inverse(B);
  for (std::size_t b = 0; b < out.ms.size(); ++b) {
    SMatrix Bb(z, out.dims[b]), Ib(out.dims[b], z);
    for (std::size_t k = 0; k < out.dims[b]; ++k)
      for (std::size_t r = 0; r < z; ++r) {
        Bb(r, k) = B(r, starts[b] + k);
        Ib(k, r) = Binv(starts[b] + k, r);
      }
    out.projectors.push_back(Bb * Ib);
  }
  return out;
}

Scalar a_operator_rank1_formula(long m, long lambda, long d) {
  if (m < 0) throw DomainError("negative string parameter");
  Scalar r(1);
  for (long j = 1; j <= m; ++j) {
    if (lambda + 1 - j == 0)
      throw PoleError("A-operator pole: [" + std::to_string(lambda + 1 - j) + "] in the denominator (m=" +
                      std::to_string(m) + ", lambda=" + std::to_string(lambda) + ")");
    r *= quantum_integer(lambda + 1 + j, d) / quantum_integer(lambda + 1 - j, d);
  }
  return m % 2 ? -r : r;
}

SMatrix a_operator_simple(const WeightModule& V, int i, long n) {
  const ZeroWeightBlocks b = rank_one_blocks(V, i);
  const std::size_t z = zero_weight_dim(V);
  SMatrix out(z, z);
  for (std::size_t k = 0; k < b.ms.size(); ++k) out = out + a_operator_rank1_formula(b.ms[k], n, b.qd) * b.projectors[k];
  return out;
}

SMatrix a_operator_V0(const WeylElement& w, const WeightModule& V, const Weight& lambda) {
  const CartanDatum& dat = V.datum();
  const auto& word = w.reduced_word();
  SMatrix result = SMatrix::identity(zero_weight_dim(V));
  Weight arg = lambda;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    result = a_operator_simple(V, *it, arg[*it]) * result;
    arg = dat.reflect(*it, arg + dat.rho()) - dat.rho();
  }
  return result;
}

SMatrix unshifted_operator(const WeylElement& w, const WeightModule& V, const Weight& lambda) {
  return a_operator_V0(w, V, -lambda - V.datum().rho());
}

// ---------------------------------------------------------------- symbolic

SymbolicOperator SymbolicOperator::identity(std::size_t n, int rank) {
  SymbolicOperator s;
  s.n = n;
  s.num.assign(n * n, CharPoly());
  for (std::size_t k = 0; k < n; ++k) s.num[k * n + k] = CharPoly::constant(Scalar(1), rank);
  s.den = CharPoly::constant(Scalar(1), rank);
  return s;
}

SymbolicOperator SymbolicOperator::operator*(const SymbolicOperator& o) const {
  if (n != o.n) throw DomainError("symbolic operator size mismatch");
  SymbolicOperator s;
  s.n = n;
  s.num.assign(n * n, CharPoly());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      if (at(r, k).is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (!o.at(k, c).is_zero()) s.num[r * n + c] = s.num[r * n + c] + at(r, k) * o.at(k, c);
    }
  s.den = den * o.den;
  return s;
}

SymbolicOperator SymbolicOperator::substitute(const CartanDatum& dat, const WeylElement& u) const {
  // g(uλ) has e^ν replaced by e^{u^{-1}ν}.
  const WeylElement inv = u.inverse(dat);
  SymbolicOperator s;
  s.n = n;
  for (const CharPoly& p : num) s.num.push_back(p.pushforward(dat, inv));
  s.den = den.pushforward(dat, inv);
  return s;
}

bool SymbolicOperator::equals(const SymbolicOperator& o) const {
  if (n != o.n) return false;
  for (std::size_t k = 0; k < n * n; ++k)
    if (!(num[k] * o.den == o.num[k] * den)) return false;
  return true;
}

bool SymbolicOperator::is_identity() const {
  if (num.empty()) return true;
  const int rank = den.terms().begin()->first.rank();
  return equals(identity(n, rank));
}

SMatrix SymbolicOperator::evaluate(const CartanDatum& dat, const Weight& lambda, int q_power) const {
  const Scalar d = den.evaluate(dat, lambda, q_power);
  if (d.is_zero()) throw PoleError("symbolic operator has a pole at " + lambda.to_string());
  SMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = at(r, c).evaluate(dat, lambda, q_power) / d;
  return m;
}

SymbolicOperator unshifted_symbolic_simple(const WeightModule& V, int i) {
  const CartanDatum& dat = V.datum();
  const int r = dat.rank();
  const ZeroWeightBlocks b = rank_one_blocks(V, i);
  const std::size_t z = zero_weight_dim(V);
  const Weight alpha = dat.simple_root(i);
  auto qi = [&](long j) { return Scalar::q_power(Rational(j * b.qd)); };
  // N_m = ∏ (q_i^j − q_i^{−j} e^{α}),  D_m = ∏ (q_i^j e^{α} − q_i^{−j}).
  auto n_factor = [&](long j) { return CharPoly::constant(qi(j), r) + CharPoly::monomial(alpha, -qi(-j)); };
  auto d_factor = [&](long j) { return CharPoly::monomial(alpha, qi(j)) + CharPoly::constant(-qi(-j), r); };
  const int top = b.ms.empty() ? 0 : *std::max_element(b.ms.begin(), b.ms.end());
  SymbolicOperator s;
  s.n = z;
  s.num.assign(z * z, CharPoly());
  s.den = CharPoly::constant(Scalar(1), r);
  for (int j = 1; j <= top; ++j) s.den = s.den * d_factor(j);
  for (std::size_t k = 0; k < b.ms.size(); ++k) {
    CharPoly coef = CharPoly::constant(Scalar(1), r);
    for (int j = 1; j <= b.ms[k]; ++j) coef = coef * n_factor(j);
    for (int j = b.ms[k] + 1; j <= top; ++j) coef = coef * d_factor(j);
    for (std::size_t x = 0; x < z; ++x)
      for (std::size_t y = 0; y < z; ++y)
        if (!b.projectors[k](x, y).is_zero()) s.num[x * z + y] = s.num[x * z + y] + b.projectors[k](x, y) * coef;
  }
  return s;
}

SymbolicOperator unshifted_symbolic(const WeylElement& w, const WeightModule& V) {
  const CartanDatum& dat = V.datum();
  SymbolicOperator result = SymbolicOperator::identity(zero_weight_dim(V), dat.rank());
  WeylElement u = WeylElement::identity(dat);
  const auto& word = w.reduced_word();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    result = unshifted_symbolic_simple(V, *it).substitute(dat, u) * result;
    u = WeylElement::simple(dat, *it).compose(dat, u);
  }
  return result;
}

// ------------------------------------------------------- extremal vectors

std::vector<int> extremal_exponents(const CartanDatum& dat, const std::vector<int>& word, const Weight& lambda) {
  const std::size_t l = word.size();
  std::vector<int> n(l);
  const Weight shifted = lambda + dat.rho();
  for (std::size_t j = 0; j < l; ++j) {
    // α^j = s_{i_l} ... s_{i_{j+1}} α_{i_j}.
    Weight a = dat.simple_root(word[j]);
    for (std::size_t k = j + 1; k < l; ++k) a = dat.reflect(word[k], a);
    Rational v = 2 * dat.pairing(shifted, a) / dat.pairing(a, a);
    if (v.get_den() != 1) throw DomainError("non-integral extremal exponent");
    n[j] = static_cast<int>(v.get_num().get_si());
  }
  return n;
}

ExtremalVector extremal_singular_vector(const WeightModule& M, const WeylElement& w, const Weight& lambda) {
  return extremal_singular_vector(M, w.reduced_word(), lambda);
}

ExtremalVector extremal_singular_vector(const WeightModule& M, const std::vector<int>& word, const Weight& lambda) {
  const CartanDatum& dat = M.datum();
  const WeylElement w = WeylElement::from_word(dat, word);
  if (w.length() != static_cast<int>(word.size())) throw DomainError("extremal_singular_vector needs a reduced word");
  if (!M.highest_weight() || !(*M.highest_weight() == lambda) || !M.truncation_depth())
    throw DomainError("extremal_singular_vector needs the truncated Verma module of " + lambda.to_string());
  ExtremalVector ev;
  ev.exponents = extremal_exponents(dat, word, lambda);
  int total = 0;
  for (int x : ev.exponents) {
    if (x < 0) throw DomainError("negative extremal exponent; is lambda dominant?");
    total += x;
  }
  if (total > *M.truncation_depth())
    throw DepthError("extremal vector needs depth " + std::to_string(total) + ", module has " +
                     std::to_string(*M.truncation_depth()));
  int space = 0;
  SVector v{Scalar(1)};
  Scalar norm(1);
  for (std::size_t j = word.size(); j-- > 0;) {
    for (int k = 0; k < ev.exponents[j]; ++k) {
      const OpBlock& f = M.f(word[j], static_cast<std::size_t>(space));
      if (f.target < 0) throw DepthError("extremal vector leaves the truncated module");
      v = f.m.apply(v);
      space = f.target;
    }
    norm *= quantum_factorial(ev.exponents[j], dat.d(word[j]));
  }
  const Scalar inv = norm.inverse();
  for (Scalar& x : v) x *= inv;
  ev.space = space;
  ev.weight = M.space(static_cast<std::size_t>(space)).weight;
  ev.v = std::move(v);
  if (!(ev.weight == dot_action(dat, w, lambda))) throw TheoremViolation("extremal vector has the wrong weight");
  for (int i = 0; i < dat.rank(); ++i) {
    const OpBlock& e = M.e(i, static_cast<std::size_t>(space));
    if (e.target >= 0 && !is_zero_vector(e.m.apply(ev.v)))
      throw TheoremViolation("extremal vector is not singular (E_" + std::to_string(i + 1) + ")");
  }
  return ev;
}

// --------------------------------------------------- direct rank-one value

Scalar a_operator_rank1_direct(int m, int lambda, int depth) {
  if (m < 0) throw DomainError("negative string parameter");
  if (lambda < 0) throw DomainError("a_operator_rank1_direct needs dominant lambda");
  if (depth < lambda + 1 || depth < m) throw DepthError("depth must be at least max(lambda+1, m)");
  const CartanDatum a1('A', 1);
  const WeightModule V = irreducible(a1, Weight{2 * m});
  const WeightModule M = verma_truncated(a1, Weight{lambda}, depth);
  const WeightModule MV = tensor(M, V);
  const auto layout = tensor_layout(M, V, MV);
  const int vz = V.index_of(Weight{0});
  auto block_offset = [&](int ms, int vs, int prod_space) -> long {
    for (const TensorBlock& b : layout[static_cast<std::size_t>(prod_space)])
      if (b.a_space == static_cast<std::size_t>(ms) && b.b_space == static_cast<std::size_t>(vs))
        return static_cast<long>(b.offset);
    return -1;
  };

  auto sing = singular_vectors(MV, Weight{lambda});
  if (sing.size() != 1)
    throw GenericityError("expected a unique Verma intertwiner, found " + std::to_string(sing.size()));
  const int top = MV.index_of(Weight{lambda});
  const long eoff = block_offset(0, vz, top);
  const Scalar expect = sing[0][static_cast<std::size_t>(eoff)];
  if (expect.is_zero()) throw GenericityError("Verma intertwiner has zero expectation value");
  SVector phi = sing[0];
  const Scalar inv = expect.inverse();
  for (Scalar& x : phi) x *= inv;

  const ExtremalVector ex = extremal_singular_vector(M, WeylElement::simple(a1, 0), Weight{lambda});
  // Φ(m_{s·λ}) = (extremal coefficient) Δ(F)^{λ+1} Φ(m_λ).
  int space = top;
  for (int k = 0; k < lambda + 1; ++k) {
    const OpBlock& f = MV.f(0, static_cast<std::size_t>(space));
    if (f.target < 0) throw DepthError("truncated Verma module too shallow");
    phi = f.m.apply(phi);
    space = f.target;
  }
  for (Scalar& x : phi) x *= ex.v[0];
  // Components with first factor above s·λ must vanish.
  for (int k = 1; k <= m; ++k) {
    const int ms = M.index_of(ex.weight + Weight{2 * k});
    const int vs = V.index_of(Weight{-2 * k});
    const long off = block_offset(ms, vs, space);
    if (off >= 0 && !phi[static_cast<std::size_t>(off)].is_zero())
      throw GenericityError("Verma intertwiner has terms above the extremal weight");
  }
  const long off = block_offset(ex.space, vz, space);
  return phi[static_cast<std::size_t>(off)] / ex.v[0];
}

}  // namespace qchev
