#include "qchev/intertwiner.hpp"

#include <functional>
#include <map>

#include "qchev/errors.hpp"

namespace qchev {

long TensorContext::diagonal_offset(std::size_t l_space) const {
  const int v0 = V->index_of(Weight::zero(V->datum().rank()));
  if (v0 < 0) return -1;
  const int k = LV->index_of(L->space(l_space).weight);
  if (k < 0) return -1;
  for (const TensorBlock& b : layout[static_cast<std::size_t>(k)])
    if (b.a_space == l_space && b.b_space == static_cast<std::size_t>(v0)) return static_cast<long>(b.offset);
  return -1;
}

ContextPtr make_context(const Weight& mu, ModulePtr V) {
  auto ctx = std::make_shared<TensorContext>();
  ctx->mu = mu;
  ctx->V = std::move(V);
  ctx->L = std::make_shared<const WeightModule>(irreducible(ctx->V->datum(), mu));
  ctx->LV = std::make_shared<const WeightModule>(tensor(*ctx->L, *ctx->V));
  ctx->layout = tensor_layout(*ctx->L, *ctx->V, *ctx->LV);
  ctx->mu_space = ctx->LV->index_of(mu);
  ctx->v0_dim = zero_weight_dim(*ctx->V);
  if (ctx->v0_dim > 0) {
    const long off = ctx->diagonal_offset(0);
    if (off < 0) throw TheoremViolation("missing l_mu (x) V[0] block");
    ctx->expect_offset = static_cast<std::size_t>(off);
  }
  return ctx;
}

std::vector<SVector> singular_vectors(const WeightModule& m, const Weight& nu) {
  const int k = m.index_of(nu);
  if (k < 0) return {};
  const std::size_t dim = m.space(static_cast<std::size_t>(k)).dim;
  std::vector<SMatrix> blocks;
  for (int i = 0; i < m.datum().rank(); ++i) {
    const OpBlock& e = m.e(i, static_cast<std::size_t>(k));
    if (e.target >= 0) blocks.push_back(e.m);
  }
  return kernel_basis(SMatrix::vstack(blocks, dim));
}

namespace {

// E_i^n restricted to V[0] as a matrix (rows in the target weight space).
std::vector<SMatrix> e_power_blocks(const Weight& mu, const WeightModule& V) {
  std::vector<SMatrix> blocks;
  const int z = V.index_of(Weight::zero(V.datum().rank()));
  if (z < 0) return blocks;
  for (int i = 0; i < V.datum().rank(); ++i) {
    std::vector<Letter> word(static_cast<std::size_t>(mu[i] + 1), Letter{true, i});
    OpBlock b = apply_word(V, word, static_cast<std::size_t>(z));
    if (b.target >= 0) blocks.push_back(std::move(b.m));
  }
  return blocks;
}

}  // namespace

std::size_t e_power_kernel_dim(const Weight& mu, const WeightModule& V) {
  const std::size_t z = zero_weight_dim(V);
  if (z == 0) return 0;
  auto blocks = e_power_blocks(mu, V);
  return z - rank(SMatrix::vstack(blocks, z));
}

std::vector<SVector> admissible_expectations(const Weight& mu, const WeightModule& V) {
  const std::size_t z = zero_weight_dim(V);
  if (z == 0) return {};
  return kernel_basis(SMatrix::vstack(e_power_blocks(mu, V), z));
}

bool satisfies_e_power(const Weight& mu, const WeightModule& V, const SVector& v) {
  for (const SMatrix& b : e_power_blocks(mu, V))
    if (!is_zero_vector(b.apply(v))) return false;
  return true;
}

std::size_t hom_dimension(const Weight& mu, const ModulePtr& V) {
  if (!mu.is_dominant()) throw DomainError("hom_dimension: weight " + mu.to_string() + " is not dominant");
  ContextPtr ctx = make_context(mu, V);
  const std::size_t n = singular_vectors(*ctx->LV, mu).size();
  const std::size_t expected = e_power_kernel_dim(mu, *V);
  if (n != expected)
    throw TheoremViolation("hom dimension " + std::to_string(n) + " differs from the E-power kernel dimension " +
                           std::to_string(expected) + " at mu=" + mu.to_string());
  return n;
}

std::vector<Intertwiner> intertwiner_basis(const ContextPtr& ctx) {
  std::vector<Intertwiner> out;
  for (SVector& s : singular_vectors(*ctx->LV, ctx->mu)) out.push_back({ctx, std::move(s)});
  return out;
}

SVector expectation_value(const Intertwiner& phi) {
  const TensorContext& c = *phi.ctx;
  SVector v(c.v0_dim);
  if (c.v0_dim == 0 || phi.image.empty()) return v;
  for (std::size_t y = 0; y < c.v0_dim; ++y) v[y] = phi.image[c.expect_offset + y];
  return v;
}

SMatrix expectation_matrix(const std::vector<Intertwiner>& basis, std::size_t v0_dim) {
  std::vector<SVector> cols;
  for (const auto& b : basis) cols.push_back(expectation_value(b));
  return from_columns(cols, v0_dim);
}

Intertwiner intertwiner_from_expectation(const ContextPtr& ctx, const SVector& v) {
  if (v.size() != ctx->v0_dim) throw DomainError("expectation vector has the wrong length");
  const std::size_t dim_mu = ctx->mu_space < 0 ? 0 : ctx->LV->space(static_cast<std::size_t>(ctx->mu_space)).dim;
  if (is_zero_vector(v)) return {ctx, SVector(dim_mu)};
  if (!satisfies_e_power(ctx->mu, *ctx->V, v))
    throw NoIntertwiner("expectation value violates E_i^{mu(h_i)+1} v = 0 at mu=" + ctx->mu.to_string());
  auto basis = intertwiner_basis(ctx);
  SMatrix X = expectation_matrix(basis, ctx->v0_dim);
  auto c = solve(X, v);
  if (!c) throw NoIntertwiner("no intertwiner with the requested expectation value");
  SVector image(dim_mu);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!(*c)[k].is_zero())
      for (std::size_t j = 0; j < dim_mu; ++j) image[j] += (*c)[k] * basis[k].image[j];
  return {ctx, std::move(image)};
}

Intertwiner intertwiner_from_expectation(const Weight& mu, const ModulePtr& V, const SVector& v) {
  return intertwiner_from_expectation(make_context(mu, V), v);
}

std::vector<std::pair<int, SVector>> intertwiner_images(const Intertwiner& phi) {
  const TensorContext& c = *phi.ctx;
  const WeightModule& L = *c.L;
  const WeightModule& LV = *c.LV;
  std::map<std::vector<int>, std::pair<int, SVector>> memo;
  memo[{}] = {c.mu_space, phi.image};
  std::function<const std::pair<int, SVector>&(const std::vector<int>&)> rec =
      [&](const std::vector<int>& w) -> const std::pair<int, SVector>& {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    const std::vector<int> tail(w.begin() + 1, w.end());
    const auto& [s, v] = rec(tail);
    std::pair<int, SVector> out{-1, {}};
    if (s >= 0) {
      const OpBlock& f = LV.f(w.front(), static_cast<std::size_t>(s));
      if (f.target >= 0) out = {f.target, f.m.apply(v)};
    }
    return memo.emplace(w, std::move(out)).first->second;
  };
  std::vector<std::pair<int, SVector>> out;
  out.reserve(L.dim());
  for (const auto& sp : L.spaces())
    for (const auto& w : sp.words) out.push_back(rec(w));
  return out;
}

bool check_intertwiner(const Intertwiner& phi) {
  const TensorContext& c = *phi.ctx;
  const WeightModule& L = *c.L;
  const WeightModule& LV = *c.LV;
  const auto images = intertwiner_images(phi);
  auto image_in = [&](std::size_t global, int expected_space) {
    const auto& [s, v] = images[global];
    if (s < 0) return SVector(expected_space < 0 ? 0 : LV.space(static_cast<std::size_t>(expected_space)).dim);
    return v;
  };
  for (std::size_t k = 0; k < L.spaces().size(); ++k) {
    const WeightSpace& sp = L.space(k);
    const int here = LV.index_of(sp.weight);
    for (int i = 0; i < L.datum().rank(); ++i)
      for (bool is_e : {true, false}) {
        const Weight tw = sp.weight + (is_e ? L.datum().simple_root(i) : -L.datum().simple_root(i));
        const int there = LV.index_of(tw);
        const OpBlock& lop = is_e ? L.e(i, k) : L.f(i, k);
        static const OpBlock kNone{};
        const OpBlock& top = here < 0 ? kNone
                             : is_e   ? LV.e(i, static_cast<std::size_t>(here))
                                      : LV.f(i, static_cast<std::size_t>(here));
        const std::size_t tdim = there < 0 ? 0 : LV.space(static_cast<std::size_t>(there)).dim;
        for (std::size_t x = 0; x < sp.dim; ++x) {
          // Left side: Φ(X l).
          SVector lhs(tdim);
          if (lop.target >= 0) {
            const WeightSpace& ts = L.space(static_cast<std::size_t>(lop.target));
            for (std::size_t y = 0; y < ts.dim; ++y) {
              if (lop.m(y, x).is_zero()) continue;
              SVector im = image_in(ts.offset + y, there);
              for (std::size_t z = 0; z < tdim; ++z) lhs[z] += lop.m(y, x) * im[z];
            }
          }
          // Right side: Δ(X) Φ(l).
          SVector rhs(tdim);
          if (top.target >= 0) rhs = top.m.apply(image_in(sp.offset + x, here));
          if (!(lhs == rhs)) return false;
        }
      }
  }
  return true;
}

SVector zero_weight_part(const WeightModule& V, const SVector& full) {
  if (full.size() != V.dim()) throw DomainError("vector length does not match the module dimension");
  const int z = V.index_of(Weight::zero(V.datum().rank()));
  SVector out(z < 0 ? 0 : V.space(static_cast<std::size_t>(z)).dim);
  for (std::size_t k = 0; k < V.spaces().size(); ++k) {
    const WeightSpace& s = V.space(k);
    for (std::size_t x = 0; x < s.dim; ++x) {
      const Scalar& c = full[s.offset + x];
      if (static_cast<int>(k) == z) out[x] = c;
      else if (!c.is_zero()) throw DomainError("vector has components outside V[0]");
    }
  }
  return out;
}

}  // namespace qchev
