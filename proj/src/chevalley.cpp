#include "qchev/chevalley.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "qchev/hull.hpp"

namespace qchev {

namespace {

bool has_component_outside_zero(const WeightModule& V, const SVector& v) {
  const std::size_t off = zero_weight_offset(V), z = zero_weight_dim(V);
  for (std::size_t k = 0; k < v.size(); ++k)
    if ((k < off || k >= off + z) && !v[k].is_zero()) return true;
  return false;
}

SVector project_zero(const WeightModule& V, const SVector& v) {
  const std::size_t off = zero_weight_offset(V), z = zero_weight_dim(V);
  return SVector(v.begin() + static_cast<long>(off), v.begin() + static_cast<long>(off + z));
}

void accumulate(std::map<Weight, SVector>& acc, const Weight& w, std::size_t x, const Scalar& c, std::size_t z) {
  auto it = acc.try_emplace(w, SVector(z)).first;
  it->second[x] += c;
}

const TensorBlock* find_block(const std::vector<TensorBlock>& blocks, int a_space, int b_space) {
  for (const TensorBlock& b : blocks)
    if (b.a_space == static_cast<std::size_t>(a_space) && b.b_space == static_cast<std::size_t>(b_space)) return &b;
  return nullptr;
}

int half_string_top(const WeightModule& V, int i) {
  int top = 0;
  for (const auto& s : V.spaces()) top = std::max(top, std::abs(s.weight[i]) / 2);
  return top;
}

// Smallest n with E_i^n = 0 on V.
int nilpotency(const WeightModule& V, int i) {
  const SMatrix e = V.e_full(i);
  SMatrix p = e;
  int n = 1;
  while (!p.is_zero()) {
    p = e * p;
    ++n;
  }
  return n;
}

}  // namespace

// ------------------------------------------------------------------- traces

TorusFunction res_trace(const Intertwiner& phi) {
  const TensorContext& c = *phi.ctx;
  TorusFunction out(c.V);
  if (c.v0_dim == 0 || is_zero_vector(phi.image)) return out;
  const auto images = intertwiner_images(phi);
  for (std::size_t ls = 0; ls < c.L->spaces().size(); ++ls) {
    const WeightSpace& sp = c.L->space(ls);
    const long off = c.diagonal_offset(ls);
    if (off < 0) continue;
    SVector u(c.v0_dim);
    for (std::size_t a = 0; a < sp.dim; ++a) {
      const auto& [space, vec] = images[sp.offset + a];
      if (space < 0) continue;
      for (std::size_t y = 0; y < c.v0_dim; ++y) u[y] += vec[static_cast<std::size_t>(off) + a * c.v0_dim + y];
    }
    out.add_zero_weight_term(sp.weight, u);
  }
  return out;
}

std::shared_ptr<const TraceFactory::Entry> TraceFactory::entry(const Weight& mu) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(mu);
    if (it != entries_.end()) return it->second;
  }
  auto e = std::make_shared<Entry>();
  e->ctx = make_context(mu, V_);
  e->basis = admissible_expectations(mu, *V_);
  for (const SVector& b : e->basis) {
    std::size_t p = 0;
    while (b[p].is_zero()) ++p;
    e->pivots.push_back(p);
    e->traces.push_back(res_trace(intertwiner_from_expectation(e->ctx, b)));
  }
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.emplace(mu, std::move(e)).first->second;
}

TorusFunction TraceFactory::trace(const Weight& mu, const SVector& v) {
  if (!mu.is_dominant()) throw DomainError("trace: weight " + mu.to_string() + " is not dominant");
  if (v.size() != zero_weight_dim(*V_)) throw DomainError("expectation value has the wrong length");
  auto e = entry(mu);
  TorusFunction out(V_);
  SVector check(v.size());
  for (std::size_t k = 0; k < e->basis.size(); ++k) {
    const Scalar c = v[e->pivots[k]];
    if (c.is_zero()) continue;
    out = out + c * e->traces[k];
    for (std::size_t x = 0; x < v.size(); ++x) check[x] += c * e->basis[k][x];
  }
  if (check != v) throw NoIntertwiner("no intertwiner at " + mu.to_string() + " with this expectation value");
  return out;
}

std::vector<GeneratedTrace> generate_traces(TraceFactory& tf, const Weight& mu) {
  auto e = tf.entry(mu);
  std::vector<GeneratedTrace> out;
  for (std::size_t k = 0; k < e->basis.size(); ++k) out.push_back({mu, e->basis[k], e->traces[k]});
  return out;
}

// --------------------------------------------------------------- conditions

bool ConditionReport::cond2_pass() const {
  return std::all_of(cond2.begin(), cond2.end(), [](const Cond2Result& r) { return r.pass; });
}

bool ConditionReport::cond3_pass() const {
  return std::all_of(cond3.begin(), cond3.end(), [](const Cond3Result& r) { return r.pass; });
}

std::string ConditionReport::first_failure() const {
  if (!cond1.pass) return "condition 1 (values in V[0]) at " + cond1.offending.front().to_string();
  for (const auto& r : cond2)
    if (!r.pass)
      return "condition 2 (dynamical Weyl invariance) for s" + std::to_string(r.i + 1) + " at " +
             r.witness->to_string();
  for (const auto& r : cond3)
    if (!r.pass)
      return "condition 3 (divisibility) for i=" + std::to_string(r.i + 1) + ", n=" + std::to_string(r.n);
  return "";
}

ConditionReport check_conditions(const TorusFunction& f) {
  const WeightModule& V = f.module();
  const CartanDatum& dat = V.datum();
  const std::size_t z = zero_weight_dim(V);
  ConditionReport rep;

  std::map<Weight, SVector> F;
  for (const auto& [nu, v] : f.terms()) {
    if (has_component_outside_zero(V, v)) {
      rep.cond1.pass = false;
      rep.cond1.offending.push_back(nu);
    }
    SVector p = project_zero(V, v);
    if (!is_zero_vector(p)) F.emplace(nu, std::move(p));
  }

  for (int i = 0; i < dat.rank(); ++i) {
    Cond2Result r;
    r.i = i;
    if (z > 0) {
      const SymbolicOperator S = unshifted_symbolic_simple(V, i);
      const WeylElement s = WeylElement::simple(dat, i);
      std::map<Weight, SVector> R;
      for (const auto& [nu, u] : F) {
        const Weight snu = s.act(dat, nu);
        for (const auto& [mu, c] : S.den.terms())
          for (std::size_t x = 0; x < z; ++x)
            if (!u[x].is_zero()) accumulate(R, mu + snu, x, c * u[x], z);
        for (std::size_t x = 0; x < z; ++x)
          for (std::size_t y = 0; y < z; ++y) {
            if (u[y].is_zero()) continue;
            for (const auto& [mu, c] : S.at(x, y).terms()) accumulate(R, mu + nu, x, -(c * u[y]), z);
          }
      }
      for (const auto& [w, v] : R)
        if (!is_zero_vector(v)) {
          r.pass = false;
          r.witness = w;
          r.residual = v;
          break;
        }
    }
    rep.cond2.push_back(std::move(r));
  }

  for (int i = 0; i < dat.rank(); ++i) {
    const int nil = nilpotency(V, i);
    for (int n = 1; n < nil; ++n) {
      Cond3Result r;
      r.i = i;
      r.n = n;
      DivisionResult d = divide_by_qstring(e_action(f, i, n), i, n);
      if (auto* nd = std::get_if<NotDivisible>(&d)) {
        r.pass = false;
        r.witness = *nd;
      }
      rep.cond3.push_back(std::move(r));
    }
  }
  return rep;
}

// ------------------------------------------------------------ decomposition

TorusFunction reconstruct(const Decomposition& d, TraceFactory& tf) {
  TorusFunction sum(tf.module());
  for (const auto& t : d.terms) sum = sum + tf.trace(t.mu, t.v);
  return sum;
}

Decomposition decompose(const TorusFunction& f, TraceFactory& tf) {
  ConditionReport rep = check_conditions(f);
  if (!rep.all_pass()) throw ConditionFailure(std::move(rep));
  const CartanDatum& dat = f.module().datum();
  const std::size_t off = zero_weight_offset(f.module()), z = zero_weight_dim(f.module());

  Decomposition out;
  TorusFunction cur = f;
  std::vector<Weight> wd = weight_diagram(cur);
  while (!cur.is_zero()) {
    std::optional<Weight> pick;
    for (const Weight& x : ConvexHull(cur.support()).vertices()) {
      const Weight mu = dominant_representative(dat, x).mu;
      if (!pick || *pick < mu) pick = mu;
    }
    const Weight mu = *pick;
    auto it = cur.terms().find(mu);
    if (it == cur.terms().end())
      throw TheoremViolation("extremal dominant weight " + mu.to_string() + " is not in the support");
    SVector v(it->second.begin() + static_cast<long>(off), it->second.begin() + static_cast<long>(off + z));
    if (!satisfies_e_power(mu, f.module(), v))
      throw TheoremViolation("leading coefficient at " + mu.to_string() + " violates the E-power condition");
    for (const auto& t : out.terms)
      if (t.mu == mu) throw TheoremViolation("dominant weight " + mu.to_string() + " selected twice");
    cur = cur - tf.trace(mu, v);
    std::vector<Weight> next = weight_diagram(cur);
    if (next.size() >= wd.size() || !std::includes(wd.begin(), wd.end(), next.begin(), next.end()))
      throw TheoremViolation("weight diagram did not shrink after removing " + mu.to_string());
    wd = std::move(next);
    out.terms.push_back({mu, std::move(v)});
  }
  if (!(reconstruct(out, tf) == f)) throw TheoremViolation("decomposition does not reconstruct its input");
  return out;
}

Decomposition decompose(const TorusFunction& f) {
  TraceFactory tf(f.module_ptr());
  return decompose(f, tf);
}

std::vector<StringPiece> string_restriction(const TorusFunction& f, int i) {
  const WeightModule& V = f.module();
  const CartanDatum& dat = V.datum();
  auto R = std::make_shared<const WeightModule>(restrict_sl2(V, i));
  const auto& parent = R->parent_index();
  std::map<Weight, TorusFunction> pieces;
  for (const auto& [nu, v] : f.terms()) {
    const Weight rep = alpha_coset(dat, nu, i).first;
    SVector w(R->dim());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = v[parent[k]];
    pieces.try_emplace(rep, R).first->second.add_term(Weight{nu[i]}, w);
  }
  std::vector<StringPiece> out;
  for (auto& [rep, g] : pieces) out.push_back({rep, std::move(g)});
  return out;
}

// --------------------------------------------------------- Verma traces

std::vector<SVector> verma_trace_series(const ModulePtr& V, int nu, const SVector& u, int depth) {
  const CartanDatum& a1 = V->datum();
  if (a1.rank() != 1) throw DomainError("verma_trace_series is rank one only");
  if (depth < 0) throw DepthError("negative depth");
  const std::size_t z = zero_weight_dim(*V);
  std::vector<SVector> series(static_cast<std::size_t>(depth) + 1, SVector(z));
  if (z == 0 || is_zero_vector(u)) return series;
  const int m = half_string_top(*V, 0);
  const WeightModule M = verma_truncated(a1, Weight{nu}, std::max(depth, m));
  const WeightModule MV = tensor(M, *V);
  const auto layout = tensor_layout(M, *V, MV);
  const int vz = V->index_of(Weight{0});

  const auto sing = singular_vectors(MV, Weight{nu});
  int space = MV.index_of(Weight{nu});
  const TensorBlock* top = find_block(layout[static_cast<std::size_t>(space)], 0, vz);
  SMatrix E(z, sing.size());
  for (std::size_t k = 0; k < sing.size(); ++k)
    for (std::size_t y = 0; y < z; ++y) E(y, k) = sing[k][top->offset + y];
  if (sing.size() != z || rank(E) != z)
    throw GenericityError("Verma intertwiner at " + std::to_string(nu) + " is not determined by its expectation value");
  const SVector c = *solve(E, u);
  SVector phi(MV.dim_of(Weight{nu}));
  for (std::size_t k = 0; k < sing.size(); ++k)
    for (std::size_t x = 0; x < phi.size(); ++x) phi[x] += c[k] * sing[k][x];

  for (int k = 0; k <= depth; ++k) {
    if (k > 0) {
      const OpBlock& f = MV.f(0, static_cast<std::size_t>(space));
      if (f.target < 0) throw DepthError("truncated Verma module too shallow");
      phi = f.m.apply(phi);
      space = f.target;
    }
    const TensorBlock* b = find_block(layout[static_cast<std::size_t>(space)], M.index_of(Weight{nu - 2 * k}), vz);
    for (std::size_t y = 0; y < z; ++y) series[static_cast<std::size_t>(k)][y] = phi[b->offset + y];
  }
  return series;
}

VermaIdentityResult verma_identity_residual(TraceFactory& tf, int mu, const SVector& v, int depth) {
  const ModulePtr& V = tf.module();
  const CartanDatum& a1 = V->datum();
  if (a1.rank() != 1) throw DomainError("verma_identity_residual is rank one only");
  const std::size_t z = zero_weight_dim(*V);
  VermaIdentityResult r;
  r.lhs.assign(static_cast<std::size_t>(depth) + 1, SVector(z));
  const TorusFunction psi = tf.trace(Weight{mu}, v);
  for (const auto& [w, u] : psi.zero_weight_terms()) {
    const int k = (mu - w[0]) / 2;
    if (k <= depth) r.lhs[static_cast<std::size_t>(k)] = u;
  }
  try {
    r.rhs = verma_trace_series(V, mu, v, depth);
    if (depth >= mu + 1) {
      const SVector u = a_operator_V0(WeylElement::simple(a1, 0), *V, Weight{mu}).apply(v);
      const auto low = verma_trace_series(V, -mu - 2, u, depth - mu - 1);
      for (std::size_t k = 0; k < low.size(); ++k)
        for (std::size_t y = 0; y < z; ++y) r.rhs[static_cast<std::size_t>(mu + 1) + k][y] -= low[k][y];
    }
  } catch (const GenericityError& e) {
    r.skipped = true;
    r.reason = e.what();
  }
  return r;
}

// --------------------------------------------------- linear constraints

std::vector<Weight> w_stable_box(const CartanDatum& dat, int k) {
  std::set<Weight> pts;
  Weight cur = Weight::zero(dat.rank());
  for (;;) {
    for (const Weight& w : weyl_orbit(dat, cur)) pts.insert(w);
    int j = dat.rank() - 1;
    while (j >= 0 && cur[j] == k) cur.c[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
    ++cur.c[static_cast<std::size_t>(j)];
  }
  return {pts.begin(), pts.end()};
}

TorusFunction function_from_unknowns(const ModulePtr& V, const std::vector<Weight>& box, const SVector& a) {
  const std::size_t z = zero_weight_dim(*V);
  if (a.size() != box.size() * z) throw DomainError("unknown vector has the wrong length");
  TorusFunction f(V);
  for (std::size_t b = 0; b < box.size(); ++b)
    f.add_zero_weight_term(box[b], SVector(a.begin() + static_cast<long>(b * z), a.begin() + static_cast<long>((b + 1) * z)));
  return f;
}

SMatrix condition_constraints(const WeightModule& V, const std::vector<Weight>& box, bool with_cond3) {
  const CartanDatum& dat = V.datum();
  const std::size_t z = zero_weight_dim(V), off = zero_weight_offset(V);
  const std::size_t ncols = box.size() * z;
  std::vector<std::map<std::size_t, Scalar>> rows;
  std::map<std::tuple<int, int, Weight, std::size_t, int>, std::size_t> keys;
  auto add = [&](std::tuple<int, int, Weight, std::size_t, int> key, std::size_t col, const Scalar& c) {
    auto it = keys.find(key);
    if (it == keys.end()) {
      it = keys.emplace(std::move(key), rows.size()).first;
      rows.emplace_back();
    }
    rows[it->second][col] += c;
  };

  for (int i = 0; i < dat.rank(); ++i) {
    const SymbolicOperator S = unshifted_symbolic_simple(V, i);
    const WeylElement s = WeylElement::simple(dat, i);
    for (std::size_t b = 0; b < box.size(); ++b) {
      const Weight snu = s.act(dat, box[b]);
      for (std::size_t j = 0; j < z; ++j) {
        const std::size_t col = b * z + j;
        for (const auto& [mu, c] : S.den.terms()) add({0, i, mu + snu, j, 0}, col, c);
        for (std::size_t x = 0; x < z; ++x)
          for (const auto& [mu, c] : S.at(x, j).terms()) add({0, i, mu + box[b], x, 0}, col, -c);
      }
    }
  }

  if (with_cond3) {
    for (int i = 0; i < dat.rank(); ++i) {
      const SMatrix e = V.e_full(i);
      SMatrix p = e;
      for (int n = 1; !p.is_zero(); ++n, p = e * p) {
        for (std::size_t b = 0; b < box.size(); ++b) {
          const auto [rep, t] = alpha_coset(dat, box[b], i);
          for (std::size_t j = 0; j < z; ++j)
            for (std::size_t x = 0; x < V.dim(); ++x) {
              const Scalar& w = p(x, off + j);
              if (w.is_zero()) continue;
              // The α_i-string part must vanish at e^{α_i} = q_i^{-2k}.
              for (int k = 1; k <= n; ++k)
                add({1 + n, i, rep, x, k}, b * z + j, w * Scalar::q_power(Rational(-2L * k * t * V.qd(i))));
            }
        }
      }
    }
  }

  SMatrix m(rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) m(r, c) = v;
  return m;
}

}  // namespace qchev
