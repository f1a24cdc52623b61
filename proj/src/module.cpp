#include "qchev/module.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "qchev/errors.hpp"

namespace qchev {

// -------------------------------------------------------------- WeightModule

WeightModule::WeightModule(CartanDatum datum, int q_power)
    : datum_(std::move(datum)), q_power_(q_power) {
  e_.resize(static_cast<std::size_t>(datum_.rank()));
  f_.resize(static_cast<std::size_t>(datum_.rank()));
}

int WeightModule::index_of(const Weight& w) const {
  auto it = index_.find(w);
  return it == index_.end() ? -1 : static_cast<int>(it->second);
}

std::size_t WeightModule::dim_of(const Weight& w) const {
  const int k = index_of(w);
  return k < 0 ? 0 : spaces_[static_cast<std::size_t>(k)].dim;
}

std::size_t WeightModule::add_space(const Weight& w, std::size_t dim, std::vector<std::string> labels,
                                    std::vector<std::vector<int>> words) {
  if (index_.count(w)) throw DomainError("duplicate weight space " + w.to_string());
  if (labels.empty())
    for (std::size_t k = 0; k < dim; ++k) labels.push_back("b" + std::to_string(dim_ + k));
  WeightSpace s{w, dim, dim_, std::move(labels), std::move(words)};
  spaces_.push_back(std::move(s));
  dim_ += dim;
  const std::size_t k = spaces_.size() - 1;
  index_[w] = k;
  for (auto& v : e_) v.emplace_back();
  for (auto& v : f_) v.emplace_back();
  return k;
}

namespace {

SMatrix full_matrix(const WeightModule& m, bool is_e, int i) {
  SMatrix out(m.dim(), m.dim());
  for (std::size_t k = 0; k < m.spaces().size(); ++k) {
    const OpBlock& b = is_e ? m.e(i, k) : m.f(i, k);
    if (b.target < 0) continue;
    const WeightSpace& src = m.space(k);
    const WeightSpace& dst = m.space(static_cast<std::size_t>(b.target));
    for (std::size_t r = 0; r < dst.dim; ++r)
      for (std::size_t c = 0; c < src.dim; ++c) out(dst.offset + r, src.offset + c) = b.m(r, c);
  }
  return out;
}

std::string word_label(const std::vector<int>& w, const char* base) {
  std::string s;
  for (int i : w) s += "F" + std::to_string(i + 1);
  return s.empty() ? std::string(base) : s + "." + base;
}

Scalar qi_power(const WeightModule& m, int i, long n) {
  return Scalar::q_power(Rational(m.qd(i) * n));
}

}  // namespace

SMatrix WeightModule::e_full(int i) const { return full_matrix(*this, true, i); }
SMatrix WeightModule::f_full(int i) const { return full_matrix(*this, false, i); }

OpBlock apply_word(const WeightModule& m, const std::vector<Letter>& word, std::size_t space) {
  OpBlock cur{static_cast<int>(space), SMatrix::identity(m.space(space).dim)};
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const OpBlock& op = it->is_e ? m.e(it->i, static_cast<std::size_t>(cur.target))
                                 : m.f(it->i, static_cast<std::size_t>(cur.target));
    if (op.target < 0) return {};
    cur = OpBlock{op.target, op.m * cur.m};
  }
  return cur;
}

// ------------------------------------------------------------ Verma modules

WeightModule verma_truncated(const CartanDatum& dat, const Weight& lambda, int depth) {
  if (depth < 0) throw DomainError("negative truncation depth");
  if (lambda.rank() != dat.rank()) throw DomainError("weight rank mismatch");
  const int r = dat.rank();
  WeightModule M(dat, 1);
  M.add_space(lambda, 1, {"m"}, {{}});

  std::vector<Weight> prev{lambda};
  for (int level = 1; level <= depth; ++level) {
    std::set<Weight, std::greater<>> next;
    for (const Weight& w : prev)
      for (int i = 0; i < r; ++i) next.insert(w - dat.simple_root(i));
    for (const Weight& nu : next) {
      // Candidates F_i x, x a basis vector of M[ν+α_i].
      struct Cand {
        int i;
        std::size_t x;
        std::vector<int> word;
      };
      std::vector<Cand> cands;
      std::vector<int> up(static_cast<std::size_t>(r), -1);
      for (int i = 0; i < r; ++i) {
        up[i] = M.index_of(nu + dat.simple_root(i));
        if (up[i] < 0) continue;
        const WeightSpace& s = M.space(static_cast<std::size_t>(up[i]));
        for (std::size_t x = 0; x < s.dim; ++x) {
          std::vector<int> w{i};
          w.insert(w.end(), s.words[x].begin(), s.words[x].end());
          cands.push_back({i, x, std::move(w)});
        }
      }
      std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.word < b.word; });
      const std::size_t nc = cands.size();
      // Column of candidate (i, x) in ascending order.
      std::map<std::pair<int, std::size_t>, std::size_t> col_of;
      for (std::size_t c = 0; c < nc; ++c) col_of[{cands[c].i, cands[c].x}] = c;

      // Serre relations S_ij b, b a basis vector of M[ν + (1−a_ij)α_i + α_j].
      std::vector<SVector> rel_rows;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          if (i == j) continue;
          const int N = 1 - dat.a(i, j);
          const int src = M.index_of(nu + N * dat.simple_root(i) + dat.simple_root(j));
          if (src < 0) continue;
          const std::size_t sdim = M.space(static_cast<std::size_t>(src)).dim;
          std::vector<SVector> rows(sdim, SVector(nc, Scalar()));
          for (int t = 0; t <= N; ++t) {
            Scalar coef = quantum_binomial(N, t, M.qd(i));
            if (t % 2) coef = -coef;
            std::vector<Letter> word;
            int lead;
            if (N - t > 0) {
              for (int k = 0; k < N - t - 1; ++k) word.push_back({false, i});
              word.push_back({false, j});
              for (int k = 0; k < t; ++k) word.push_back({false, i});
              lead = i;
            } else {
              for (int k = 0; k < N; ++k) word.push_back({false, i});
              lead = j;
            }
            OpBlock y = apply_word(M, word, static_cast<std::size_t>(src));
            if (y.target < 0) continue;
            if (y.target != up[lead]) throw TheoremViolation("Serre relation landed in the wrong weight space");
            for (std::size_t b = 0; b < sdim; ++b)
              for (std::size_t x = 0; x < y.m.rows(); ++x)
                if (!y.m(x, b).is_zero()) rows[b][col_of.at({lead, x})] += coef * y.m(x, b);
          }
          for (auto& row : rows)
            if (!is_zero_vector(row)) rel_rows.push_back(std::move(row));
        }

      // Eliminate with pivots at the largest words: reverse the column order.
      SMatrix rel(rel_rows.size(), nc);
      for (std::size_t a = 0; a < rel_rows.size(); ++a)
        for (std::size_t c = 0; c < nc; ++c) rel(a, nc - 1 - c) = rel_rows[a][c];
      Echelon<Scalar> ech = rref(rel);
      std::vector<int> pivot_row(nc, -1);
      for (std::size_t row = 0; row < ech.pivots.size(); ++row)
        pivot_row[nc - 1 - ech.pivots[row]] = static_cast<int>(row);
      std::vector<std::size_t> basis_pos(nc, 0);
      std::vector<std::size_t> free_cols;
      for (std::size_t c = 0; c < nc; ++c)
        if (pivot_row[c] < 0) {
          basis_pos[c] = free_cols.size();
          free_cols.push_back(c);
        }
      const std::size_t dim = free_cols.size();
      if (dim == 0) throw TheoremViolation("empty Verma weight space at " + nu.to_string());
      std::vector<std::string> labels;
      std::vector<std::vector<int>> words;
      for (std::size_t c : free_cols) {
        labels.push_back(word_label(cands[c].word, "m"));
        words.push_back(cands[c].word);
      }
      const std::size_t k = M.add_space(nu, dim, labels, words);

      // Normal form of every candidate in the new basis.
      auto normal_form = [&](std::size_t c) {
        SVector v(dim, Scalar());
        if (pivot_row[c] < 0) {
          v[basis_pos[c]] = 1;
          return v;
        }
        const std::size_t row = static_cast<std::size_t>(pivot_row[c]);
        for (std::size_t f : free_cols) {
          const Scalar& e = ech.rref(row, nc - 1 - f);
          if (!e.is_zero()) v[basis_pos[f]] = -e;
        }
        return v;
      };

      for (int i = 0; i < r; ++i) {
        if (up[i] < 0) continue;
        const std::size_t src = static_cast<std::size_t>(up[i]);
        SMatrix fm(dim, M.space(src).dim);
        for (std::size_t x = 0; x < M.space(src).dim; ++x) {
          SVector v = normal_form(col_of.at({i, x}));
          for (std::size_t a = 0; a < dim; ++a) fm(a, x) = v[a];
        }
        M.set_f(i, src, {static_cast<int>(k), std::move(fm)});
      }

      // E_j F_i x = F_i E_j x + δ_ij [(ν+α_i)(h_i)]_{q_i} x.
      for (int j = 0; j < r; ++j) {
        if (up[j] < 0) continue;
        const std::size_t tgt = static_cast<std::size_t>(up[j]);
        SMatrix em(M.space(tgt).dim, dim);
        for (std::size_t a = 0; a < dim; ++a) {
          const Cand& cd = cands[free_cols[a]];
          const std::size_t xs = static_cast<std::size_t>(up[cd.i]);
          const OpBlock& ej = M.e(j, xs);
          if (ej.target >= 0) {
            const OpBlock& fi = M.f(cd.i, static_cast<std::size_t>(ej.target));
            if (fi.target >= 0) {
              if (static_cast<std::size_t>(fi.target) != tgt) throw TheoremViolation("straightening mismatch");
              for (std::size_t row = 0; row < em.rows(); ++row) {
                Scalar s;
                for (std::size_t z = 0; z < ej.m.rows(); ++z)
                  if (!ej.m(z, cd.x).is_zero() && !fi.m(row, z).is_zero()) s += fi.m(row, z) * ej.m(z, cd.x);
                em(row, a) += s;
              }
            }
          }
          if (cd.i == j) {
            const int n = (nu + dat.simple_root(j))[j];
            em(cd.x, a) += quantum_integer(n, M.qd(j));
          }
        }
        M.set_e(j, k, {static_cast<int>(tgt), std::move(em)});
      }
    }
    prev.assign(next.begin(), next.end());
  }
  M.set_highest_weight(lambda);
  M.set_truncation_depth(depth);
  M.set_description("verma" + lambda.to_string() + "/depth" + std::to_string(depth));
  return M;
}

// ------------------------------------------------------- contravariant form

SMatrix contravariant_form(const WeightModule& m, const Weight& nu) {
  if (!m.truncation_depth() || !m.highest_weight()) throw DomainError("contravariant_form needs a truncated Verma module");
  const int target = m.index_of(nu);
  if (target < 0) throw DomainError("weight " + nu.to_string() + " not in module");
  std::map<std::size_t, SMatrix> memo;
  std::function<const SMatrix&(std::size_t)> gram = [&](std::size_t k) -> const SMatrix& {
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    const WeightSpace& s = m.space(k);
    SMatrix g(s.dim, s.dim);
    if (k == 0) {
      g(0, 0) = 1;
    } else {
      for (std::size_t a = 0; a < s.dim; ++a) {
        const int i = s.words[a].front();
        const std::vector<int> rest(s.words[a].begin() + 1, s.words[a].end());
        const std::size_t up = static_cast<std::size_t>(m.index_of(s.weight + m.datum().simple_root(i)));
        const WeightSpace& us = m.space(up);
        const std::size_t xa = static_cast<std::size_t>(std::find(us.words.begin(), us.words.end(), rest) - us.words.begin());
        if (xa == us.words.size()) throw TheoremViolation("Verma basis word has no parent");
        const SMatrix& gu = gram(up);
        const OpBlock& e = m.e(i, k);
        for (std::size_t b = 0; b < s.dim; ++b) {
          Scalar acc;
          for (std::size_t c = 0; c < us.dim; ++c)
            if (!e.m(c, b).is_zero() && !gu(xa, c).is_zero()) acc += gu(xa, c) * e.m(c, b);
          g(a, b) = acc;
        }
      }
    }
    return memo.emplace(k, std::move(g)).first->second;
  };
  return gram(static_cast<std::size_t>(target));
}

// -------------------------------------------------------------- irreducible

WeightModule irreducible(const CartanDatum& dat, const Weight& lambda) {
  if (lambda.rank() != dat.rank()) throw DomainError("weight rank mismatch");
  if (!lambda.is_dominant()) throw DomainError("irreducible: " + lambda.to_string() + " is not dominant");
  const Weight low = longest_element(dat).act(dat, lambda);
  const int D = dat.height(lambda - low) + 1;
  const WeightModule M = verma_truncated(dat, lambda, D);
  const int r = dat.rank();
  const std::size_t ns = M.spaces().size();

  // The radical of the contravariant form at ν ≠ λ consists of the x with
  // E_j x in the radical at ν+α_j for all j. Working with the quotient maps
  // directly gives the same subspace as the Gram-matrix kernel, with much
  // smaller intermediate entries.
  std::vector<int> lidx(ns, -1);
  std::vector<SMatrix> proj(ns);
  std::vector<std::vector<std::size_t>> keep(ns);
  WeightModule L(dat, 1);
  for (std::size_t k = 0; k < ns; ++k) {
    const WeightSpace& s = M.space(k);
    if (k == 0) {
      proj[k] = SMatrix::identity(1);
      keep[k] = {0};
    } else {
      std::vector<SMatrix> blocks;
      for (int j = 0; j < r; ++j) {
        const OpBlock& e = M.e(j, k);
        if (e.target < 0 || lidx[static_cast<std::size_t>(e.target)] < 0) continue;
        blocks.push_back(proj[static_cast<std::size_t>(e.target)] * e.m);
      }
      if (blocks.empty()) continue;
      Echelon<Scalar> ech = rref(SMatrix::vstack(blocks, s.dim));
      if (ech.pivots.empty()) continue;
      keep[k] = ech.pivots;
      proj[k] = std::move(ech.rref);
    }
    std::vector<std::string> labels;
    std::vector<std::vector<int>> words;
    for (std::size_t c : keep[k]) {
      labels.push_back(word_label(s.words[c], "l"));
      words.push_back(s.words[c]);
    }
    lidx[k] = static_cast<int>(L.add_space(s.weight, keep[k].size(), labels, words));
  }
  for (std::size_t k = 0; k < ns; ++k) {
    if (lidx[k] < 0) continue;
    if (static_cast<int>(dat.height(lambda - M.space(k).weight)) >= D)
      throw TheoremViolation("irreducible quotient reaches the truncation boundary");
  }
  for (std::size_t k = 0; k < ns; ++k) {
    if (lidx[k] < 0) continue;
    const std::size_t lk = static_cast<std::size_t>(lidx[k]);
    SMatrix incl(M.space(k).dim, keep[k].size());
    for (std::size_t c = 0; c < keep[k].size(); ++c) incl(keep[k][c], c) = 1;
    for (int j = 0; j < r; ++j) {
      for (bool is_e : {true, false}) {
        const OpBlock& op = is_e ? M.e(j, k) : M.f(j, k);
        if (op.target < 0) continue;
        const std::size_t t = static_cast<std::size_t>(op.target);
        if (lidx[t] < 0) continue;
        OpBlock b{lidx[t], proj[t] * op.m * incl};
        if (is_e) L.set_e(j, lk, std::move(b));
        else L.set_f(j, lk, std::move(b));
      }
    }
  }
  L.set_highest_weight(lambda);
  L.set_description("L" + lambda.to_string());
  return L;
}

// ------------------------------------------------------------------ tensor

namespace {

struct Layout {
  std::vector<Weight> weights;                    // product weight spaces, descending
  std::vector<std::vector<TensorBlock>> blocks;   // per product space
  std::vector<std::size_t> dims;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> where;  // -> (space, offset)
};

Layout make_layout(const WeightModule& a, const WeightModule& b) {
  std::map<Weight, std::vector<std::pair<std::size_t, std::size_t>>, std::greater<>> by;
  for (std::size_t x = 0; x < a.spaces().size(); ++x)
    for (std::size_t y = 0; y < b.spaces().size(); ++y) by[a.space(x).weight + b.space(y).weight].push_back({x, y});
  Layout L;
  for (auto& [w, pairs] : by) {
    std::vector<TensorBlock> bl;
    std::size_t off = 0;
    for (auto [x, y] : pairs) {
      bl.push_back({x, y, off});
      L.where[{x, y}] = {L.weights.size(), off};
      off += a.space(x).dim * b.space(y).dim;
    }
    L.weights.push_back(w);
    L.blocks.push_back(std::move(bl));
    L.dims.push_back(off);
  }
  return L;
}

}  // namespace

std::vector<std::vector<TensorBlock>> tensor_layout(const WeightModule& a, const WeightModule& b,
                                                    const WeightModule& ab) {
  Layout L = make_layout(a, b);
  if (L.weights.size() != ab.spaces().size()) throw DomainError("tensor_layout: module mismatch");
  return L.blocks;
}

WeightModule tensor(const WeightModule& a, const WeightModule& b) {
  if (!(a.datum() == b.datum()) || a.q_power() != b.q_power()) throw DomainError("tensor: mismatched data");
  const CartanDatum& dat = a.datum();
  Layout L = make_layout(a, b);
  WeightModule T(dat, a.q_power());
  for (std::size_t k = 0; k < L.weights.size(); ++k) {
    std::vector<std::string> labels;
    for (const TensorBlock& bl : L.blocks[k])
      for (std::size_t x = 0; x < a.space(bl.a_space).dim; ++x)
        for (std::size_t y = 0; y < b.space(bl.b_space).dim; ++y)
          labels.push_back(a.space(bl.a_space).labels[x] + "|" + b.space(bl.b_space).labels[y]);
    T.add_space(L.weights[k], L.dims[k], std::move(labels));
  }
  for (int i = 0; i < dat.rank(); ++i) {
    for (bool is_e : {true, false}) {
      const Weight shift = is_e ? dat.simple_root(i) : -dat.simple_root(i);
      for (std::size_t k = 0; k < L.weights.size(); ++k) {
        const int tgt = T.index_of(L.weights[k] + shift);
        if (tgt < 0) continue;
        SMatrix m(T.space(static_cast<std::size_t>(tgt)).dim, L.dims[k]);
        bool any = false;
        for (const TensorBlock& bl : L.blocks[k]) {
          const std::size_t da = a.space(bl.a_space).dim, db = b.space(bl.b_space).dim;
          const Weight& wa = a.space(bl.a_space).weight;
          const Weight& wb = b.space(bl.b_space).weight;
          // Part acting on the first factor.
          const OpBlock& oa = is_e ? a.e(i, bl.a_space) : a.f(i, bl.a_space);
          if (oa.target >= 0) {
            const auto [ts, toff] = L.where.at({static_cast<std::size_t>(oa.target), bl.b_space});
            const Scalar k_factor = is_e ? qi_power(a, i, wb[i]) : Scalar(1);
            for (std::size_t x = 0; x < da; ++x)
              for (std::size_t xp = 0; xp < oa.m.rows(); ++xp) {
                if (oa.m(xp, x).is_zero()) continue;
                const Scalar v = k_factor * oa.m(xp, x);
                for (std::size_t y = 0; y < db; ++y) m(toff + xp * db + y, bl.offset + x * db + y) += v;
                any = true;
              }
          }
          // Part acting on the second factor.
          const OpBlock& ob = is_e ? b.e(i, bl.b_space) : b.f(i, bl.b_space);
          if (ob.target >= 0) {
            const auto [ts, toff] = L.where.at({bl.a_space, static_cast<std::size_t>(ob.target)});
            const std::size_t dbt = ob.m.rows();
            const Scalar k_factor = is_e ? Scalar(1) : qi_power(a, i, -wa[i]);
            for (std::size_t y = 0; y < db; ++y)
              for (std::size_t yp = 0; yp < dbt; ++yp) {
                if (ob.m(yp, y).is_zero()) continue;
                const Scalar v = k_factor * ob.m(yp, y);
                for (std::size_t x = 0; x < da; ++x) m(toff + x * dbt + yp, bl.offset + x * db + y) += v;
                any = true;
              }
          }
        }
        if (!any) continue;
        if (is_e) T.set_e(i, k, {tgt, std::move(m)});
        else T.set_f(i, k, {tgt, std::move(m)});
      }
    }
  }
  T.set_description("(" + a.description() + ")x(" + b.description() + ")");
  return T;
}

// -------------------------------------------------------------- direct sum

WeightModule direct_sum(const WeightModule& a, const WeightModule& b) {
  if (!(a.datum() == b.datum()) || a.q_power() != b.q_power()) throw DomainError("direct_sum: mismatched data");
  std::set<Weight, std::greater<>> ws;
  for (const auto& s : a.spaces()) ws.insert(s.weight);
  for (const auto& s : b.spaces()) ws.insert(s.weight);
  WeightModule S(a.datum(), a.q_power());
  for (const Weight& w : ws) {
    std::vector<std::string> labels;
    if (int ka = a.index_of(w); ka >= 0)
      for (const auto& l : a.space(static_cast<std::size_t>(ka)).labels) labels.push_back("0:" + l);
    if (int kb = b.index_of(w); kb >= 0)
      for (const auto& l : b.space(static_cast<std::size_t>(kb)).labels) labels.push_back("1:" + l);
    S.add_space(w, a.dim_of(w) + b.dim_of(w), std::move(labels));
  }
  for (int i = 0; i < a.datum().rank(); ++i)
    for (bool is_e : {true, false})
      for (std::size_t k = 0; k < S.spaces().size(); ++k) {
        const Weight& w = S.space(k).weight;
        const Weight tw = w + (is_e ? a.datum().simple_root(i) : -a.datum().simple_root(i));
        const int t = S.index_of(tw);
        if (t < 0) continue;
        SMatrix m(S.space(static_cast<std::size_t>(t)).dim, S.space(k).dim);
        bool any = false;
        const std::size_t da = a.dim_of(w), dta = a.dim_of(tw);
        for (int part = 0; part < 2; ++part) {
          const WeightModule& src = part == 0 ? a : b;
          const int ks = src.index_of(w);
          if (ks < 0) continue;
          const OpBlock& op = is_e ? src.e(i, static_cast<std::size_t>(ks)) : src.f(i, static_cast<std::size_t>(ks));
          if (op.target < 0) continue;
          const std::size_t ro = part == 0 ? 0 : dta, co = part == 0 ? 0 : da;
          for (std::size_t rr = 0; rr < op.m.rows(); ++rr)
            for (std::size_t cc = 0; cc < op.m.cols(); ++cc) m(ro + rr, co + cc) = op.m(rr, cc);
          any = true;
        }
        if (!any) continue;
        if (is_e) S.set_e(i, k, {t, std::move(m)});
        else S.set_f(i, k, {t, std::move(m)});
      }
  S.set_description(a.description() + "+" + b.description());
  return S;
}

WeightModule module_from_highest_weights(const CartanDatum& dat, const std::vector<Weight>& hws) {
  if (hws.empty()) throw DomainError("empty list of highest weights");
  WeightModule m = irreducible(dat, hws[0]);
  for (std::size_t k = 1; k < hws.size(); ++k) m = direct_sum(m, irreducible(dat, hws[k]));
  return m;
}

// ------------------------------------------------------------- restriction

WeightModule restrict_sl2(const WeightModule& m, int i) {
  if (i < 0 || i >= m.datum().rank()) throw DomainError("restrict_sl2: index out of range");
  std::map<int, std::vector<std::size_t>, std::greater<>> groups;
  for (std::size_t k = 0; k < m.spaces().size(); ++k) groups[m.space(k).weight[i]].push_back(k);
  WeightModule R(CartanDatum('A', 1), static_cast<int>(m.qd(i)));
  std::vector<std::size_t> parent;
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> where;  // parent space -> (group, offset)
  for (const auto& [h, ks] : groups) {
    std::vector<std::string> labels;
    std::size_t off = 0;
    for (std::size_t k : ks) {
      where[k] = {R.spaces().size(), off};
      for (std::size_t x = 0; x < m.space(k).dim; ++x) {
        labels.push_back(m.space(k).weight.to_string() + ":" + m.space(k).labels[x]);
        parent.push_back(m.space(k).offset + x);
      }
      off += m.space(k).dim;
    }
    R.add_space(Weight{h}, off, std::move(labels));
  }
  for (bool is_e : {true, false})
    for (std::size_t g = 0; g < R.spaces().size(); ++g) {
      const int t = R.index_of(Weight{R.space(g).weight[0] + (is_e ? 2 : -2)});
      if (t < 0) continue;
      SMatrix mat(R.space(static_cast<std::size_t>(t)).dim, R.space(g).dim);
      bool any = false;
      for (std::size_t k : groups.at(R.space(g).weight[0])) {
        const OpBlock& op = is_e ? m.e(i, k) : m.f(i, k);
        if (op.target < 0) continue;
        const std::size_t co = where.at(k).second;
        const std::size_t ro = where.at(static_cast<std::size_t>(op.target)).second;
        for (std::size_t rr = 0; rr < op.m.rows(); ++rr)
          for (std::size_t cc = 0; cc < op.m.cols(); ++cc) mat(ro + rr, co + cc) = op.m(rr, cc);
        any = true;
      }
      if (!any) continue;
      if (is_e) R.set_e(0, g, {t, std::move(mat)});
      else R.set_f(0, g, {t, std::move(mat)});
    }
  R.set_parent_index(std::move(parent));
  R.set_description(m.description() + "|sl2[" + std::to_string(i + 1) + "]");
  return R;
}

// --------------------------------------------------------- relation checks

namespace {

// Sum of blocks landing in the weight space `tw`; absent blocks count as zero.
SMatrix block_or_zero(const WeightModule& m, const OpBlock& b, int tw, std::size_t src_dim) {
  const std::size_t rows = tw < 0 ? 0 : m.space(static_cast<std::size_t>(tw)).dim;
  if (b.target < 0) return SMatrix(rows, src_dim);
  if (b.target != tw) throw TheoremViolation("operator landed in an unexpected weight space");
  return b.m;
}

}  // namespace

std::vector<RelationViolation> check_relations(const WeightModule& m) {
  std::vector<RelationViolation> out;
  const CartanDatum& dat = m.datum();
  const int r = dat.rank();
  for (std::size_t k = 0; k < m.spaces().size(); ++k) {
    const Weight& nu = m.space(k).weight;
    const std::size_t dim = m.space(k).dim;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        const int tw = m.index_of(nu + dat.simple_root(i) - dat.simple_root(j));
        SMatrix c = block_or_zero(m, apply_word(m, {{true, i}, {false, j}}, k), tw, dim) -
                    block_or_zero(m, apply_word(m, {{false, j}, {true, i}}, k), tw, dim);
        if (i == j) c = c - quantum_integer(nu[i], m.qd(i)) * SMatrix::identity(dim);
        if (!c.is_zero()) out.push_back({"commutator", nu, i, j});
        if (i == j) continue;
        const int N = 1 - dat.a(i, j);
        for (bool is_e : {true, false}) {
          const Weight shift = N * dat.simple_root(i) + dat.simple_root(j);
          const int t2 = m.index_of(is_e ? nu + shift : nu - shift);
          SMatrix acc(t2 < 0 ? 0 : m.space(static_cast<std::size_t>(t2)).dim, dim);
          for (int t = 0; t <= N; ++t) {
            std::vector<Letter> word;
            for (int s = 0; s < N - t; ++s) word.push_back({is_e, i});
            word.push_back({is_e, j});
            for (int s = 0; s < t; ++s) word.push_back({is_e, i});
            Scalar coef = quantum_binomial(N, t, m.qd(i));
            if (t % 2) coef = -coef;
            acc = acc + coef * block_or_zero(m, apply_word(m, word, k), t2, dim);
          }
          if (!acc.is_zero()) out.push_back({is_e ? "serre_e" : "serre_f", nu, i, j});
        }
      }
  }
  return out;
}

// ------------------------------------------------------------------- misc

std::size_t zero_weight_dim(const WeightModule& v) { return v.dim_of(Weight::zero(v.datum().rank())); }

std::size_t zero_weight_offset(const WeightModule& v) {
  const int k = v.index_of(Weight::zero(v.datum().rank()));
  if (k < 0) throw DomainError("module has no zero weight space");
  return v.space(static_cast<std::size_t>(k)).offset;
}

Rational weyl_dimension(const CartanDatum& dat, const Weight& lambda) {
  Rational p(1);
  for (const Weight& b : dat.positive_roots()) p *= dat.pairing(lambda + dat.rho(), b) / dat.pairing(dat.rho(), b);
  return p;
}

}  // namespace qchev
