#include "qchev/suites.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <thread>

#include "qchev/chevalley.hpp"

namespace qchev {

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  bool skipped = false;
};

CaseResult run_case(std::string name, const std::function<Outcome()>& fn) {
  CaseResult c;
  c.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = fn();
    c.pass = o.pass;
    c.skipped = o.skipped;
    c.detail = std::move(o.detail);
  } catch (const TheoremViolation& e) {
    c.detail = std::string("theorem violation: ") + e.what();
  } catch (const std::exception& e) {
    c.detail = e.what();
  }
  c.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

ModulePtr irr(const CartanDatum& dat, const Weight& w) { return std::make_shared<const WeightModule>(irreducible(dat, w)); }

// A module V together with the range of μ the suites exercise.
struct Config {
  std::string name;
  CartanDatum dat;
  Weight v_highest;
  int mu_max;
};

std::vector<Config> trace_configs() {
  return {{"A1 V=L2", CartanDatum('A', 1), Weight{2}, 8},
          {"A1 V=L4", CartanDatum('A', 1), Weight{4}, 8},
          {"A2 V=adjoint", CartanDatum('A', 2), Weight{1, 1}, 2},
          {"B2 V=adjoint", CartanDatum('B', 2), Weight{0, 2}, 2}};
}

std::vector<Weight> dominant_box(int rank, int k) {
  std::vector<Weight> out;
  Weight cur = Weight::zero(rank);
  for (;;) {
    out.push_back(cur);
    int j = rank - 1;
    while (j >= 0 && cur[j] == k) cur.c[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
    ++cur.c[static_cast<std::size_t>(j)];
  }
  return out;
}

std::vector<GeneratedTrace> all_traces(TraceFactory& tf, const Config& c) {
  std::vector<GeneratedTrace> out;
  for (const Weight& mu : dominant_box(c.dat.rank(), c.mu_max))
    for (auto& t : generate_traces(tf, mu)) out.push_back(std::move(t));
  return out;
}

// Coordinates of a V[0]-valued function on a list of (weight, V[0] index) columns.
SVector unknowns_of(const TorusFunction& f, const std::vector<Weight>& box) {
  const std::size_t z = zero_weight_dim(f.module());
  SVector a(box.size() * z);
  const auto terms = f.zero_weight_terms();
  for (std::size_t b = 0; b < box.size(); ++b) {
    auto it = terms.find(box[b]);
    if (it == terms.end()) continue;
    for (std::size_t j = 0; j < z; ++j) a[b * z + j] = it->second[j];
  }
  for (const auto& [w, v] : terms)
    if (!std::binary_search(box.begin(), box.end(), w)) throw DomainError("support leaves the box at " + w.to_string());
  return a;
}

std::size_t row_rank(const std::vector<SVector>& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  SMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  return rank(m);
}

std::string vec_string(const SVector& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].to_string();
  return s + "]";
}

// ---------------------------------------------------------------- criteria

void golden_example(CriterionResult& r) {
  CartanDatum a1('A', 1);
  TraceFactory tf(irr(a1, Weight{2}));
  const std::size_t v0 = zero_weight_offset(*tf.module());
  for (int mu = 1; mu <= 6; ++mu)
    r.cases.push_back(run_case("mu=" + std::to_string(mu), [&] {
      auto gen = generate_traces(tf, Weight{mu});
      if (gen.size() != 1) return Outcome{false, std::to_string(gen.size()) + " trace functions, expected 1"};
      std::map<Weight, Rational> expect, got;
      for (int n = mu; n > 0; n -= 2) {
        expect[Weight{n}] = Rational(n) / mu;
        expect[Weight{-n}] = Rational(-n) / mu;
      }
      for (const auto& [w, v] : classical_limit(gen[0].f)) {
        for (std::size_t k = 0; k < v.size(); ++k)
          if (k != v0 && v[k] != 0) return Outcome{false, "component outside V[0] at " + w.to_string()};
        got[w] = v[v0];
      }
      if (got != expect) return Outcome{false, "classical limit differs from the closed form"};
      return Outcome{true, std::to_string(got.size()) + " terms"};
    }));
}

void hom_table(CriterionResult& r) {
  CartanDatum a1('A', 1);
  for (int m = 0; m <= 3; ++m) {
    ModulePtr V = irr(a1, Weight{2 * m});
    for (int l = 0; l <= 10; ++l)
      r.cases.push_back(run_case("m=" + std::to_string(m) + " lambda=" + std::to_string(l), [&] {
        const std::size_t d = hom_dimension(Weight{l}, V);
        const std::size_t want = l >= m ? 1 : 0;
        return Outcome{d == want, "dim " + std::to_string(d)};
      }));
  }
}

void explicit_formula(CriterionResult& r) {
  for (int m = 0; m <= 3; ++m)
    for (int l = m; l <= m + 6; ++l)
      r.cases.push_back(run_case("m=" + std::to_string(m) + " lambda=" + std::to_string(l), [&] {
        const Scalar direct = a_operator_rank1_direct(m, l, l + 1);
        const Scalar formula = a_operator_rank1_formula(m, l);
        return Outcome{direct == formula, direct.to_string()};
      }));
}

void soundness(CriterionResult& r) {
  for (const Config& c : trace_configs()) {
    TraceFactory tf(irr(c.dat, c.v_highest));
    for (const Weight& mu : dominant_box(c.dat.rank(), c.mu_max))
      r.cases.push_back(run_case(c.name + " mu=" + mu.to_string(), [&] {
        auto gen = generate_traces(tf, mu);
        for (const auto& t : gen) {
          ConditionReport rep = check_conditions(t.f);
          if (!rep.all_pass()) return Outcome{false, "v=" + vec_string(t.v) + " fails " + rep.first_failure()};
        }
        return Outcome{true, std::to_string(gen.size()) + " trace functions"};
      }));
  }
}

void dimension_count(CriterionResult& r) {
  CartanDatum a1('A', 1);
  for (int m = 0; m <= 3; ++m) {
    TraceFactory tf(irr(a1, Weight{2 * m}));
    for (int N = 0; N <= 12; ++N)
      r.cases.push_back(run_case("m=" + std::to_string(m) + " N=" + std::to_string(N), [&] {
        std::vector<Weight> box;
        for (int n = -N; n <= N; ++n) box.push_back(Weight{n});
        const std::size_t cols = box.size() * zero_weight_dim(*tf.module());
        auto ker = kernel_basis(condition_constraints(*tf.module(), box, true));
        std::vector<SVector> traces;
        for (int mu = 0; mu <= N; ++mu)
          for (const auto& t : generate_traces(tf, Weight{mu})) traces.push_back(unknowns_of(t.f, box));
        const std::size_t tr = row_rank(traces, cols);
        std::vector<SVector> both = ker;
        both.insert(both.end(), traces.begin(), traces.end());
        const std::size_t span = row_rank(both, cols);
        const std::size_t want = static_cast<std::size_t>(std::max(0, N - m + 1));
        const bool ok = ker.size() == want && traces.size() == want && tr == want && span == want;
        return Outcome{ok, "kernel " + std::to_string(ker.size()) + ", traces " + std::to_string(traces.size()) +
                               ", joint rank " + std::to_string(span) + ", expected " + std::to_string(want)};
      }));
  }
}

void round_trip(CriterionResult& r, const SuiteOptions& opt) {
  std::size_t idx = 0;
  for (Config c : trace_configs()) {
    if (c.dat.rank() == 1) c.mu_max = 6;
    const std::uint64_t seed = opt.seed * 1000003u + idx++;
    r.cases.push_back(run_case(c.name, [&] {
      TraceFactory tf(irr(c.dat, c.v_highest));
      const auto gen = all_traces(tf, c);
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<int> num(-9, 9), den(1, 5), coin(0, 1);
      for (int trial = 0; trial < opt.trials; ++trial) {
        TorusFunction f(tf.module());
        std::map<Weight, SVector> expect;
        for (const auto& t : gen) {
          if (!coin(rng)) continue;
          int n = 0;
          while (n == 0) n = num(rng);
          const Scalar coef(Rational(n, 1) / den(rng));
          f = f + coef * t.f;
          auto& v = expect.try_emplace(t.mu, SVector(t.v.size())).first->second;
          for (std::size_t k = 0; k < v.size(); ++k) v[k] += coef * t.v[k];
        }
        std::map<Weight, SVector> got;
        for (auto& term : decompose(f, tf).terms) got.emplace(term.mu, term.v);
        if (got != expect) return Outcome{false, "trial " + std::to_string(trial) + " decomposed differently"};
      }
      return Outcome{true, std::to_string(opt.trials) + " trials over " + std::to_string(gen.size()) + " traces"};
    }));
  }
}

void injectivity(CriterionResult& r) {
  for (const Config& c : trace_configs())
    r.cases.push_back(run_case(c.name, [&] {
      TraceFactory tf(irr(c.dat, c.v_highest));
      const auto gen = all_traces(tf, c);
      std::vector<Weight> cols;
      for (const auto& t : gen)
        for (const Weight& w : t.f.support()) cols.push_back(w);
      std::sort(cols.begin(), cols.end());
      cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
      std::vector<SVector> rows;
      for (const auto& t : gen) rows.push_back(unknowns_of(t.f, cols));
      const std::size_t rk = row_rank(rows, cols.size() * zero_weight_dim(*tf.module()));
      return Outcome{rk == rows.size(), "rank " + std::to_string(rk) + " of " + std::to_string(rows.size())};
    }));
}

void cocycle(CriterionResult& r) {
  struct Case {
    std::string name;
    CartanDatum dat;
    std::vector<Weight> hws;
  };
  const std::vector<Case> cases = {{"A1 V=L2", CartanDatum('A', 1), {Weight{2}}},
                                   {"A1 V=L4", CartanDatum('A', 1), {Weight{4}}},
                                   {"A1 V=L2+L4", CartanDatum('A', 1), {Weight{2}, Weight{4}}},
                                   {"A2 V=adjoint", CartanDatum('A', 2), {Weight{1, 1}}},
                                   {"B2 V=adjoint", CartanDatum('B', 2), {Weight{0, 2}}},
                                   {"G2 V=L(1,0)", CartanDatum('G', 2), {Weight{1, 0}}}};
  for (const Case& c : cases)
    r.cases.push_back(run_case(c.name, [&] {
      const WeightModule V = module_from_highest_weights(c.dat, c.hws);
      const auto W = weyl_group(c.dat);
      std::map<std::vector<int>, SymbolicOperator> ops;
      for (const WeylElement& w : W) ops.emplace(w.reduced_word(), unshifted_symbolic(w, V));
      auto op = [&](const WeylElement& w) -> const SymbolicOperator& { return ops.at(w.reduced_word()); };
      std::size_t checked = 0;
      for (const WeylElement& w1 : W)
        for (const WeylElement& w2 : W) {
          const WeylElement prod = w1.compose(c.dat, w2);
          if (!op(prod).equals(op(w1).substitute(c.dat, w2) * op(w2)))
            return Outcome{false, "cocycle fails for w1=" + w1.to_string() + ", w2=" + w2.to_string()};
          ++checked;
        }
      for (const WeylElement& w : W)
        if (!(op(w.inverse(c.dat)).substitute(c.dat, w) * op(w)).is_identity())
          return Outcome{false, "involutivity fails for w=" + w.to_string()};
      return Outcome{true, std::to_string(checked) + " pairs, dim V[0]=" + std::to_string(zero_weight_dim(V))};
    }));
}

void verma_traces(CriterionResult& r, const SuiteOptions& opt) {
  CartanDatum a1('A', 1);
  for (int m = 1; m <= 2; ++m) {
    TraceFactory tf(irr(a1, Weight{2 * m}));
    for (int mu = m; mu <= m + 4; ++mu)
      r.cases.push_back(run_case("V=L" + std::to_string(2 * m) + " mu=" + std::to_string(mu), [&] {
        VermaIdentityResult p = verma_identity_residual(tf, mu, {Scalar(1)}, opt.verma_depth);
        if (p.skipped) return Outcome{true, "skipped: " + p.reason, true};
        for (std::size_t k = 0; k < p.lhs.size(); ++k)
          if (p.lhs[k] != p.rhs[k]) return Outcome{false, "residual at degree " + std::to_string(k)};
        return Outcome{true, "residual zero through depth " + std::to_string(opt.verma_depth)};
      }));
  }
}

void small_v(CriterionResult& r) {
  struct Case {
    std::string name;
    CartanDatum dat;
    Weight hw;
    std::vector<Weight> box;
  };
  std::vector<Weight> line;
  for (int n = -10; n <= 10; ++n) line.push_back(Weight{n});
  const CartanDatum a2('A', 2);
  const std::vector<Case> cases = {{"A1 V=L2", CartanDatum('A', 1), Weight{2}, line},
                                   {"A2 V=adjoint", a2, Weight{1, 1}, w_stable_box(a2, 2)}};
  for (const Case& c : cases)
    r.cases.push_back(run_case(c.name, [&] {
      ModulePtr V = irr(c.dat, c.hw);
      auto ker = kernel_basis(condition_constraints(*V, c.box, false));
      if (ker.empty()) return Outcome{false, "empty solution space"};
      for (const SVector& a : ker) {
        ConditionReport rep = check_conditions(function_from_unknowns(V, c.box, a));
        if (!rep.cond1.pass || !rep.cond2_pass()) return Outcome{false, "spanning vector fails " + rep.first_failure()};
        if (!rep.cond3_pass()) return Outcome{false, "spanning vector fails " + rep.first_failure()};
      }
      return Outcome{true, std::to_string(ker.size()) + " spanning functions on " + std::to_string(c.box.size()) +
                               " weights"};
    }));
}

}  // namespace

bool CriterionResult::pass() const {
  if (cases.empty()) return false;
  for (const auto& c : cases)
    if (!c.pass) return false;
  return true;
}

std::size_t CriterionResult::skipped() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.skipped;
  return n;
}

std::string criterion_title(int id) {
  static const char* titles[kCriterionCount] = {"golden sl2 example",
                                                "Hom dimension table",
                                                "explicit dynamical formula",
                                                "soundness of trace functions",
                                                "dimension count",
                                                "round-trip decomposition",
                                                "injectivity of Res",
                                                "cocycle and involutivity",
                                                "Verma trace identity",
                                                "small-V reduction"};
  if (id < 1 || id > kCriterionCount) throw ConfigError("no acceptance criterion " + std::to_string(id));
  return titles[id - 1];
}

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  const auto t0 = std::chrono::steady_clock::now();
  switch (id) {
    case 1: golden_example(r); break;
    case 2: hom_table(r); break;
    case 3: explicit_formula(r); break;
    case 4: soundness(r); break;
    case 5: dimension_count(r); break;
    case 6: round_trip(r, opt); break;
    case 7: injectivity(r); break;
    case 8: cocycle(r); break;
    case 9: verma_traces(r, opt); break;
    case 10: small_v(r); break;
  }
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_suite(const std::vector<int>& ids, const SuiteOptions& opt) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= kCriterionCount; ++i) todo.push_back(i);
  for (int id : todo) criterion_title(id);
  std::vector<CriterionResult> out(todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < todo.size();) out[k] = run_criterion(todo[k], opt);
  };
  const int n = std::max(1, std::min<int>(opt.jobs, static_cast<int>(todo.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::string summary_line(const CriterionResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "[%s] %d %s (%zu cases%s, %.1f ms)", r.pass() ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.cases.size(), r.skipped() ? (", " + std::to_string(r.skipped()) + " skipped").c_str() : "", r.ms);
  return buf;
}

}  // namespace qchev
