#pragma once

// Trace functions, the three membership conditions, and the inductive
// decomposition of condition-satisfying functions into traces.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qchev/dynamical.hpp"
#include "qchev/errors.hpp"
#include "qchev/intertwiner.hpp"
#include "qchev/torus.hpp"

namespace qchev {

/// x ↦ Tr_{L_μ}(Φ ∘ x) as an element of O(H) ⊗ V.
TorusFunction res_trace(const Intertwiner& phi);

/// Memoizes, per μ, the traces of the canonical admissible basis; other
/// traces follow by linearity. Safe to share across threads.
class TraceFactory {
 public:
  struct Entry {
    ContextPtr ctx;
    std::vector<SVector> basis;  // canonical echelon rows
    std::vector<std::size_t> pivots;
    std::vector<TorusFunction> traces;
  };

  explicit TraceFactory(ModulePtr V) : V_(std::move(V)) {}
  const ModulePtr& module() const { return V_; }
  std::shared_ptr<const Entry> entry(const Weight& mu);
  /// Res of the intertwiner with expectation value v (V[0] coordinates).
  /// Throws NoIntertwiner if v is not admissible at μ.
  TorusFunction trace(const Weight& mu, const SVector& v);

 private:
  ModulePtr V_;
  std::mutex mu_;
  std::map<Weight, std::shared_ptr<const Entry>> entries_;
};

/// One trace function per canonical admissible expectation value at μ.
struct GeneratedTrace {
  Weight mu;
  SVector v;
  TorusFunction f;
};
std::vector<GeneratedTrace> generate_traces(TraceFactory& tf, const Weight& mu);

struct Cond1Result {
  bool pass = true;
  std::vector<Weight> offending;
};
struct Cond2Result {
  int i = 0;
  bool pass = true;
  /// First weight of the residual den·(s_i f) − num·f, and its V[0] coefficient.
  std::optional<Weight> witness;
  SVector residual;
};
struct Cond3Result {
  int i = 0;
  int n = 0;
  bool pass = true;
  std::optional<NotDivisible> witness;
};
struct ConditionReport {
  Cond1Result cond1;
  std::vector<Cond2Result> cond2;
  std::vector<Cond3Result> cond3;
  bool cond2_pass() const;
  bool cond3_pass() const;
  bool all_pass() const { return cond1.pass && cond2_pass() && cond3_pass(); }
  /// Empty when everything passes.
  std::string first_failure() const;
};

/// Condition 2 is checked on the V[0] part of f when condition 1 fails.
ConditionReport check_conditions(const TorusFunction& f);

class ConditionFailure : public Error {
 public:
  explicit ConditionFailure(ConditionReport r) : Error("input fails " + r.first_failure()), report(std::move(r)) {}
  ConditionReport report;
};

struct DecompositionTerm {
  Weight mu;
  SVector v;  // V[0] coordinates
};
struct Decomposition {
  std::vector<DecompositionTerm> terms;
};

/// Throws ConditionFailure if check_conditions fails and TheoremViolation if
/// an internal invariant breaks. The reconstruction is verified before return.
Decomposition decompose(const TorusFunction& f, TraceFactory& tf);
Decomposition decompose(const TorusFunction& f);
TorusFunction reconstruct(const Decomposition& d, TraceFactory& tf);

struct StringPiece {
  Weight coset_rep;
  TorusFunction f;  // over restrict_sl2(V, i)
};
std::vector<StringPiece> string_restriction(const TorusFunction& f, int i);

/// Rank-one Verma traces: coefficients of e^{ν−kα} for k = 0..depth in the
/// trace of the Verma intertwiner M_ν → M_ν ⊗ V with expectation u.
std::vector<SVector> verma_trace_series(const ModulePtr& V, int nu, const SVector& u, int depth);

struct VermaIdentityResult {
  bool skipped = false;
  std::string reason;
  std::vector<SVector> lhs, rhs;  // indexed by k, weight μ − kα
  bool zero() const { return !skipped && lhs == rhs; }
};
/// Σ_w (−1)^w Ψ^{A_w(μ)v}(·, w·μ) against Ψ^v_μ in rank one, through depth.
VermaIdentityResult verma_identity_residual(TraceFactory& tf, int mu, const SVector& v, int depth);

/// Linear conditions on f = Σ_{ν ∈ box, j} a_{ν,j} e^ν b_j with b_j the
/// V[0] basis; unknown index = position of ν in box × dim V[0] + j.
SMatrix condition_constraints(const WeightModule& V, const std::vector<Weight>& box, bool with_cond3);
TorusFunction function_from_unknowns(const ModulePtr& V, const std::vector<Weight>& box, const SVector& a);
/// Sorted union of W-orbits of the dominant weights with coordinates ≤ k.
std::vector<Weight> w_stable_box(const CartanDatum& dat, int k);

}  // namespace qchev
