#pragma once

#include "affine_domain.hpp"
#include "ir.hpp"
#include "poly_domain.hpp"
#include "simulator.hpp"

#include <optional>

namespace qpf::ps {

using poly::Angle;
using poly::BoolPoly;
using poly::PhasePoly;

// Balanced sum over paths: |x> -> 2^(-norm_exp/2) sum_y e^(i*pi*phase(x,y))
// |outputs(x,y)>. Variables are global ids; standalone sums use inputs
// 0..n_in-1 and allocate path variables from a caller counter.
struct PathSum {
  uint32_t n_in = 0, n_out = 0;
  int32_t norm_exp = 0;
  PhasePoly phase;
  std::vector<BoolPoly> outputs;
  std::vector<uint32_t> path_vars;  // ascending allocation order

  bool is_path_var(uint32_t v) const;
  bool output_mentions(uint32_t v) const;
  void drop_path_var(uint32_t v);
};

// Standard path sum of a single gate on input variables 0..arity-1.
// Uninterpreted gates have no path-sum representation.
PathSum of_gate(ir::GateKind kind, const Angle& angle, uint32_t& fresh);

// Substitutes a's outputs into b (b's inputs are 0..b.n_in-1); path
// variables of b are renamed fresh.
PathSum compose(const PathSum& a, const PathSum& b, uint32_t& fresh);

// Appends one gate to a sum under construction; `qubits` index outputs.
void apply_gate(PathSum& s, ir::GateKind kind, const Angle& angle,
                const std::vector<uint32_t>& qubits, uint32_t& fresh);

enum class Rule { E, H, Omega };

struct StepInfo {
  Rule rule;
  std::optional<BoolPoly> witness;  // (H): the constraint z + P
};

struct Strategy {
  int sub_degree_cap = -1;  // max deg of an (H) substitution; -1 unrestricted
  size_t max_steps = 100000;
  bool normalize_outputs = false;  // tail variable-change normalization
};

// Applies one rewrite rule if any matches: (E) first, then (H) picking the
// smallest substituted variable (ties: largest contracted variable), then
// (omega). Returns the applied rule or nullopt.
std::optional<StepInfo> rewrite_step(PathSum& s, const Strategy& strat);

// Every interference constraint P with some path variable y whose entire
// phase involvement is pi*y*lift(P) and which is absent from the outputs;
// includes instances with no solvable substitution variable.
std::vector<BoolPoly> harvest_constraints(const PathSum& s);

struct ReduceResult {
  std::vector<BoolPoly> constraints;  // all harvested along the way
  size_t steps = 0;
  bool budget_hit = false;
};

// Rewrites to a fixpoint, harvesting before every applied step and once at
// the end.
ReduceResult reduce(PathSum& s, const Strategy& strat);

// alpha: exists Y . <X' + f(X,Y)>, over standard two-vocabulary indices
// (pre i, post n+i). Requires inputs at 0..n-1.
dom::TransitionIdeal alpha_pol(const PathSum& s, const gb::Budget& budget = {});
// Affine abstraction: degree<=1 outputs become rows, higher-degree outputs
// are havocked; auxiliaries projected.
dom::KsElement alpha_affine(const PathSum& s);

// Brute-force operator of the sum (inputs 0..n-1, n <= 6, dyadic phases).
sim::DenseOp evaluate_dense(const PathSum& s);

}  // namespace qpf::ps
