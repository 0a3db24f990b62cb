#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "isc/augmented.hpp"
#include "isc/costs.hpp"
#include "isc/errors.hpp"
#include "isc/model.hpp"

namespace isc {

struct AlphaVector {
    std::vector<double> values;
    int action = 0;
};

// Lower envelope of alpha vectors: value(xi) = min_a <a.values, xi>.
// Concave by construction. Ties resolve to the lowest alpha index.
struct AlphaPolicy {
    std::vector<AlphaVector> alphas;
    int n_states = 0;    // belief dimension the alphas live over
    int n_controls = 0;
    double discount = 0.0;

    double value(std::span<const double> xi) const;
    int argmin_alpha(std::span<const double> xi) const;
    int action(std::span<const double> xi) const { return alphas[argmin_alpha(xi)].action; }
};

struct SolveParams {
    double time_budget = 300.0;  // seconds; anytime cap, not the convergence criterion
    int max_belief_points = 200;
    double epsilon = 1e-3;  // max value change at tracked points
    std::uint64_t rng_seed = 0;
    int horizon_bound = 30;  // exploration trajectory depth
};

// Point-based Bellman backup at xi against the current envelope. psi_hat may be
// null (no belief cost). The returned alpha satisfies <alpha, xi> = the backed-up
// value at xi and upper-bounds the same one-step policy's cost elsewhere.
AlphaVector backup(const AugmentedModel& aug, const InitialStateCost& c,
                   const PwlcApprox* psi_hat, const AlphaPolicy& alphas,
                   const AugmentedBelief& xi);

// Anytime point-based value iteration on the augmented belief MDP. Alternating
// belief expansion (random explore / greedy explore) with backup sweeps to
// epsilon-convergence; deterministic given params.rng_seed. Throws BudgetTooSmall
// if no complete sweep fits in time_budget.
AlphaPolicy solve_point_based(const AugmentedModel& aug, const InitialStateCost& c,
                              const BeliefCost& psi, const SolveParams& params);

// Same iteration on a plain belief MDP with a current-state cost (baseline arm).
AlphaPolicy solve_point_based(const TabularModel& model, const StateControlCost& kappa,
                              const SolveParams& params);

// Exact optimal discounted cost over `horizon` steps by full belief-tree
// expansion with exact psi. Memoizes on quantized beliefs; throws TreeTooLarge
// past node_cap expanded nodes.
double solve_exact_finite_horizon(const AugmentedModel& aug, const InitialStateCost& c,
                                  const BeliefCost& psi, const AugmentedBelief& xi, int horizon,
                                  std::int64_t node_cap = 10'000'000);

// One-step lookahead argmin using policy.value for the continuation; ties to the
// lowest control index.
int policy_action(const AlphaPolicy& policy, const AugmentedModel& aug,
                  const InitialStateCost& c, const BeliefCost& psi, const AugmentedBelief& xi);
int policy_action(const AlphaPolicy& policy, const TabularModel& model,
                  const StateControlCost& kappa, const Belief& belief);

// Remove alphas that are pointwise >= another alpha; envelope values unchanged.
std::vector<AlphaVector> prune_dominated(std::vector<AlphaVector> alphas);

}  // namespace isc
