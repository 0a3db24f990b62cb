#pragma once

#include <span>
#include <vector>

#include "isc/augmented.hpp"
#include "isc/errors.hpp"
#include "isc/model.hpp"

namespace isc {

// Marginal components below this are clamped before logs so tangent planes stay
// finite. Clamping only raises the plane, preserving the upper-bound contract.
inline constexpr double kMarginalFloor = 1e-12;

// Stage cost on the current state, kappa(x, u).
struct StateControlCost {
    int n_states = 0;
    int n_controls = 0;
    std::vector<double> table;  // [x][u]

    void resize(int ns, int nu) {
        n_states = ns;
        n_controls = nu;
        table.assign(static_cast<size_t>(ns) * nu, 0.0);
    }
    double& at(int x, int u) { return table[static_cast<size_t>(x) * n_controls + u]; }
    double at(int x, int u) const { return table[static_cast<size_t>(x) * n_controls + u]; }
};

// Stage cost that also depends on the realized initial state, c(x0, x, u).
// aug_at re-indexes over pair states so aug_at(flat(x0,x), u) == at(x0, x, u).
struct InitialStateCost {
    int n_states = 0;  // base state count, shared by the x0 and x axes
    int n_controls = 0;
    std::vector<double> table;  // [x0][x][u]

    void resize(int ns, int nu) {
        n_states = ns;
        n_controls = nu;
        table.assign(static_cast<size_t>(ns) * ns * nu, 0.0);
    }
    double& at(int x0, int x, int u) {
        return table[(static_cast<size_t>(x0) * n_states + x) * n_controls + u];
    }
    double at(int x0, int x, int u) const {
        return table[(static_cast<size_t>(x0) * n_states + x) * n_controls + u];
    }
    double aug_at(int s, int u) const { return at(s % n_states, s / n_states, u); }
};

// Dense per-(pair state, control) view of an InitialStateCost.
StateControlCost to_state_control(const InitialStateCost& c);

// Upper PWLC approximation of a concave belief functional: minimum over a
// family of planes, each tangent at one of base_points.
struct PwlcApprox {
    std::vector<std::vector<double>> planes;
    std::vector<AugmentedBelief> base_points;

    double eval(std::span<const double> xi) const;
    // Index of a minimizing plane; lowest index on ties.
    int argmin_plane(std::span<const double> xi) const;
};

enum class BeliefCostKind { None, InitialEntropy, TangentSet };

// Belief-dependent cost term. InitialEntropy evaluates exactly as
// weight * H(marginal_initial(xi)); TangentSet evaluates its plane envelope.
struct BeliefCost {
    BeliefCostKind kind = BeliefCostKind::None;
    double weight = 0.0;
    PwlcApprox tangents;

    static BeliefCost none() { return {}; }
    static BeliefCost make_initial_entropy(double w) {
        BeliefCost b;
        b.kind = BeliefCostKind::InitialEntropy;
        b.weight = w;
        return b;
    }
    static BeliefCost make_tangent_set(PwlcApprox approx) {
        BeliefCost b;
        b.kind = BeliefCostKind::TangentSet;
        b.tangents = std::move(approx);
        return b;
    }
    double eval(const AugmentedBelief& xi) const;
};

// Sum_x pi(x) * kappa(x, u).
double expected_state_cost(const StateControlCost& kappa, const Belief& belief, int u);

// Sum_s xi(s) * c(s, u) over pair states.
double expected_aug_cost(const InitialStateCost& c, const AugmentedBelief& xi, int u);

// psi(xi) + Sum_s xi(s) * c(s, u).
double rho_bar(const InitialStateCost& c, const BeliefCost& psi, const AugmentedBelief& xi,
               int u);

// Unweighted entropy tangent at xi_base: g(s) = -log m(x0(s)) with m the
// initial-state marginal, components clamped at kMarginalFloor.
// <g, xi> >= initial_entropy(xi) for all xi, with equality at xi_base.
std::vector<double> entropy_tangent(const AugmentedBelief& xi_base);

// One weight-scaled tangent plane per base point. psi must be InitialEntropy.
PwlcApprox build_pwlc(const BeliefCost& psi, const std::vector<AugmentedBelief>& base_points);

}  // namespace isc
