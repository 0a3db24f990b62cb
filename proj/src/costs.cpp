#include "isc/costs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace isc {

StateControlCost to_state_control(const InitialStateCost& c) {
    StateControlCost out;
    const int n_aug = c.n_states * c.n_states;
    out.resize(n_aug, c.n_controls);
    for (int s = 0; s < n_aug; ++s) {
        for (int u = 0; u < c.n_controls; ++u) out.at(s, u) = c.aug_at(s, u);
    }
    return out;
}

double PwlcApprox::eval(std::span<const double> xi) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : planes) {
        double v = 0.0;
        for (size_t i = 0; i < g.size(); ++i) v += g[i] * xi[i];
        best = std::min(best, v);
    }
    return best;
}

int PwlcApprox::argmin_plane(std::span<const double> xi) const {
    int best_i = 0;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < planes.size(); ++i) {
        const auto& g = planes[i];
        double v = 0.0;
        for (size_t j = 0; j < g.size(); ++j) v += g[j] * xi[j];
        if (v < best) {
            best = v;
            best_i = static_cast<int>(i);
        }
    }
    return best_i;
}

double BeliefCost::eval(const AugmentedBelief& xi) const {
    switch (kind) {
        case BeliefCostKind::None:
            return 0.0;
        case BeliefCostKind::InitialEntropy:
            return weight * initial_entropy(xi);
        case BeliefCostKind::TangentSet:
            return tangents.eval(xi.p);
    }
    return 0.0;
}

double expected_state_cost(const StateControlCost& kappa, const Belief& belief, int u) {
    double sum = 0.0;
    for (int x = 0; x < kappa.n_states; ++x) sum += belief.p[x] * kappa.at(x, u);
    return sum;
}

double expected_aug_cost(const InitialStateCost& c, const AugmentedBelief& xi, int u) {
    const int n = c.n_states;
    double sum = 0.0;
    for (int s = 0; s < n * n; ++s) sum += xi.p[s] * c.aug_at(s, u);
    return sum;
}

double rho_bar(const InitialStateCost& c, const BeliefCost& psi, const AugmentedBelief& xi,
               int u) {
    return psi.eval(xi) + expected_aug_cost(c, xi, u);
}

std::vector<double> entropy_tangent(const AugmentedBelief& xi_base) {
    const int n = base_dim_of(xi_base);
    std::vector<double> m = marginal_initial(xi_base);
    std::vector<double> log_m(n);
    for (int x0 = 0; x0 < n; ++x0) log_m[x0] = std::log(std::max(m[x0], kMarginalFloor));
    std::vector<double> g(static_cast<size_t>(n) * n);
    for (int s = 0; s < n * n; ++s) g[s] = -log_m[s % n];
    return g;
}

PwlcApprox build_pwlc(const BeliefCost& psi, const std::vector<AugmentedBelief>& base_points) {
    if (psi.kind != BeliefCostKind::InitialEntropy) {
        throw InvalidSpec("build_pwlc requires an initial-entropy belief cost");
    }
    if (base_points.empty()) throw EmptyBasePoints("build_pwlc: no base points");
    PwlcApprox out;
    out.base_points = base_points;
    out.planes.reserve(base_points.size());
    for (const auto& b : base_points) {
        std::vector<double> g = entropy_tangent(b);
        for (double& v : g) v *= psi.weight;
        out.planes.push_back(std::move(g));
    }
    return out;
}

}  // namespace isc
