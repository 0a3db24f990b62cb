#include "isc/augmented.hpp"

#include <cmath>
#include <string>

namespace isc {

int lin_index(int x0, int xk, int n_base) {
    if (x0 < 1 || x0 > n_base || xk < 1 || xk > n_base) {
        throw OutOfRange("lin_index: pair (" + std::to_string(x0) + "," + std::to_string(xk) +
                         ") outside {1.." + std::to_string(n_base) + "}^2");
    }
    return x0 + n_base * (xk - 1);
}

std::pair<int, int> inv_index(int s, int n_base) {
    if (s < 1 || s > n_base * n_base) {
        throw OutOfRange("inv_index: s=" + std::to_string(s) + " outside {1.." +
                         std::to_string(n_base * n_base) + "}");
    }
    const int x0 = s - n_base * ((s - 1) / n_base);
    const int xk = (s - x0) / n_base + 1;
    return {x0, xk};
}

AugmentedModel::AugmentedModel(TabularModel base) : base_(std::move(base)) {
    idx_.n_base = base_.n_states;
    xi0_.p.assign(idx_.n_aug(), 0.0);
    for (int x = 0; x < idx_.n_base; ++x) {
        xi0_.p[idx_.flat(x, x)] = base_.initial_belief[x];
    }
}

TabularModel AugmentedModel::to_tabular() const {
    TabularModel dense;
    dense.n_states = n_aug_states();
    dense.n_controls = base_.n_controls;
    dense.n_obs = base_.n_obs;
    dense.discount = base_.discount;
    dense.resize_tables();
    dense.initial_belief = xi0_.p;
    for (int u = 0; u < dense.n_controls; ++u) {
        for (int s_from = 0; s_from < dense.n_states; ++s_from) {
            for (int s_to = 0; s_to < dense.n_states; ++s_to) {
                dense.trans(u, s_from, s_to) = aug_transition(u, s_from, s_to);
            }
            for (int y = 0; y < dense.n_obs; ++y) {
                dense.obs(u, s_from, y) = aug_observation(u, s_from, y);
            }
        }
    }
    return dense;
}

AugmentedModel augment(const TabularModel& model) { return AugmentedModel(model); }

void aug_predict_into(const AugmentedModel& aug, std::span<const double> xi, int u,
                      std::span<double> out) {
    const TabularModel& base = aug.base();
    const int n = base.n_states;
    for (int s = 0; s < n * n; ++s) out[s] = 0.0;
    // Each initial-state block evolves by the base transition independently.
    const double* table = &base.transition[static_cast<size_t>(u) * n * n];
    for (int from = 0; from < n; ++from) {
        const double* row = table + static_cast<size_t>(from) * n;
        for (int x0 = 0; x0 < n; ++x0) {
            const double w = xi[x0 + n * from];
            if (w == 0.0) continue;
            for (int to = 0; to < n; ++to) out[x0 + n * to] += w * row[to];
        }
    }
}

AugmentedBelief smoother_update(const AugmentedModel& aug, const AugmentedBelief& xi, int u,
                                int y) {
    const TabularModel& base = aug.base();
    const int n = base.n_states;
    AugmentedBelief next;
    next.p.resize(n * n);
    aug_predict_into(aug, xi.p, u, next.p);
    double norm = 0.0;
    for (int xk = 0; xk < n; ++xk) {
        const double lik = base.obs(u, xk, y);
        for (int x0 = 0; x0 < n; ++x0) {
            double& v = next.p[x0 + n * xk];
            v *= lik;
            norm += v;
        }
    }
    if (norm < kNormalizerFloor) {
        throw ImpossibleObservation("smoother update: observation " + std::to_string(y + 1) +
                                    " has zero predicted probability");
    }
    for (double& v : next.p) v /= norm;
    return next;
}

double aug_obs_likelihood(const AugmentedModel& aug, const AugmentedBelief& xi, int u, int y) {
    const TabularModel& base = aug.base();
    const int n = base.n_states;
    std::vector<double> pred(n * n);
    aug_predict_into(aug, xi.p, u, pred);
    double sum = 0.0;
    for (int xk = 0; xk < n; ++xk) {
        const double lik = base.obs(u, xk, y);
        for (int x0 = 0; x0 < n; ++x0) sum += lik * pred[x0 + n * xk];
    }
    return sum;
}

int base_dim_of(const AugmentedBelief& xi) {
    const int n_aug = xi.size();
    int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_aug))));
    if (n * n != n_aug) {
        throw DimensionMismatch("augmented belief length " + std::to_string(n_aug) +
                                " is not a perfect square");
    }
    return n;
}

std::vector<double> marginal_initial(const AugmentedBelief& xi) {
    const int n = base_dim_of(xi);
    std::vector<double> m(n, 0.0);
    for (int xk = 0; xk < n; ++xk) {
        for (int x0 = 0; x0 < n; ++x0) m[x0] += xi.p[x0 + n * xk];
    }
    return m;
}

std::vector<double> marginal_current(const AugmentedBelief& xi) {
    const int n = base_dim_of(xi);
    std::vector<double> m(n, 0.0);
    for (int xk = 0; xk < n; ++xk) {
        for (int x0 = 0; x0 < n; ++x0) m[xk] += xi.p[x0 + n * xk];
    }
    return m;
}

double initial_entropy(const AugmentedBelief& xi) {
    double h = 0.0;
    for (double v : marginal_initial(xi)) {
        if (v > 0.0) h -= v * std::log(v);
    }
    return h;
}

}  // namespace isc
