#pragma once

#include <utility>
#include <vector>

#include "isc/model.hpp"

namespace isc {

// Linear index of the pair (initial state x0, current state xk) over an
// n_base-state space. x0, xk and the result are all 1-based here; this is the
// externally visible numbering used in files and logs.
int lin_index(int x0, int xk, int n_base);

// Inverse of lin_index (1-based).
std::pair<int, int> inv_index(int s, int n_base);

// Bijection between base-state pairs and augmented states. The 0-based flat
// form (initial coordinate varying fastest) is what the library uses
// internally; lin/inv expose the 1-based contract.
struct PairIndex {
    int n_base = 0;

    int n_aug() const { return n_base * n_base; }
    int lin(int x0, int xk) const { return lin_index(x0, xk, n_base); }
    std::pair<int, int> inv(int s) const { return inv_index(s, n_base); }

    int flat(int x0, int xk) const { return x0 + n_base * xk; }  // 0-based
    int initial_of(int s) const { return s % n_base; }           // 0-based
    int current_of(int s) const { return s / n_base; }           // 0-based
};

// Probability vector over augmented states (x0, xk).
struct AugmentedBelief {
    std::vector<double> p;

    int size() const { return static_cast<int>(p.size()); }
};

// POMDP over augmented states (x0, xk). Transitions are block-diagonal in the
// initial-state coordinate and observations depend only on the current
// coordinate, so both are kept as re-indexing views over the base tables —
// nothing of size n_aug x n_aug is ever materialized.
class AugmentedModel {
  public:
    explicit AugmentedModel(TabularModel base);

    const TabularModel& base() const { return base_; }
    const PairIndex& index() const { return idx_; }
    int n_aug_states() const { return idx_.n_aug(); }
    int n_controls() const { return base_.n_controls; }
    int n_obs() const { return base_.n_obs; }
    double discount() const { return base_.discount; }

    double aug_transition(int u, int s_from, int s_to) const {
        if (idx_.initial_of(s_from) != idx_.initial_of(s_to)) return 0.0;
        return base_.trans(u, idx_.current_of(s_from), idx_.current_of(s_to));
    }
    double aug_observation(int u, int s, int y) const {
        return base_.obs(u, idx_.current_of(s), y);
    }
    const AugmentedBelief& aug_initial() const { return xi0_; }

    // Dense materialization as an ordinary TabularModel. O(n_aug^2) storage;
    // meant for differential tests and small oracles only.
    TabularModel to_tabular() const;

  private:
    TabularModel base_;
    PairIndex idx_;
    AugmentedBelief xi0_;
};

AugmentedModel augment(const TabularModel& model);

// Block-sparse prediction: out(s) = sum_sbar Abar(u, sbar -> s) xi(sbar).
void aug_predict_into(const AugmentedModel& aug, std::span<const double> xi, int u,
                      std::span<double> out);

// One step of the recursive fixed-point smoother for the initial state.
// Throws ImpossibleObservation when the normalizer underflows.
AugmentedBelief smoother_update(const AugmentedModel& aug, const AugmentedBelief& xi, int u, int y);

// p(y | xi, u) for the augmented belief.
double aug_obs_likelihood(const AugmentedModel& aug, const AugmentedBelief& xi, int u, int y);

// Posterior over the initial state: m(x0) = sum_xk xi(x0, xk).
std::vector<double> marginal_initial(const AugmentedBelief& xi);

// Posterior over the current state: sum over x0.
std::vector<double> marginal_current(const AugmentedBelief& xi);

// Shannon entropy (nats) of the initial-state marginal, with 0 log 0 = 0.
double initial_entropy(const AugmentedBelief& xi);

// Base dimension n_base with n_base^2 == xi.size(); throws DimensionMismatch
// when the length is not a perfect square.
int base_dim_of(const AugmentedBelief& xi);

}  // namespace isc
