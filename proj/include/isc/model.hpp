#pragma once

#include <span>
#include <string>
#include <vector>

#include "isc/errors.hpp"

namespace isc {

// Row sums of probability tables must match 1 within this tolerance.
inline constexpr double kProbTol = 1e-9;
// Normalizers below this threshold are treated as structurally impossible
// observations rather than float underflow.
inline constexpr double kNormalizerFloor = 1e-300;

// Probability vector over the base state space.
struct Belief {
    std::vector<double> p;

    int size() const { return static_cast<int>(p.size()); }
};

// Finite POMDP with tabular probabilities.
//
// Transition rows are stored in (control, from, to) order, so each from-row is
// a stochastic row; prediction iterates from-rows directly. Observation rows
// are (control, state, obs). All indices are 0-based in code; file formats and
// log messages use 1-based ids.
struct TabularModel {
    int n_states = 0;
    int n_controls = 0;
    int n_obs = 0;
    double discount = 0.95;
    std::vector<double> initial_belief;  // [x]
    std::vector<double> transition;      // [u][from][to]
    std::vector<double> observation;     // [u][x][y]

    void resize_tables() {
        initial_belief.assign(n_states, 0.0);
        transition.assign(static_cast<size_t>(n_controls) * n_states * n_states, 0.0);
        observation.assign(static_cast<size_t>(n_controls) * n_states * n_obs, 0.0);
    }

    double trans(int u, int from, int to) const {
        return transition[(static_cast<size_t>(u) * n_states + from) * n_states + to];
    }
    double& trans(int u, int from, int to) {
        return transition[(static_cast<size_t>(u) * n_states + from) * n_states + to];
    }
    double obs(int u, int x, int y) const {
        return observation[(static_cast<size_t>(u) * n_states + x) * n_obs + y];
    }
    double& obs(int u, int x, int y) {
        return observation[(static_cast<size_t>(u) * n_states + x) * n_obs + y];
    }

    Belief initial() const { return Belief{initial_belief}; }
};

struct ValidationReport {
    std::vector<std::string> issues;

    bool ok() const { return issues.empty(); }
};

// Checks stochasticity and sign constraints on every table row. Failures are
// reported with 1-based indices; an empty report means the model is valid.
ValidationReport validate_model(const TabularModel& model);

// Predicted state distribution after control u: out(x) = sum_from A(u,from,x) b(from).
void predict_into(const TabularModel& model, std::span<const double> belief, int u,
                  std::span<double> out);

// p(y | belief, u): the normalizer of the filter update.
double obs_likelihood(const TabularModel& model, const Belief& belief, int u, int y);

// One Bayesian filter step. Throws ImpossibleObservation when the normalizer
// underflows kNormalizerFloor.
Belief filter_update(const TabularModel& model, const Belief& belief, int u, int y);

bool is_distribution(std::span<const double> p, double tol = kProbTol);

}  // namespace isc
