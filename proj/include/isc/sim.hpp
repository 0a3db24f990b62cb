#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "isc/augmented.hpp"
#include "isc/gridworld.hpp"
#include "isc/solver.hpp"

namespace isc {

enum class ArmKind { Augmented, Base };

ArmKind arm_from_string(const std::string& s);  // "augmented" | "base"
const char* arm_to_string(ArmKind a);

struct RunConfig {
    ArmKind arm = ArmKind::Augmented;
    int horizon = 10;
    int num_runs = 10000;
    std::uint64_t rng_seed = 0;
    int n_workers = 1;
};

// One simulated episode. Whatever policy produced the controls, step costs and
// discounted_cost are always evaluated under the experiment's initial-state cost.
// The base arm selects actions from the filter belief but tracks a shadow
// augmented belief so both arms report identical uncertainty metrics.
struct TrajectoryRecord {
    int true_x0 = 0;                 // 1-based
    std::vector<int> states;         // x_0..x_T, 1-based
    std::vector<int> controls;       // u_0..u_{T-1}, 1-based
    std::vector<int> observations;   // y_1..y_T, 1-based
    std::vector<double> step_costs;  // c(x0, x_k, u_k)
    double discounted_cost = 0.0;
    std::vector<double> final_pi;  // base arm only
    AugmentedBelief final_xi;
    std::vector<double> entropy_curve;  // initial_entropy(xi_k), k = 0..T
    std::vector<double> prob_curve;     // marginal_initial(xi_k)(true_x0), k = 0..T
};

struct MetricsSummary {
    int num_runs = 0;
    int horizon = 0;
    double discount = 0.0;
    double avg_discounted_cost = 0.0;
    double se_discounted_cost = 0.0;
    long goals_reached = 0;
    double avg_final_initial_entropy = 0.0;
    double avg_final_prob_true_x0 = 0.0;
    std::vector<double> entropy_curve;  // per-step means, length horizon+1
    std::vector<double> prob_curve;
};

TrajectoryRecord simulate_run(const GridExperiment& exp, const AlphaPolicy& policy,
                              ArmKind arm, int T, std::mt19937_64& rng);

// Terminal occupancy: x_T equals the quadrant goal of the true initial state.
bool goal_reached(const TrajectoryRecord& rec, const GridExperiment& exp);

// Independent runs with per-run seeds derived from (rng_seed, run index), so the
// result is identical for any worker count and arms can share environments.
MetricsSummary monte_carlo(const GridExperiment& exp, const AlphaPolicy& policy,
                           const RunConfig& cfg,
                           std::vector<TrajectoryRecord>* records_out = nullptr);

// Persisted per-run rows plus provenance for later comparison.
struct RunsFile {
    std::string arm;
    std::uint64_t seed = 0;
    int horizon = 0;
    int num_runs = 0;
    double discount = 0.0;
    std::uint64_t model_hash = 0;
    std::uint64_t policy_hash = 0;
    MetricsSummary summary;
    struct Row {
        int run = 0;  // 1-based
        int true_x0 = 0;
        double discounted_cost = 0.0;
        int goal = 0;
        double final_entropy = 0.0;
        double final_prob = 0.0;
    };
    std::vector<Row> rows;
};

RunsFile make_runs_file(const MetricsSummary& summary,
                        const std::vector<TrajectoryRecord>& records,
                        const GridExperiment& exp, const RunConfig& cfg,
                        std::uint64_t model_hash, std::uint64_t policy_hash);
void save_runs(const RunsFile& rf, const std::string& path);
RunsFile load_runs(const std::string& path);

void save_trajectories(const std::vector<TrajectoryRecord>& records, const std::string& path);

// Comparison table at table_path plus <stem>-entropy.csv and <stem>-prob.csv.
// Arms must share model hash, horizon, and discount.
void write_report(const RunsFile& isc_arm, const RunsFile& base_arm,
                  const std::string& table_path);

}  // namespace isc
