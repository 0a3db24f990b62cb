#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isc/augmented.hpp"
#include "isc/costs.hpp"
#include "isc/errors.hpp"
#include "isc/gridworld.hpp"
#include "isc/io.hpp"
#include "isc/model.hpp"
#include "isc/sim.hpp"
#include "isc/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

int usage_fail(const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return kExitUsage;
}

isc::TabularModel load_validated_model(const std::string& path) {
    isc::TabularModel m = isc::io::load_model(path);
    const isc::ValidationReport rep = isc::validate_model(m);
    if (!rep.ok()) {
        for (const auto& issue : rep.issues) std::fprintf(stderr, "%s: %s\n", path.c_str(), issue.c_str());
        throw isc::InvalidSpec("model failed validation: " + path);
    }
    return m;
}

isc::BeliefCost parse_psi(const std::string& text) {
    const std::string prefix = "entropy:";
    if (text.rfind(prefix, 0) != 0) {
        throw isc::ParseError("--psi expects entropy:<weight>, got '" + text + "'");
    }
    char* end = nullptr;
    const double w = std::strtod(text.c_str() + prefix.size(), &end);
    if (end == nullptr || *end != '\0' || !(w >= 0.0)) {
        throw isc::ParseError("--psi weight must be a non-negative number in '" + text + "'");
    }
    return isc::BeliefCost::make_initial_entropy(w);
}

int run_build_grid(const std::string& config, const std::string& out,
                   const std::string& isc_cost_out, const std::string& kappa_out) {
    isc::GridSpec spec = isc::normalize_spec(isc::io::load_grid_spec(config));
    const isc::TabularModel model = isc::build_grid_model(spec);
    isc::io::save_model(model, out);
    std::printf("built %dx%d grid '%s': %d states, %d controls, %d observations -> %s\n",
                spec.rows, spec.cols, spec.layout_name.c_str(), model.n_states,
                model.n_controls, model.n_obs, out.c_str());
    if (!isc_cost_out.empty()) {
        isc::io::save_initial_cost(isc::build_isc_cost(spec), isc_cost_out);
        std::printf("wrote initial-state cost -> %s\n", isc_cost_out.c_str());
    }
    if (!kappa_out.empty()) {
        isc::io::save_state_cost(isc::build_baseline_cost(spec), kappa_out);
        std::printf("wrote state-control cost -> %s\n", kappa_out.c_str());
    }
    return kExitOk;
}

int run_solve(const std::string& model_path, const std::string& isc_cost_path,
              const std::string& kappa_path, const std::string& psi_text, double discount,
              const isc::SolveParams& params, const std::string& out) {
    if (isc_cost_path.empty() == kappa_path.empty()) {
        return usage_fail("solve requires exactly one of --isc-cost or --kappa");
    }
    if (!psi_text.empty() && isc_cost_path.empty()) {
        return usage_fail("--psi applies to the augmented formulation; pass --isc-cost");
    }
    if (!(discount > 0.0 && discount < 1.0)) {
        return usage_fail("--discount must lie in (0,1)");
    }
    isc::TabularModel model = load_validated_model(model_path);
    model.discount = discount;
    isc::AlphaPolicy policy;
    if (!isc_cost_path.empty()) {
        const isc::InitialStateCost c = isc::io::load_initial_cost(isc_cost_path);
        const isc::BeliefCost psi =
            psi_text.empty() ? isc::BeliefCost::none() : parse_psi(psi_text);
        const isc::AugmentedModel aug = isc::augment(model);
        policy = isc::solve_point_based(aug, c, psi, params);
        isc::io::save_policy(policy, params, out);
        std::printf("solved augmented model (%d pair states): %zu alpha vectors, value at prior %.6f -> %s\n",
                    policy.n_states, policy.alphas.size(),
                    policy.value(aug.aug_initial().p), out.c_str());
    } else {
        const isc::StateControlCost kappa = isc::io::load_state_cost(kappa_path);
        policy = isc::solve_point_based(model, kappa, params);
        isc::io::save_policy(policy, params, out);
        std::printf("solved base model (%d states): %zu alpha vectors, value at prior %.6f -> %s\n",
                    policy.n_states, policy.alphas.size(), policy.value(model.initial_belief),
                    out.c_str());
    }
    return kExitOk;
}

int run_simulate(const std::string& model_path, const std::string& policy_path,
                 const std::string& arm_text, int horizon, int runs, std::uint64_t seed,
                 int workers, const std::string& isc_cost_path, const std::string& kappa_path,
                 const std::string& out, const std::string& traj_out) {
    isc::TabularModel model = load_validated_model(model_path);
    const isc::io::LoadedPolicy lp = isc::io::load_policy(policy_path);
    model.discount = lp.policy.discount;

    isc::GridExperiment exp;
    exp.model = model;
    const bool standard_grid =
        model.n_states == 16 && model.n_controls == 5 && model.n_obs == 16;
    isc::GridSpec spec4;  // costs and goals depend only on the 4x4 quadrant rule
    if (!isc_cost_path.empty()) {
        exp.isc_cost = isc::io::load_initial_cost(isc_cost_path);
    } else if (standard_grid) {
        exp.isc_cost = isc::build_isc_cost(spec4);
    } else {
        return usage_fail("this model is not the standard 4x4 grid; pass --isc-cost");
    }
    if (!kappa_path.empty()) {
        exp.baseline_cost = isc::io::load_state_cost(kappa_path);
    } else if (standard_grid) {
        exp.baseline_cost = isc::build_baseline_cost(spec4);
    } else if (arm_text == "base") {
        return usage_fail("this model is not the standard 4x4 grid; pass --kappa");
    }
    if (exp.isc_cost.n_states != model.n_states || exp.isc_cost.n_controls != model.n_controls) {
        throw isc::DimensionMismatch("initial-state cost does not match the model");
    }
    if (exp.baseline_cost.n_states > 0 &&
        (exp.baseline_cost.n_states != model.n_states ||
         exp.baseline_cost.n_controls != model.n_controls)) {
        throw isc::DimensionMismatch("state-control cost does not match the model");
    }
    // Goal of x0 = its cheapest current state under the evaluation cost.
    exp.goal_map.assign(model.n_states + 1, 0);
    for (int x0 = 0; x0 < model.n_states; ++x0) {
        int best = 0;
        double bv = 0.0;
        for (int x = 0; x < model.n_states; ++x) {
            double tot = 0.0;
            for (int u = 0; u < model.n_controls; ++u) tot += exp.isc_cost.at(x0, x, u);
            if (x == 0 || tot < bv) {
                bv = tot;
                best = x;
            }
        }
        exp.goal_map[x0 + 1] = best + 1;
    }

    isc::RunConfig cfg;
    cfg.arm = isc::arm_from_string(arm_text);
    cfg.horizon = horizon;
    cfg.num_runs = runs;
    cfg.rng_seed = seed;
    cfg.n_workers = workers;
    std::vector<isc::TrajectoryRecord> records;
    const isc::MetricsSummary summary = isc::monte_carlo(exp, lp.policy, cfg, &records);
    const isc::RunsFile rf =
        isc::make_runs_file(summary, records, exp, cfg, isc::io::fnv1a_file(model_path),
                            isc::io::fnv1a_file(policy_path));
    isc::save_runs(rf, out);
    if (!traj_out.empty()) isc::save_trajectories(records, traj_out);
    std::printf("%s arm, %d runs x T=%d: avg cost %.4f (se %.4f), goals %ld, "
                "final entropy %.4f, final prob %.4f -> %s\n",
                isc::arm_to_string(cfg.arm), runs, horizon, summary.avg_discounted_cost,
                summary.se_discounted_cost, summary.goals_reached,
                summary.avg_final_initial_entropy, summary.avg_final_prob_true_x0,
                out.c_str());
    return kExitOk;
}

int run_report(const std::string& isc_path, const std::string& base_path,
               const std::string& out) {
    const isc::RunsFile a = isc::load_runs(isc_path);
    const isc::RunsFile b = isc::load_runs(base_path);
    isc::write_report(a, b, out);
    std::printf("cost %.4f vs %.4f, goals %ld vs %ld, entropy %.4f vs %.4f, prob %.4f vs %.4f -> %s\n",
                a.summary.avg_discounted_cost, b.summary.avg_discounted_cost,
                a.summary.goals_reached, b.summary.goals_reached,
                a.summary.avg_final_initial_entropy, b.summary.avg_final_initial_entropy,
                a.summary.avg_final_prob_true_x0, b.summary.avg_final_prob_true_x0,
                out.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"initial-state-conditioned POMDP toolkit"};
    app.require_subcommand(1);

    auto* bg = app.add_subcommand("build-grid", "build a grid POMDP model from a config");
    std::string bg_config, bg_out, bg_isc_out, bg_kappa_out;
    bg->add_option("--config", bg_config, "grid config file")->required();
    bg->add_option("--out", bg_out, "model file to write")->required();
    bg->add_option("--isc-cost-out", bg_isc_out, "also write the quadrant initial-state cost");
    bg->add_option("--kappa-out", bg_kappa_out, "also write the corner state-control cost");

    auto* sv = app.add_subcommand("solve", "solve a model by point-based value iteration");
    std::string sv_model, sv_isc, sv_kappa, sv_psi, sv_out;
    double sv_discount = 0.95;
    isc::SolveParams sv_params;
    sv->add_option("--model", sv_model, "model file")->required();
    sv->add_option("--isc-cost", sv_isc, "initial-state cost file (augmented formulation)");
    sv->add_option("--kappa", sv_kappa, "state-control cost file (plain formulation)");
    sv->add_option("--psi", sv_psi, "belief cost, entropy:<weight>");
    sv->add_option("--discount", sv_discount, "discount factor in (0,1)");
    sv->add_option("--time-budget", sv_params.time_budget, "solver budget in seconds");
    sv->add_option("--seed", sv_params.rng_seed, "solver rng seed");
    sv->add_option("--epsilon", sv_params.epsilon, "convergence threshold");
    sv->add_option("--max-points", sv_params.max_belief_points, "belief point cap");
    sv->add_option("--horizon-bound", sv_params.horizon_bound, "exploration depth");
    sv->add_option("--out", sv_out, "policy file to write")->required();

    auto* sm = app.add_subcommand("simulate", "run seeded Monte Carlo episodes");
    std::string sm_model, sm_policy, sm_arm, sm_isc, sm_kappa, sm_out, sm_traj;
    int sm_horizon = 10, sm_runs = 10000, sm_workers = 1;
    std::uint64_t sm_seed = 0;
    sm->add_option("--model", sm_model, "model file")->required();
    sm->add_option("--policy", sm_policy, "policy file")->required();
    sm->add_option("--arm", sm_arm, "belief tracked for control")
        ->required()
        ->check(CLI::IsMember({"augmented", "base"}));
    sm->add_option("--horizon", sm_horizon, "steps per run");
    sm->add_option("--runs", sm_runs, "number of runs");
    sm->add_option("--seed", sm_seed, "master rng seed");
    sm->add_option("--workers", sm_workers, "parallel workers (output-invariant)");
    sm->add_option("--isc-cost", sm_isc, "evaluation cost file (default: 4x4 quadrant cost)");
    sm->add_option("--kappa", sm_kappa, "base-arm control cost (default: 4x4 corner cost)");
    sm->add_option("--out", sm_out, "runs file to write")->required();
    sm->add_option("--traj-out", sm_traj, "also write full trajectory records");

    auto* rp = app.add_subcommand("report", "compare two runs files");
    std::string rp_isc, rp_base, rp_out;
    rp->add_option("--isc", rp_isc, "runs file for the initial-state-cost arm")->required();
    rp->add_option("--base", rp_base, "runs file for the baseline arm")->required();
    rp->add_option("--out", rp_out, "comparison table to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (bg->parsed()) return run_build_grid(bg_config, bg_out, bg_isc_out, bg_kappa_out);
        if (sv->parsed()) {
            return run_solve(sv_model, sv_isc, sv_kappa, sv_psi, sv_discount, sv_params,
                             sv_out);
        }
        if (sm->parsed()) {
            return run_simulate(sm_model, sm_policy, sm_arm, sm_horizon, sm_runs, sm_seed,
                                sm_workers, sm_isc, sm_kappa, sm_out, sm_traj);
        }
        if (rp->parsed()) return run_report(rp_isc, rp_base, rp_out);
        return usage_fail("no subcommand given");
    } catch (const isc::BudgetTooSmall& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBudget;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
}
