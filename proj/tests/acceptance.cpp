// End-to-end acceptance harness. Prints one pass/fail line per criterion and
// exits nonzero if any criterion fails. argv[1] is the CLI binary, used by the
// determinism criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "isc/augmented.hpp"
#include "isc/costs.hpp"
#include "isc/gridworld.hpp"
#include "isc/io.hpp"
#include "isc/model.hpp"
#include "isc/rand.hpp"
#include "isc/sim.hpp"
#include "isc/solver.hpp"
#include "oracles.hpp"

using namespace isc;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

// ---- criteria 1 and 2: smoother vs path enumeration, marginal consistency ----

void check_smoother(Outcome& c1, Outcome& c2) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng = make_rng(811);
    double max_joint_err = 0.0, max_marginal_err = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3u);
        const int nu = 1 + static_cast<int>(rng() % 3u);
        const int ny = 1 + static_cast<int>(rng() % 3u);
        const TabularModel m = oracle::random_model(rng, n, nu, ny);
        const AugmentedModel aug = augment(m);
        const int K = 1 + static_cast<int>(rng() % 5u);
        const oracle::Trajectory t = oracle::sample_trajectory(m, K, rng);

        AugmentedBelief xi = aug.aug_initial();
        Belief pi{m.initial_belief};
        for (int k = 0; k < K; ++k) {
            xi = smoother_update(aug, xi, t.controls[k], t.observations[k]);
            pi = filter_update(m, pi, t.controls[k], t.observations[k]);
            const std::vector<double> joint = oracle::joint_posterior_paths(
                m, {t.controls.begin(), t.controls.begin() + k + 1},
                {t.observations.begin(), t.observations.begin() + k + 1});
            for (int s = 0; s < n * n; ++s) {
                max_joint_err = std::max(max_joint_err, std::abs(xi.p[s] - joint[s]));
            }
            const std::vector<double> mc = marginal_current(xi);
            for (int x = 0; x < n; ++x) {
                max_marginal_err = std::max(max_marginal_err, std::abs(mc[x] - pi.p[x]));
            }
        }
    }
    const double dt = seconds_since(t0);
    c1.pass = max_joint_err <= 1e-9 && dt < 10.0;
    c1.detail = fmt("smoother equals path-enumeration oracle, max err %.2e, %.1f s",
                    max_joint_err, dt);
    c2.pass = max_marginal_err <= 1e-12;
    c2.detail = fmt("current-state marginal equals the filter chain, max err %.2e",
                    max_marginal_err);
}

// ---- criterion 3: augmented structure and index bijection ----

Outcome check_structure() {
    Outcome out;
    const auto t0 = Clock::now();
    std::mt19937_64 rng = make_rng(812);
    bool exact = true;
    double max_row_err = 0.0;
    for (int trial = 0; trial < 50 && exact; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3u);
        const int nu = 1 + static_cast<int>(rng() % 3u);
        const int ny = 1 + static_cast<int>(rng() % 3u);
        const TabularModel m = oracle::random_model(rng, n, nu, ny);
        const AugmentedModel aug = augment(m);
        const PairIndex& idx = aug.index();
        for (int s = 0; s < n * n; ++s) {
            const int x0 = idx.initial_of(s), xk = idx.current_of(s);
            const double want = (x0 == xk) ? m.initial_belief[x0] : 0.0;
            if (aug.aug_initial().p[s] != want) exact = false;
        }
        for (int u = 0; u < nu; ++u) {
            for (int s = 0; s < n * n; ++s) {
                double row = 0.0;
                for (int t = 0; t < n * n; ++t) {
                    const double v = aug.aug_transition(u, s, t);
                    row += v;
                    if (idx.initial_of(s) != idx.initial_of(t) && v != 0.0) exact = false;
                    if (idx.initial_of(s) == idx.initial_of(t) &&
                        v != m.trans(u, idx.current_of(s), idx.current_of(t))) {
                        exact = false;
                    }
                }
                max_row_err = std::max(max_row_err, std::abs(row - 1.0));
                for (int y = 0; y < ny; ++y) {
                    if (aug.aug_observation(u, s, y) != m.obs(u, idx.current_of(s), y)) {
                        exact = false;
                    }
                }
            }
        }
    }
    bool bijection = true;
    for (int n = 1; n <= 32 && bijection; ++n) {
        std::vector<char> seen(n * n + 1, 0);
        for (int x0 = 1; x0 <= n && bijection; ++x0) {
            for (int xk = 1; xk <= n; ++xk) {
                const int s = lin_index(x0, xk, n);
                if (s < 1 || s > n * n || seen[s]) {
                    bijection = false;
                    break;
                }
                seen[s] = 1;
                const auto [a, b] = inv_index(s, n);
                if (a != x0 || b != xk) {
                    bijection = false;
                    break;
                }
            }
        }
    }
    const double dt = seconds_since(t0);
    out.pass = exact && bijection && max_row_err <= 1e-12 && dt < 5.0;
    out.detail = fmt("block structure exact, row sums off by %.2e, ", max_row_err) +
                 (bijection ? "index bijection holds 1..32" : "index bijection BROKEN") +
                 fmt(", %.1f s", dt);
    return out;
}

// ---- criterion 4: solver vs exact horizon-20 oracle ----

TabularModel grid2x2_model() {
    TabularModel m;
    m.n_states = 4;
    m.n_controls = 5;
    m.n_obs = 4;
    m.discount = 0.95;
    m.resize_tables();
    m.initial_belief.assign(4, 0.25);
    for (int i = 0; i < 4; ++i) {
        const int row = i % 2, col = i / 2;
        const int moves[5] = {row == 0 ? i : i - 1, col == 1 ? i : i + 2,
                              row == 1 ? i : i + 1, col == 0 ? i : i - 2, i};
        for (int u = 0; u < 5; ++u) {
            m.trans(u, i, moves[u]) = 1.0;
            m.obs(u, i, i) = 1.0;
        }
    }
    return m;
}

Outcome check_solver_oracle(std::vector<AlphaPolicy>& produced) {
    Outcome out;
    const auto t0 = Clock::now();

    // 2-state toy: identity dynamics, noiseless sensor, stay-home cost.
    TabularModel toy;
    toy.n_states = 2;
    toy.n_controls = 1;
    toy.n_obs = 2;
    toy.discount = 0.95;
    toy.resize_tables();
    toy.initial_belief = {0.5, 0.5};
    for (int x = 0; x < 2; ++x) {
        toy.trans(0, x, x) = 1.0;
        toy.obs(0, x, x) = 1.0;
    }
    InitialStateCost toy_cost;
    toy_cost.resize(2, 1);
    for (int x0 = 0; x0 < 2; ++x0)
        for (int x = 0; x < 2; ++x) toy_cost.at(x0, x, 0) = (x == x0) ? 0.0 : 1.0;
    const AugmentedModel toy_aug = augment(toy);
    SolveParams params;
    params.time_budget = 30.0;
    params.max_belief_points = 32;
    params.epsilon = 1e-9;
    params.rng_seed = 41;
    const AlphaPolicy toy_policy =
        solve_point_based(toy_aug, toy_cost, BeliefCost::none(), params);
    const double toy_val = toy_policy.value(toy_aug.aug_initial().p);
    const double toy_exact =
        solve_exact_finite_horizon(toy_aug, toy_cost, BeliefCost::none(), toy_aug.aug_initial(), 20);
    const double toy_tol = std::pow(0.95, 20) * 1.0 / 0.05 + 0.05;
    const double toy_err = std::abs(toy_val - toy_exact);

    // 2x2 grid: deterministic moves, noiseless cell sensor, opposite-corner
    // cost, entropy belief cost.
    const TabularModel grid = grid2x2_model();
    const AugmentedModel grid_aug = augment(grid);
    InitialStateCost grid_cost;
    grid_cost.resize(4, 5);
    for (int x0 = 0; x0 < 4; ++x0)
        for (int x = 0; x < 4; ++x)
            for (int u = 0; u < 5; ++u) grid_cost.at(x0, x, u) = (x == 3 - x0) ? 0.0 : 1.0;
    const double w = 0.5;
    const BeliefCost psi = BeliefCost::make_initial_entropy(w);
    params.max_belief_points = 64;
    params.epsilon = 1e-5;
    params.rng_seed = 43;
    const AlphaPolicy grid_policy = solve_point_based(grid_aug, grid_cost, psi, params);
    const double grid_val = grid_policy.value(grid_aug.aug_initial().p);
    const double grid_exact =
        solve_exact_finite_horizon(grid_aug, grid_cost, psi, grid_aug.aug_initial(), 20);
    const double grid_tol = std::pow(0.95, 20) * (1.0 + w * std::log(4.0)) / 0.05 + 0.05;
    const double grid_err = std::abs(grid_val - grid_exact);

    produced.push_back(toy_policy);
    produced.push_back(grid_policy);

    const double dt = seconds_since(t0);
    out.pass = toy_err <= toy_tol && grid_err <= grid_tol && dt < 60.0;
    out.detail = fmt("toy |pbvi-exact| %.2e, 2x2 grid %.2e", toy_err, grid_err) +
                 fmt(" (tols %.2f, %.2f)", toy_tol, grid_tol) + fmt(", %.1f s", dt);
    return out;
}

// ---- criterion 5: concavity of produced envelopes and of the stage cost ----

Outcome check_concavity(const std::vector<AlphaPolicy>& produced) {
    Outcome out;
    std::mt19937_64 rng = make_rng(813);
    double worst = 0.0;
    for (const AlphaPolicy& p : produced) {
        const int n = p.n_states;
        for (int trial = 0; trial < 1000; ++trial) {
            const std::vector<double> a = oracle::random_simplex(rng, n);
            const std::vector<double> b = oracle::random_simplex(rng, n);
            const double lam = u01(rng);
            std::vector<double> mix(n);
            for (int s = 0; s < n; ++s) mix[s] = lam * a[s] + (1.0 - lam) * b[s];
            const double gap = lam * p.value(a) + (1.0 - lam) * p.value(b) - p.value(mix);
            worst = std::max(worst, gap);
        }
    }
    InitialStateCost c;
    c.resize(4, 3);
    for (double& v : c.table) v = u01(rng);
    const BeliefCost psi = BeliefCost::make_initial_entropy(0.8);
    double worst_rho = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        AugmentedBelief a, b, mid;
        a.p = oracle::random_simplex(rng, 16);
        b.p = oracle::random_simplex(rng, 16);
        mid.p.resize(16);
        for (int s = 0; s < 16; ++s) mid.p[s] = 0.5 * (a.p[s] + b.p[s]);
        const int u = static_cast<int>(rng() % 3u);
        const double gap =
            0.5 * (rho_bar(c, psi, a, u) + rho_bar(c, psi, b, u)) - rho_bar(c, psi, mid, u);
        worst_rho = std::max(worst_rho, gap);
    }
    out.pass = worst <= 1e-12 && worst_rho <= 1e-12;
    out.detail = fmt("envelope concavity slack %.2e over %.0f policies, stage-cost slack %.2e",
                     worst, static_cast<double>(produced.size()), worst_rho);
    return out;
}

// ---- criterion 6: tangent-plane contract ----

Outcome check_pwlc() {
    Outcome out;
    std::mt19937_64 rng = make_rng(814);
    double worst_dom = 0.0, worst_base = 0.0, worst_fd = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4u);
        AugmentedBelief base, probe;
        base.p = oracle::random_simplex(rng, n * n);
        probe.p = oracle::random_simplex(rng, n * n);
        const std::vector<double> g = entropy_tangent(base);
        double at_base = 0.0, at_probe = 0.0;
        for (int s = 0; s < n * n; ++s) {
            at_base += g[s] * base.p[s];
            at_probe += g[s] * probe.p[s];
        }
        worst_base = std::max(worst_base, std::abs(at_base - initial_entropy(base)));
        worst_dom = std::max(worst_dom, initial_entropy(probe) - at_probe);
    }
    const double step = 1e-6;
    for (int trial = 0; trial < 10; ++trial) {
        AugmentedBelief base;
        base.p = oracle::random_simplex(rng, 9);
        const std::vector<double> g = entropy_tangent(base);
        std::vector<double> d(9);
        double mean = 0.0;
        for (double& v : d) {
            v = u01(rng) - 0.5;
            mean += v;
        }
        mean /= 9.0;
        double norm = 0.0;
        for (double& v : d) {
            v -= mean;
            norm += v * v;
        }
        norm = std::sqrt(norm);
        AugmentedBelief hi = base, lo = base;
        double slope = 0.0;
        for (int s = 0; s < 9; ++s) {
            d[s] /= norm;
            hi.p[s] += step * d[s];
            lo.p[s] -= step * d[s];
            slope += g[s] * d[s];
        }
        const double fd = (initial_entropy(hi) - initial_entropy(lo)) / (2.0 * step);
        worst_fd = std::max(worst_fd, std::abs(slope - fd));
    }
    out.pass = worst_dom <= 1e-9 && worst_base <= 1e-9 && worst_fd <= 1e-4;
    out.detail = fmt("domination slack %.2e, base-point gap %.2e, gradient-check err %.2e",
                     worst_dom, worst_base, worst_fd);
    return out;
}

// ---- criteria 7 and 8: the 4x4 experiment, directional and curve shape ----

struct ExperimentData {
    MetricsSummary isc, base;
    std::vector<TrajectoryRecord> isc_records, base_records;
    double seconds = 0.0;
    bool ran = false;
    std::string error;
};

ExperimentData run_experiment(std::vector<AlphaPolicy>& produced) {
    ExperimentData data;
    const auto t0 = Clock::now();
    try {
        GridSpec spec;
        spec.layout_name = "fig1-approx";
        spec.walls.insert({6, Dir::E});
        spec.walls.insert({7, Dir::E});
        const GridExperiment exp = build_experiment(normalize_spec(spec));

        SolveParams params;
        params.time_budget = 300.0;
        params.max_belief_points = 200;
        params.epsilon = 1e-3;
        params.horizon_bound = 30;
        params.rng_seed = 20240817;
        const AlphaPolicy isc_policy = solve_point_based(
            augment(exp.model), exp.isc_cost, BeliefCost::make_initial_entropy(1.0), params);
        params.rng_seed = 20240818;
        const AlphaPolicy base_policy =
            solve_point_based(exp.model, exp.baseline_cost, params);
        produced.push_back(isc_policy);
        produced.push_back(base_policy);

        RunConfig cfg;
        cfg.horizon = 10;
        cfg.num_runs = 2500;
        cfg.rng_seed = 424242;  // shared across arms: paired environments
        cfg.n_workers = 1;
        cfg.arm = ArmKind::Augmented;
        data.isc = monte_carlo(exp, isc_policy, cfg, &data.isc_records);
        cfg.arm = ArmKind::Base;
        data.base = monte_carlo(exp, base_policy, cfg, &data.base_records);
        data.ran = true;
    } catch (const std::exception& e) {
        data.error = e.what();
    }
    data.seconds = seconds_since(t0);
    return data;
}

Outcome check_experiment(const ExperimentData& d) {
    Outcome out;
    if (!d.ran) {
        out.pass = false;
        out.detail = "experiment failed: " + d.error;
        return out;
    }
    const bool cost_ok = d.isc.avg_discounted_cost < d.base.avg_discounted_cost;
    const double ratio =
        d.base.goals_reached > 0
            ? static_cast<double>(d.isc.goals_reached) / d.base.goals_reached
            : std::numeric_limits<double>::infinity();
    const bool goals_ok = ratio >= 1.3;
    const bool entropy_ok = d.isc.avg_final_initial_entropy < d.base.avg_final_initial_entropy;
    const bool prob_ok = d.isc.avg_final_prob_true_x0 > d.base.avg_final_prob_true_x0;
    const bool se_ok = d.isc.se_discounted_cost < 0.15 && d.base.se_discounted_cost < 0.15;
    const bool time_ok = d.seconds < 900.0;
    out.pass = cost_ok && goals_ok && entropy_ok && prob_ok && se_ok && time_ok &&
               d.isc.num_runs >= 2000;
    out.detail =
        fmt("cost %.3f vs %.3f", d.isc.avg_discounted_cost, d.base.avg_discounted_cost) +
        fmt(" (se %.3f/%.3f), ", d.isc.se_discounted_cost, d.base.se_discounted_cost) +
        fmt("goals %.0f vs %.0f", static_cast<double>(d.isc.goals_reached),
            static_cast<double>(d.base.goals_reached)) +
        fmt(" (ratio %.2f), ", ratio) +
        fmt("entropy %.3f vs %.3f, ", d.isc.avg_final_initial_entropy,
            d.base.avg_final_initial_entropy) +
        fmt("prob %.3f vs %.3f, %.0f s", d.isc.avg_final_prob_true_x0,
            d.base.avg_final_prob_true_x0, d.seconds);
    return out;
}

Outcome check_curves(const ExperimentData& d) {
    Outcome out;
    if (!d.ran) {
        out.pass = false;
        out.detail = "experiment failed: " + d.error;
        return out;
    }
    const int T = d.isc.horizon;
    const size_t n = d.isc_records.size();
    bool shape_ok = true;
    double worst_entropy_margin = -1e300, worst_prob_margin = -1e300;
    for (int k = 3; k <= T; ++k) {
        // Paired per-run differences; runs share seeds across arms.
        double mean_de = 0.0, mean_dp = 0.0;
        for (size_t i = 0; i < n; ++i) {
            mean_de += d.isc_records[i].entropy_curve[k] - d.base_records[i].entropy_curve[k];
            mean_dp += d.isc_records[i].prob_curve[k] - d.base_records[i].prob_curve[k];
        }
        mean_de /= n;
        mean_dp /= n;
        double var_de = 0.0, var_dp = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double de =
                d.isc_records[i].entropy_curve[k] - d.base_records[i].entropy_curve[k];
            const double dp = d.isc_records[i].prob_curve[k] - d.base_records[i].prob_curve[k];
            var_de += (de - mean_de) * (de - mean_de);
            var_dp += (dp - mean_dp) * (dp - mean_dp);
        }
        const double se_de = std::sqrt(var_de / (n - 1)) / std::sqrt(static_cast<double>(n));
        const double se_dp = std::sqrt(var_dp / (n - 1)) / std::sqrt(static_cast<double>(n));
        // Entropy curve must sit at or below baseline within 2 SE; probability
        // curve at or above within 2 SE.
        if (mean_de > 2.0 * se_de) shape_ok = false;
        if (mean_dp < -2.0 * se_dp) shape_ok = false;
        worst_entropy_margin = std::max(worst_entropy_margin, mean_de - 2.0 * se_de);
        worst_prob_margin = std::max(worst_prob_margin, -(mean_dp + 2.0 * se_dp));
    }
    out.pass = shape_ok;
    out.detail = fmt("entropy curve worst margin %.3e, prob curve worst margin %.3e (k >= 3)",
                     worst_entropy_margin, worst_prob_margin);
    return out;
}

// ---- criterion 9: CLI pipeline determinism ----

int run_cli(const std::string& cmd) {
    const std::string full = cmd + " > /dev/null 2>&1";
    return std::system(full.c_str());
}

Outcome check_pipeline_determinism(const char* cli) {
    Outcome out;
    if (cli == nullptr) {
        out.pass = false;
        out.detail = "no CLI binary path given";
        return out;
    }
    const auto t0 = Clock::now();
    const std::string config_json =
        "{\n"
        "  \"layout\": \"fig1-approx\",\n"
        "  \"rows\": 4,\n"
        "  \"cols\": 4,\n"
        "  \"slip_prob\": 0.2,\n"
        "  \"detect_given_wall\": 0.8,\n"
        "  \"detect_given_no_wall\": 0.2,\n"
        "  \"walls\": [[6, \"E\"], [7, \"E\"]]\n"
        "}\n";
    const std::vector<std::string> artifacts = {
        "policy-isc.json", "policy-base.json", "runs-isc.csv",
        "runs-base.csv",   "report.csv",       "report-entropy.csv",
        "report-prob.csv"};
    std::vector<std::string> dirs = {"/tmp/isc-acc-rep1", "/tmp/isc-acc-rep2"};
    for (const std::string& dir : dirs) {
        fs::remove_all(dir);
        fs::create_directories(dir);
        io::write_file(dir + "/config.json", config_json);
        const std::string base = std::string(cli);
        std::vector<std::string> cmds = {
            base + " build-grid --config " + dir + "/config.json --out " + dir +
                "/model.json --isc-cost-out " + dir + "/isc-cost.json --kappa-out " + dir +
                "/kappa.json",
            base + " solve --model " + dir + "/model.json --isc-cost " + dir +
                "/isc-cost.json --psi entropy:1 --discount 0.95 --time-budget 120 --seed 4242" +
                " --epsilon 1e-3 --max-points 40 --out " + dir + "/policy-isc.json",
            base + " solve --model " + dir + "/model.json --kappa " + dir +
                "/kappa.json --discount 0.95 --time-budget 120 --seed 4242" +
                " --epsilon 1e-3 --max-points 40 --out " + dir + "/policy-base.json",
            base + " simulate --model " + dir + "/model.json --policy " + dir +
                "/policy-isc.json --arm augmented --horizon 10 --runs 50 --seed 7 --out " +
                dir + "/runs-isc.csv",
            base + " simulate --model " + dir + "/model.json --policy " + dir +
                "/policy-base.json --arm base --horizon 10 --runs 50 --seed 7 --out " + dir +
                "/runs-base.csv",
            base + " report --isc " + dir + "/runs-isc.csv --base " + dir +
                "/runs-base.csv --out " + dir + "/report.csv",
        };
        for (const std::string& cmd : cmds) {
            if (run_cli(cmd) != 0) {
                out.pass = false;
                out.detail = "pipeline command failed: " + cmd;
                return out;
            }
        }
    }
    bool identical = true;
    std::string first_diff;
    for (const std::string& name : artifacts) {
        const std::string a = io::read_file(dirs[0] + "/" + name);
        const std::string b = io::read_file(dirs[1] + "/" + name);
        if (a != b) {
            identical = false;
            if (first_diff.empty()) first_diff = name;
        }
    }
    out.pass = identical;
    out.detail = identical
                     ? fmt("two pipeline replicas byte-identical across 7 artifacts, %.0f s",
                           seconds_since(t0))
                     : "replicas differ at " + first_diff;
    if (identical) {
        fs::remove_all(dirs[0]);
        fs::remove_all(dirs[1]);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<AlphaPolicy> produced;
    Outcome res[10];

    try {
        check_smoother(res[1], res[2]);
    } catch (const std::exception& e) {
        res[1] = {false, std::string("threw: ") + e.what()};
        res[2] = res[1];
    }
    try {
        res[3] = check_structure();
    } catch (const std::exception& e) {
        res[3] = {false, std::string("threw: ") + e.what()};
    }
    try {
        res[4] = check_solver_oracle(produced);
    } catch (const std::exception& e) {
        res[4] = {false, std::string("threw: ") + e.what()};
    }
    try {
        res[6] = check_pwlc();
    } catch (const std::exception& e) {
        res[6] = {false, std::string("threw: ") + e.what()};
    }

    const ExperimentData experiment = run_experiment(produced);
    res[7] = check_experiment(experiment);
    try {
        res[8] = check_curves(experiment);
    } catch (const std::exception& e) {
        res[8] = {false, std::string("threw: ") + e.what()};
    }

    // Runs after the experiment so the produced-policy list includes both arms.
    try {
        res[5] = check_concavity(produced);
    } catch (const std::exception& e) {
        res[5] = {false, std::string("threw: ") + e.what()};
    }

    try {
        res[9] = check_pipeline_determinism(argc > 1 ? argv[1] : nullptr);
    } catch (const std::exception& e) {
        res[9] = {false, std::string("threw: ") + e.what()};
    }

    static const char* names[10] = {
        "",
        "smoother equals enumeration oracle",
        "marginal consistency with the filter",
        "augmented structure and index bijection",
        "solver agrees with the exact horizon-20 oracle",
        "value and stage-cost concavity",
        "tangent-plane contract",
        "4x4 experiment directional outcomes",
        "uncertainty curves shape",
        "pipeline determinism",
    };
    int failures = 0;
    for (int i = 1; i <= 9; ++i) {
        const bool ok = res[i].pass;
        failures += ok ? 0 : 1;
        std::printf("criterion %d [%s]: %s: %s\n", i, ok ? "PASS" : "FAIL", names[i],
                    res[i].detail.c_str());
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
