#include "isc/sim.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <sstream>
#include <thread>

#include "isc/io.hpp"
#include "isc/rand.hpp"

namespace isc {

namespace {

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string join_curve(const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ";";
        s += io::format_double(v[i]);
    }
    return s;
}

std::vector<double> split_curve(const std::string& s) {
    std::vector<double> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        if (!tok.empty()) out.push_back(std::strtod(tok.c_str(), nullptr));
    }
    return out;
}

std::vector<std::string> split_char(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

}  // namespace

ArmKind arm_from_string(const std::string& s) {
    if (s == "augmented") return ArmKind::Augmented;
    if (s == "base") return ArmKind::Base;
    throw ParseError("unknown arm '" + s + "' (expected augmented or base)");
}

const char* arm_to_string(ArmKind a) {
    return a == ArmKind::Augmented ? "augmented" : "base";
}

TrajectoryRecord simulate_run(const GridExperiment& exp, const AlphaPolicy& policy,
                              ArmKind arm, int T, std::mt19937_64& rng) {
    const TabularModel& m = exp.model;
    const int n = m.n_states;
    if (arm == ArmKind::Augmented && policy.n_states != n * n) {
        throw DimensionMismatch("augmented-arm policy dimension " +
                                std::to_string(policy.n_states) + " != " +
                                std::to_string(n * n));
    }
    if (arm == ArmKind::Base && policy.n_states != n) {
        throw DimensionMismatch("base-arm policy dimension " +
                                std::to_string(policy.n_states) + " != " + std::to_string(n));
    }
    if (T < 0) throw OutOfRange("simulate_run: horizon must be >= 0");

    AugmentedModel aug = augment(m);
    TrajectoryRecord rec;
    const int x0 = sample_cdf(m.initial_belief, rng);
    rec.true_x0 = x0 + 1;
    rec.states.push_back(x0 + 1);

    AugmentedBelief xi = aug.aug_initial();
    Belief pi{m.initial_belief};
    rec.entropy_curve.push_back(initial_entropy(xi));
    rec.prob_curve.push_back(marginal_initial(xi)[x0]);

    // The belief-cost stage term is control-independent, so the lookahead argmin
    // is the same with it omitted.
    const BeliefCost no_psi = BeliefCost::none();
    int x = x0;
    for (int k = 0; k < T; ++k) {
        const int u = arm == ArmKind::Augmented
                          ? policy_action(policy, aug, exp.isc_cost, no_psi, xi)
                          : policy_action(policy, m, exp.baseline_cost, pi);
        rec.controls.push_back(u + 1);
        rec.step_costs.push_back(exp.isc_cost.at(x0, x, u));
        const std::span<const double> trow(
            &m.transition[(static_cast<size_t>(u) * n + x) * n], static_cast<size_t>(n));
        x = sample_cdf(trow, rng);
        rec.states.push_back(x + 1);
        const std::span<const double> orow(
            &m.observation[(static_cast<size_t>(u) * n + x) * m.n_obs],
            static_cast<size_t>(m.n_obs));
        const int y = sample_cdf(orow, rng);
        rec.observations.push_back(y + 1);
        xi = smoother_update(aug, xi, u, y);
        if (arm == ArmKind::Base) pi = filter_update(m, pi, u, y);
        rec.entropy_curve.push_back(initial_entropy(xi));
        rec.prob_curve.push_back(marginal_initial(xi)[x0]);
    }
    double g = 1.0;
    for (double c : rec.step_costs) {
        rec.discounted_cost += g * c;
        g *= m.discount;
    }
    rec.final_xi = xi;
    if (arm == ArmKind::Base) rec.final_pi = pi.p;
    return rec;
}

bool goal_reached(const TrajectoryRecord& rec, const GridExperiment& exp) {
    return rec.states.back() == exp.goal_map[rec.true_x0];
}

MetricsSummary monte_carlo(const GridExperiment& exp, const AlphaPolicy& policy,
                           const RunConfig& cfg,
                           std::vector<TrajectoryRecord>* records_out) {
    if (cfg.horizon < 1) throw InvalidSpec("monte_carlo: horizon must be >= 1");
    if (cfg.num_runs < 1) throw InvalidSpec("monte_carlo: num_runs must be >= 1");
    const int n_runs = cfg.num_runs;
    std::vector<TrajectoryRecord> records(n_runs);
    const int workers = std::max(1, std::min(cfg.n_workers, n_runs));
    std::vector<std::exception_ptr> errs(workers);
    auto work = [&](int w) {
        try {
            for (int i = w; i < n_runs; i += workers) {
                std::mt19937_64 rng = make_rng(cfg.rng_seed, static_cast<std::uint64_t>(i));
                records[i] = simulate_run(exp, policy, cfg.arm, cfg.horizon, rng);
            }
        } catch (...) {
            errs[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errs) {
        if (e) std::rethrow_exception(e);
    }

    MetricsSummary s;
    s.num_runs = n_runs;
    s.horizon = cfg.horizon;
    s.discount = exp.model.discount;
    s.entropy_curve.assign(cfg.horizon + 1, 0.0);
    s.prob_curve.assign(cfg.horizon + 1, 0.0);
    for (const auto& r : records) {
        s.avg_discounted_cost += r.discounted_cost;
        if (goal_reached(r, exp)) ++s.goals_reached;
        s.avg_final_initial_entropy += r.entropy_curve.back();
        s.avg_final_prob_true_x0 += r.prob_curve.back();
        for (int k = 0; k <= cfg.horizon; ++k) {
            s.entropy_curve[k] += r.entropy_curve[k];
            s.prob_curve[k] += r.prob_curve[k];
        }
    }
    s.avg_discounted_cost /= n_runs;
    s.avg_final_initial_entropy /= n_runs;
    s.avg_final_prob_true_x0 /= n_runs;
    for (auto& v : s.entropy_curve) v /= n_runs;
    for (auto& v : s.prob_curve) v /= n_runs;
    if (n_runs > 1) {
        double ss = 0.0;
        for (const auto& r : records) {
            const double d = r.discounted_cost - s.avg_discounted_cost;
            ss += d * d;
        }
        s.se_discounted_cost = std::sqrt(ss / (n_runs - 1)) / std::sqrt(double(n_runs));
    }
    if (records_out != nullptr) *records_out = std::move(records);
    return s;
}

RunsFile make_runs_file(const MetricsSummary& summary,
                        const std::vector<TrajectoryRecord>& records,
                        const GridExperiment& exp, const RunConfig& cfg,
                        std::uint64_t model_hash, std::uint64_t policy_hash) {
    RunsFile rf;
    rf.arm = arm_to_string(cfg.arm);
    rf.seed = cfg.rng_seed;
    rf.horizon = cfg.horizon;
    rf.num_runs = cfg.num_runs;
    rf.discount = exp.model.discount;
    rf.model_hash = model_hash;
    rf.policy_hash = policy_hash;
    rf.summary = summary;
    rf.rows.reserve(records.size());
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        RunsFile::Row row;
        row.run = static_cast<int>(i) + 1;
        row.true_x0 = r.true_x0;
        row.discounted_cost = r.discounted_cost;
        row.goal = goal_reached(r, exp) ? 1 : 0;
        row.final_entropy = r.entropy_curve.back();
        row.final_prob = r.prob_curve.back();
        rf.rows.push_back(row);
    }
    return rf;
}

void save_runs(const RunsFile& rf, const std::string& path) {
    std::string s;
    s += "# runs v1\n";
    s += "# arm=" + rf.arm + "\n";
    s += "# seed=" + std::to_string(rf.seed) + "\n";
    s += "# horizon=" + std::to_string(rf.horizon) + "\n";
    s += "# runs=" + std::to_string(rf.num_runs) + "\n";
    s += "# discount=" + io::format_double(rf.discount) + "\n";
    s += "# model_hash=" + hex64(rf.model_hash) + "\n";
    s += "# policy_hash=" + hex64(rf.policy_hash) + "\n";
    s += "# avg_discounted_cost=" + io::format_double(rf.summary.avg_discounted_cost) + "\n";
    s += "# se_discounted_cost=" + io::format_double(rf.summary.se_discounted_cost) + "\n";
    s += "# goals_reached=" + std::to_string(rf.summary.goals_reached) + "\n";
    s += "# avg_final_initial_entropy=" +
         io::format_double(rf.summary.avg_final_initial_entropy) + "\n";
    s += "# avg_final_prob_true_x0=" + io::format_double(rf.summary.avg_final_prob_true_x0) +
         "\n";
    s += "# entropy_curve=" + join_curve(rf.summary.entropy_curve) + "\n";
    s += "# prob_curve=" + join_curve(rf.summary.prob_curve) + "\n";
    s += "run,true_x0,discounted_cost,goal,final_entropy,final_prob\n";
    for (const auto& r : rf.rows) {
        s += std::to_string(r.run) + "," + std::to_string(r.true_x0) + "," +
             io::format_double(r.discounted_cost) + "," + std::to_string(r.goal) + "," +
             io::format_double(r.final_entropy) + "," + io::format_double(r.final_prob) + "\n";
    }
    io::write_file(path, s);
}

RunsFile load_runs(const std::string& path) {
    const std::string text = io::read_file(path);
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::string> hdr;
    RunsFile rf;
    bool in_rows = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq != std::string::npos) hdr[line.substr(2, eq - 2)] = line.substr(eq + 1);
            continue;
        }
        if (line.rfind("run,", 0) == 0) {
            in_rows = true;
            continue;
        }
        if (!in_rows) throw ParseError("unexpected line in " + path + ": " + line);
        const auto f = split_char(line, ',');
        if (f.size() != 6) throw ParseError("malformed row in " + path + ": " + line);
        RunsFile::Row row;
        row.run = std::atoi(f[0].c_str());
        row.true_x0 = std::atoi(f[1].c_str());
        row.discounted_cost = std::strtod(f[2].c_str(), nullptr);
        row.goal = std::atoi(f[3].c_str());
        row.final_entropy = std::strtod(f[4].c_str(), nullptr);
        row.final_prob = std::strtod(f[5].c_str(), nullptr);
        rf.rows.push_back(row);
    }
    auto need = [&](const char* key) -> const std::string& {
        auto it = hdr.find(key);
        if (it == hdr.end()) throw ParseError(path + " lacks header field " + key);
        return it->second;
    };
    rf.arm = need("arm");
    rf.seed = std::strtoull(need("seed").c_str(), nullptr, 10);
    rf.horizon = std::atoi(need("horizon").c_str());
    rf.num_runs = std::atoi(need("runs").c_str());
    rf.discount = std::strtod(need("discount").c_str(), nullptr);
    rf.model_hash = std::strtoull(need("model_hash").c_str(), nullptr, 16);
    rf.policy_hash = std::strtoull(need("policy_hash").c_str(), nullptr, 16);
    rf.summary.num_runs = rf.num_runs;
    rf.summary.horizon = rf.horizon;
    rf.summary.discount = rf.discount;
    rf.summary.avg_discounted_cost = std::strtod(need("avg_discounted_cost").c_str(), nullptr);
    rf.summary.se_discounted_cost = std::strtod(need("se_discounted_cost").c_str(), nullptr);
    rf.summary.goals_reached = std::atol(need("goals_reached").c_str());
    rf.summary.avg_final_initial_entropy =
        std::strtod(need("avg_final_initial_entropy").c_str(), nullptr);
    rf.summary.avg_final_prob_true_x0 =
        std::strtod(need("avg_final_prob_true_x0").c_str(), nullptr);
    rf.summary.entropy_curve = split_curve(need("entropy_curve"));
    rf.summary.prob_curve = split_curve(need("prob_curve"));
    return rf;
}

void save_trajectories(const std::vector<TrajectoryRecord>& records, const std::string& path) {
    std::string s;
    auto ints = [](const std::vector<int>& v) {
        std::string r = "[";
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) r += ",";
            r += std::to_string(v[i]);
        }
        return r + "]";
    };
    auto nums = [](const std::vector<double>& v) {
        std::string r = "[";
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) r += ",";
            r += io::format_double(v[i]);
        }
        return r + "]";
    };
    for (const auto& r : records) {
        s += "{\"true_x0\":" + std::to_string(r.true_x0) + ",\"states\":" + ints(r.states) +
             ",\"controls\":" + ints(r.controls) + ",\"observations\":" +
             ints(r.observations) + ",\"step_costs\":" + nums(r.step_costs) +
             ",\"discounted_cost\":" + io::format_double(r.discounted_cost) +
             ",\"entropy_curve\":" + nums(r.entropy_curve) + ",\"prob_curve\":" +
             nums(r.prob_curve) + ",\"final_xi\":" + nums(r.final_xi.p);
        if (!r.final_pi.empty()) s += ",\"final_pi\":" + nums(r.final_pi);
        s += "}\n";
    }
    io::write_file(path, s);
}

void write_report(const RunsFile& isc_arm, const RunsFile& base_arm,
                  const std::string& table_path) {
    if (isc_arm.model_hash != base_arm.model_hash) {
        throw ConfigMismatch("runs files were produced from different models");
    }
    if (isc_arm.horizon != base_arm.horizon) {
        throw ConfigMismatch("runs files use different horizons");
    }
    if (isc_arm.discount != base_arm.discount) {
        throw ConfigMismatch("runs files use different discounts");
    }

    std::string s;
    s += "# comparison v1\n";
    s += "# model_hash=" + hex64(isc_arm.model_hash) + "\n";
    s += "# horizon=" + std::to_string(isc_arm.horizon) + "\n";
    s += "# discount=" + io::format_double(isc_arm.discount) + "\n";
    s += "# isc: arm=" + isc_arm.arm + " seed=" + std::to_string(isc_arm.seed) +
         " runs=" + std::to_string(isc_arm.num_runs) +
         " policy_hash=" + hex64(isc_arm.policy_hash) + "\n";
    s += "# base: arm=" + base_arm.arm + " seed=" + std::to_string(base_arm.seed) +
         " runs=" + std::to_string(base_arm.num_runs) +
         " policy_hash=" + hex64(base_arm.policy_hash) + "\n";
    s += "metric,isc,base\n";
    const auto& a = isc_arm.summary;
    const auto& b = base_arm.summary;
    s += "avg_discounted_cost," + io::format_double(a.avg_discounted_cost) + "," +
         io::format_double(b.avg_discounted_cost) + "\n";
    s += "se_discounted_cost," + io::format_double(a.se_discounted_cost) + "," +
         io::format_double(b.se_discounted_cost) + "\n";
    s += "goals_reached," + std::to_string(a.goals_reached) + "," +
         std::to_string(b.goals_reached) + "\n";
    s += "avg_final_initial_entropy," + io::format_double(a.avg_final_initial_entropy) + "," +
         io::format_double(b.avg_final_initial_entropy) + "\n";
    s += "avg_final_prob_true_x0," + io::format_double(a.avg_final_prob_true_x0) + "," +
         io::format_double(b.avg_final_prob_true_x0) + "\n";
    s += "# reference (isc vs base): cost 6.26 vs 7.91; goals 8031 vs 4116; "
         "entropy 1.54 vs 1.72; prob 0.296 vs 0.245\n";
    io::write_file(table_path, s);

    auto stem = table_path;
    const auto slash = stem.find_last_of('/');
    const auto dot = stem.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
        stem = stem.substr(0, dot);
    }
    for (int which = 0; which < 2; ++which) {
        const auto& ca = which == 0 ? a.entropy_curve : a.prob_curve;
        const auto& cb = which == 0 ? b.entropy_curve : b.prob_curve;
        std::string c = "k,isc,base\n";
        for (size_t k = 0; k < ca.size() && k < cb.size(); ++k) {
            c += std::to_string(k) + "," + io::format_double(ca[k]) + "," +
                 io::format_double(cb[k]) + "\n";
        }
        io::write_file(stem + (which == 0 ? "-entropy.csv" : "-prob.csv"), c);
    }
}

}  // namespace isc
