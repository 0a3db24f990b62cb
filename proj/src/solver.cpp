#include "isc/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "isc/rand.hpp"

namespace isc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Uniform views of the two belief MDPs the iteration runs over.
struct AugView {
    const AugmentedModel& aug;
    const InitialStateCost& c;

    int n() const { return aug.n_aug_states(); }
    int nu() const { return aug.base().n_controls; }
    int ny() const { return aug.base().n_obs; }
    double gamma() const { return aug.base().discount; }
    std::vector<double> initial() const { return aug.aug_initial().p; }
    void predict(std::span<const double> b, int u, std::span<double> out) const {
        aug_predict_into(aug, b, u, out);
    }
    double obsw(int u, int s, int y) const { return aug.aug_observation(u, s, y); }
    double cost(int s, int u) const { return c.aug_at(s, u); }
    double max_cost() const {
        double m = -kInf;
        for (double v : c.table) m = std::max(m, v);
        return m;
    }
    // out(s_bar) += scale * sum_s T(u,s_bar,s) B(u,s,y) alpha(s), block-sparse.
    void back_project_add(std::span<const double> alpha, int u, int y, double scale,
                          std::span<double> out) const {
        const TabularModel& base = aug.base();
        const int nb = base.n_states;
        std::vector<double> wb(nb);
        for (int x = 0; x < nb; ++x) wb[x] = base.obs(u, x, y);
        const double* table = &base.transition[static_cast<size_t>(u) * nb * nb];
        for (int xb = 0; xb < nb; ++xb) {
            const double* row = table + static_cast<size_t>(xb) * nb;
            for (int x0 = 0; x0 < nb; ++x0) {
                double acc = 0.0;
                for (int x = 0; x < nb; ++x) acc += row[x] * wb[x] * alpha[x0 + nb * x];
                out[x0 + nb * xb] += scale * acc;
            }
        }
    }
};

struct BaseView {
    const TabularModel& m;
    const StateControlCost& kappa;

    int n() const { return m.n_states; }
    int nu() const { return m.n_controls; }
    int ny() const { return m.n_obs; }
    double gamma() const { return m.discount; }
    std::vector<double> initial() const { return m.initial_belief; }
    void predict(std::span<const double> b, int u, std::span<double> out) const {
        predict_into(m, b, u, out);
    }
    double obsw(int u, int x, int y) const { return m.obs(u, x, y); }
    double cost(int x, int u) const { return kappa.at(x, u); }
    double max_cost() const {
        double mx = -kInf;
        for (double v : kappa.table) mx = std::max(mx, v);
        return mx;
    }
    void back_project_add(std::span<const double> alpha, int u, int y, double scale,
                          std::span<double> out) const {
        const int n = m.n_states;
        std::vector<double> wb(n);
        for (int x = 0; x < n; ++x) wb[x] = m.obs(u, x, y) * alpha[x];
        const double* table = &m.transition[static_cast<size_t>(u) * n * n];
        for (int xb = 0; xb < n; ++xb) {
            const double* row = table + static_cast<size_t>(xb) * n;
            double acc = 0.0;
            for (int x = 0; x < n; ++x) acc += row[x] * wb[x];
            out[xb] += scale * acc;
        }
    }
};

template <class View>
AlphaVector backup_impl(const View& v, const PwlcApprox* psi_hat,
                        const std::vector<AlphaVector>& alphas, std::span<const double> xi) {
    const int n = v.n();
    const int nu = v.nu();
    const int ny = v.ny();
    const double gamma = v.gamma();

    const std::vector<double>* plane = nullptr;
    if (psi_hat != nullptr && !psi_hat->planes.empty()) {
        plane = &psi_hat->planes[psi_hat->argmin_plane(xi)];
    }

    std::vector<double> pred(n), w(n);
    std::vector<int> jstar(ny), jbest(ny);
    int best_u = 0;
    double best_val = kInf;
    for (int u = 0; u < nu; ++u) {
        v.predict(xi, u, pred);
        double future = 0.0;
        for (int y = 0; y < ny; ++y) {
            for (int s = 0; s < n; ++s) w[s] = v.obsw(u, s, y) * pred[s];
            int bj = 0;
            double bv = kInf;
            for (size_t j = 0; j < alphas.size(); ++j) {
                const double d = dot(alphas[j].values, w);
                if (d < bv) {
                    bv = d;
                    bj = static_cast<int>(j);
                }
            }
            jstar[y] = bj;
            future += bv;
        }
        double rho = plane != nullptr ? dot(*plane, xi) : 0.0;
        for (int s = 0; s < n; ++s) rho += xi[s] * v.cost(s, u);
        const double val = rho + gamma * future;
        if (val < best_val) {
            best_val = val;
            best_u = u;
            jbest = jstar;
        }
    }

    AlphaVector out;
    out.action = best_u;
    out.values.assign(n, 0.0);
    for (int s = 0; s < n; ++s) {
        out.values[s] = (plane != nullptr ? (*plane)[s] : 0.0) + v.cost(s, best_u);
    }
    for (int y = 0; y < ny; ++y) {
        v.back_project_add(alphas[jbest[y]].values, best_u, y, gamma, out.values);
    }
    return out;
}

enum class ExploreMode { Random, Greedy };

int greedy_action(const std::vector<AlphaVector>& alphas, std::span<const double> b) {
    int bi = 0;
    double bv = kInf;
    for (size_t i = 0; i < alphas.size(); ++i) {
        const double d = dot(alphas[i].values, b);
        if (d < bv) {
            bv = d;
            bi = static_cast<int>(i);
        }
    }
    return alphas[bi].action;
}

double l1_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

double min_l1_to_set(const std::vector<std::vector<double>>& points,
                     std::span<const double> b) {
    double m = kInf;
    for (const auto& p : points) m = std::min(m, l1_dist(p, b));
    return m;
}

// One expansion round: walk trajectories from the initial belief, then fold the
// visited beliefs into the point set under the cap with farthest-point retention.
template <class View>
int expand_points(const View& v, std::vector<std::vector<double>>& points, ExploreMode mode,
                  std::mt19937_64& rng, const SolveParams& params,
                  const std::vector<AlphaVector>* alphas,
                  std::vector<std::vector<double>>* shallow_out) {
    constexpr int kTrajPerRound = 8;
    const int n = v.n();
    const int nu = v.nu();
    const int ny = v.ny();
    std::vector<std::vector<double>> cands;
    std::vector<double> pred(n), w(n), py(ny);
    for (int t = 0; t < kTrajPerRound; ++t) {
        std::vector<double> b = v.initial();
        for (int d = 1; d <= params.horizon_bound; ++d) {
            const int u = mode == ExploreMode::Random
                              ? static_cast<int>(rng() % static_cast<unsigned>(nu))
                              : greedy_action(*alphas, b);
            v.predict(b, u, pred);
            for (int y = 0; y < ny; ++y) {
                double p = 0.0;
                for (int s = 0; s < n; ++s) p += v.obsw(u, s, y) * pred[s];
                py[y] = p;
            }
            int y_pick;
            if (mode == ExploreMode::Random) {
                y_pick = sample_cdf(py, rng);
            } else {
                y_pick = 0;
                for (int y = 1; y < ny; ++y) {
                    if (py[y] > py[y_pick]) y_pick = y;
                }
            }
            if (py[y_pick] < kNormalizerFloor) break;
            for (int s = 0; s < n; ++s) w[s] = v.obsw(u, s, y_pick) * pred[s] / py[y_pick];
            b = w;
            cands.push_back(b);
            if (shallow_out != nullptr && d <= 2) shallow_out->push_back(b);
        }
    }

    int added = 0;
    const int cap = params.max_belief_points;
    if (static_cast<int>(points.size() + cands.size()) <= cap) {
        for (auto& cand : cands) {
            if (min_l1_to_set(points, cand) > 1e-9) {
                points.push_back(std::move(cand));
                ++added;
            }
        }
    } else {
        while (static_cast<int>(points.size()) < cap) {
            int best_i = -1;
            double best_d = 1e-9;
            for (size_t i = 0; i < cands.size(); ++i) {
                if (cands[i].empty()) continue;
                const double d = min_l1_to_set(points, cands[i]);
                if (d > best_d) {
                    best_d = d;
                    best_i = static_cast<int>(i);
                }
            }
            if (best_i < 0) break;
            points.push_back(std::move(cands[best_i]));
            cands[best_i].clear();
            ++added;
        }
    }
    return added;
}

// Deduplicate on values (keep lowest index), then keep each point's argmin alpha.
void retain_used(std::vector<AlphaVector>& alphas,
                 const std::vector<std::vector<double>>& points,
                 std::vector<double>& values_out) {
    std::set<std::vector<double>> seen;
    std::vector<AlphaVector> uniq;
    uniq.reserve(alphas.size());
    for (auto& a : alphas) {
        if (seen.insert(a.values).second) uniq.push_back(std::move(a));
    }
    std::vector<char> used(uniq.size(), 0);
    values_out.assign(points.size(), 0.0);
    for (size_t i = 0; i < points.size(); ++i) {
        int bi = 0;
        double bv = kInf;
        for (size_t j = 0; j < uniq.size(); ++j) {
            const double d = dot(uniq[j].values, points[i]);
            if (d < bv) {
                bv = d;
                bi = static_cast<int>(j);
            }
        }
        used[bi] = 1;
        values_out[i] = bv;
    }
    std::vector<AlphaVector> kept;
    kept.reserve(uniq.size());
    for (size_t j = 0; j < uniq.size(); ++j) {
        if (used[j]) kept.push_back(std::move(uniq[j]));
    }
    alphas = std::move(kept);
}

template <class View>
AlphaPolicy solve_impl(const View& v, const BeliefCost& psi, const SolveParams& params) {
    if (!(params.time_budget > 0.0)) throw InvalidSpec("solve: time_budget must be > 0");
    if (!(params.epsilon > 0.0)) throw InvalidSpec("solve: epsilon must be > 0");
    if (params.max_belief_points < 1) throw InvalidSpec("solve: max_belief_points must be >= 1");

    const auto t0 = std::chrono::steady_clock::now();
    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    const int n = v.n();
    std::mt19937_64 rng = make_rng(params.rng_seed);

    std::vector<std::vector<double>> points;
    points.push_back(v.initial());

    // Belief-cost envelope used inside backups. Entropy costs get tangents at the
    // uniform belief, the initial belief, and beliefs visited within the first two
    // steps of the opening expansion round.
    PwlcApprox pwlc;
    const PwlcApprox* psi_hat = nullptr;
    std::vector<std::vector<double>> shallow;
    const bool want_tangents = psi.kind == BeliefCostKind::InitialEntropy;
    if (psi.kind == BeliefCostKind::TangentSet) psi_hat = &psi.tangents;

    double psi_max = 0.0;
    if (psi.kind == BeliefCostKind::InitialEntropy) {
        const int nb = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
        psi_max = psi.weight * std::log(static_cast<double>(std::max(nb, 2)));
    } else if (psi.kind == BeliefCostKind::TangentSet && !psi.tangents.planes.empty()) {
        for (double g : psi.tangents.planes[0]) psi_max = std::max(psi_max, g);
    }

    std::vector<AlphaVector> alphas;
    std::vector<double> values;
    bool any_sweep = false;
    bool initialized = false;
    int round = 0;
    int zero_rounds = 0;
    bool out_of_time = false;

    while (true) {
        int added = 0;
        if (static_cast<int>(points.size()) < params.max_belief_points) {
            const ExploreMode mode =
                round % 2 == 0 ? ExploreMode::Random : ExploreMode::Greedy;
            added = expand_points(v, points, mode, rng, params,
                                  initialized ? &alphas : nullptr,
                                  (round == 0 && want_tangents) ? &shallow : nullptr);
        }
        if (!initialized) {
            if (want_tangents) {
                std::vector<AugmentedBelief> base_points;
                base_points.push_back(AugmentedBelief{std::vector<double>(n, 1.0 / n)});
                base_points.push_back(AugmentedBelief{v.initial()});
                for (auto& b : shallow) base_points.push_back(AugmentedBelief{std::move(b)});
                pwlc = build_pwlc(psi, base_points);
                psi_hat = &pwlc;
            }
            const double c0 = (std::max(v.max_cost(), 0.0) + psi_max) / (1.0 - v.gamma());
            AlphaVector a0;
            a0.action = 0;
            a0.values.assign(n, c0);
            alphas.push_back(std::move(a0));
            values.assign(points.size(), c0);
            initialized = true;
        }
        values.resize(points.size(), kInf);

        while (true) {
            if (elapsed() > params.time_budget) {
                if (!any_sweep) {
                    throw BudgetTooSmall("solve: time budget exhausted before one sweep");
                }
                out_of_time = true;
                break;
            }
            std::vector<AlphaVector> fresh;
            fresh.reserve(points.size());
            for (const auto& p : points) {
                fresh.push_back(backup_impl(v, psi_hat, alphas, p));
            }
            for (auto& a : fresh) alphas.push_back(std::move(a));
            std::vector<double> new_values;
            retain_used(alphas, points, new_values);
            any_sweep = true;
            double delta = 0.0;
            for (size_t i = 0; i < points.size(); ++i) {
                delta = std::max(delta, values[i] - new_values[i]);
            }
            values = std::move(new_values);
            if (delta < params.epsilon) break;
        }
        if (out_of_time) break;

        zero_rounds = added == 0 ? zero_rounds + 1 : 0;
        if (static_cast<int>(points.size()) >= params.max_belief_points || zero_rounds >= 2) {
            break;
        }
        ++round;
    }

    AlphaPolicy policy;
    policy.alphas = prune_dominated(std::move(alphas));
    policy.n_states = n;
    policy.n_controls = v.nu();
    policy.discount = v.gamma();
    return policy;
}

struct QuantizedBelief {
    std::vector<std::int64_t> q;
    bool operator<(const QuantizedBelief& o) const { return q < o.q; }
};

struct ExactContext {
    const AugmentedModel& aug;
    const InitialStateCost& c;
    const BeliefCost& psi;
    std::int64_t node_cap;
    std::int64_t nodes = 0;
    std::map<std::pair<int, QuantizedBelief>, double> memo;

    QuantizedBelief quantize(const std::vector<double>& xi) const {
        QuantizedBelief k;
        k.q.resize(xi.size());
        for (size_t i = 0; i < xi.size(); ++i) k.q[i] = std::llround(xi[i] * 1e12);
        return k;
    }

    double eval(const std::vector<double>& xi, int h) {
        if (h == 0) return 0.0;
        auto key = std::make_pair(h, quantize(xi));
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        if (++nodes > node_cap) {
            throw TreeTooLarge("exact horizon solve: node cap exceeded");
        }
        const TabularModel& base = aug.base();
        const int nb = base.n_states;
        const int n = nb * nb;
        AugmentedBelief cur{xi};
        const double psi_val = psi.eval(cur);
        std::vector<double> pred(n), w(n);
        double best = kInf;
        for (int u = 0; u < base.n_controls; ++u) {
            aug_predict_into(aug, xi, u, pred);
            double stage = psi_val;
            for (int s = 0; s < n; ++s) stage += xi[s] * c.aug_at(s, u);
            double future = 0.0;
            for (int y = 0; y < base.n_obs; ++y) {
                double p = 0.0;
                for (int xk = 0; xk < nb; ++xk) {
                    const double lik = base.obs(u, xk, y);
                    if (lik == 0.0) continue;
                    for (int x0 = 0; x0 < nb; ++x0) p += lik * pred[x0 + nb * xk];
                }
                if (p < kNormalizerFloor) continue;
                for (int xk = 0; xk < nb; ++xk) {
                    const double lik = base.obs(u, xk, y);
                    for (int x0 = 0; x0 < nb; ++x0) {
                        w[x0 + nb * xk] = lik * pred[x0 + nb * xk] / p;
                    }
                }
                future += p * eval(w, h - 1);
            }
            best = std::min(best, stage + base.discount * future);
        }
        memo.emplace(std::move(key), best);
        return best;
    }
};

}  // namespace

double AlphaPolicy::value(std::span<const double> xi) const {
    double best = kInf;
    for (const auto& a : alphas) best = std::min(best, dot(a.values, xi));
    return best;
}

int AlphaPolicy::argmin_alpha(std::span<const double> xi) const {
    int bi = 0;
    double bv = kInf;
    for (size_t i = 0; i < alphas.size(); ++i) {
        const double d = dot(alphas[i].values, xi);
        if (d < bv) {
            bv = d;
            bi = static_cast<int>(i);
        }
    }
    return bi;
}

AlphaVector backup(const AugmentedModel& aug, const InitialStateCost& c,
                   const PwlcApprox* psi_hat, const AlphaPolicy& alphas,
                   const AugmentedBelief& xi) {
    AugView v{aug, c};
    return backup_impl(v, psi_hat, alphas.alphas, xi.p);
}

AlphaPolicy solve_point_based(const AugmentedModel& aug, const InitialStateCost& c,
                              const BeliefCost& psi, const SolveParams& params) {
    if (c.n_states != aug.base().n_states || c.n_controls != aug.base().n_controls) {
        throw DimensionMismatch("solve: cost table does not match the model");
    }
    AugView v{aug, c};
    return solve_impl(v, psi, params);
}

AlphaPolicy solve_point_based(const TabularModel& model, const StateControlCost& kappa,
                              const SolveParams& params) {
    if (kappa.n_states != model.n_states || kappa.n_controls != model.n_controls) {
        throw DimensionMismatch("solve: cost table does not match the model");
    }
    BaseView v{model, kappa};
    return solve_impl(v, BeliefCost::none(), params);
}

double solve_exact_finite_horizon(const AugmentedModel& aug, const InitialStateCost& c,
                                  const BeliefCost& psi, const AugmentedBelief& xi, int horizon,
                                  std::int64_t node_cap) {
    if (horizon < 0) throw OutOfRange("exact horizon solve: horizon must be >= 0");
    ExactContext ctx{aug, c, psi, node_cap};
    return ctx.eval(xi.p, horizon);
}

int policy_action(const AlphaPolicy& policy, const AugmentedModel& aug,
                  const InitialStateCost& c, const BeliefCost& psi, const AugmentedBelief& xi) {
    const TabularModel& base = aug.base();
    const int nb = base.n_states;
    const int n = nb * nb;
    const double psi_val = psi.eval(xi);
    std::vector<double> pred(n), w(n);
    int best_u = 0;
    double best = kInf;
    for (int u = 0; u < base.n_controls; ++u) {
        aug_predict_into(aug, xi.p, u, pred);
        double stage = psi_val;
        for (int s = 0; s < n; ++s) stage += xi.p[s] * c.aug_at(s, u);
        double future = 0.0;
        for (int y = 0; y < base.n_obs; ++y) {
            double p = 0.0;
            for (int xk = 0; xk < nb; ++xk) {
                const double lik = base.obs(u, xk, y);
                if (lik == 0.0) continue;
                for (int x0 = 0; x0 < nb; ++x0) p += lik * pred[x0 + nb * xk];
            }
            if (p < kNormalizerFloor) continue;
            for (int xk = 0; xk < nb; ++xk) {
                const double lik = base.obs(u, xk, y);
                for (int x0 = 0; x0 < nb; ++x0) {
                    w[x0 + nb * xk] = lik * pred[x0 + nb * xk] / p;
                }
            }
            future += p * policy.value(w);
        }
        const double val = stage + base.discount * future;
        if (val < best) {
            best = val;
            best_u = u;
        }
    }
    return best_u;
}

int policy_action(const AlphaPolicy& policy, const TabularModel& model,
                  const StateControlCost& kappa, const Belief& belief) {
    const int n = model.n_states;
    std::vector<double> pred(n), w(n);
    int best_u = 0;
    double best = kInf;
    for (int u = 0; u < model.n_controls; ++u) {
        predict_into(model, belief.p, u, pred);
        double stage = 0.0;
        for (int x = 0; x < n; ++x) stage += belief.p[x] * kappa.at(x, u);
        double future = 0.0;
        for (int y = 0; y < model.n_obs; ++y) {
            double p = 0.0;
            for (int x = 0; x < n; ++x) p += model.obs(u, x, y) * pred[x];
            if (p < kNormalizerFloor) continue;
            for (int x = 0; x < n; ++x) w[x] = model.obs(u, x, y) * pred[x] / p;
            future += p * policy.value(w);
        }
        const double val = stage + model.discount * future;
        if (val < best) {
            best = val;
            best_u = u;
        }
    }
    return best_u;
}

std::vector<AlphaVector> prune_dominated(std::vector<AlphaVector> alphas) {
    std::vector<AlphaVector> kept;
    kept.reserve(alphas.size());
    auto dominates = [](const AlphaVector& a, const AlphaVector& b) {
        for (size_t i = 0; i < a.values.size(); ++i) {
            if (a.values[i] > b.values[i]) return false;
        }
        return true;
    };
    for (auto& cand : alphas) {
        bool drop = false;
        for (const auto& k : kept) {
            if (dominates(k, cand)) {
                drop = true;
                break;
            }
        }
        if (drop) continue;
        std::vector<AlphaVector> next;
        next.reserve(kept.size() + 1);
        for (auto& k : kept) {
            if (!dominates(cand, k)) next.push_back(std::move(k));
        }
        next.push_back(std::move(cand));
        kept = std::move(next);
    }
    return kept;
}

}  // namespace isc
