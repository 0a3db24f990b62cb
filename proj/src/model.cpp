#include "isc/model.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace isc {

namespace {

std::string describe(const char* what, int u, int i, double sum) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s row (u=%d, %s=%d) sums to %.12g", what, u + 1,
                  what[0] == 't' ? "from" : "x", i + 1, sum);
    return buf;
}

}  // namespace

bool is_distribution(std::span<const double> p, double tol) {
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) return false;
        sum += v;
    }
    return std::abs(sum - 1.0) <= tol;
}

ValidationReport validate_model(const TabularModel& model) {
    ValidationReport report;
    if (model.n_states <= 0 || model.n_controls <= 0 || model.n_obs <= 0) {
        report.issues.push_back("dimensions must be positive");
        return report;
    }
    if (!(model.discount > 0.0 && model.discount < 1.0)) {
        report.issues.push_back("discount must lie in (0,1)");
    }
    for (int u = 0; u < model.n_controls; ++u) {
        for (int from = 0; from < model.n_states; ++from) {
            double sum = 0.0;
            for (int to = 0; to < model.n_states; ++to) {
                double v = model.trans(u, from, to);
                if (v < 0.0) {
                    char buf[128];
                    std::snprintf(buf, sizeof(buf),
                                  "negative transition probability at (u=%d, from=%d, to=%d)",
                                  u + 1, from + 1, to + 1);
                    report.issues.push_back(buf);
                }
                sum += v;
            }
            if (std::abs(sum - 1.0) > kProbTol) {
                report.issues.push_back(describe("transition", u, from, sum));
            }
        }
        for (int x = 0; x < model.n_states; ++x) {
            double sum = 0.0;
            for (int y = 0; y < model.n_obs; ++y) {
                double v = model.obs(u, x, y);
                if (v < 0.0) {
                    char buf[128];
                    std::snprintf(buf, sizeof(buf),
                                  "negative observation probability at (u=%d, x=%d, y=%d)", u + 1,
                                  x + 1, y + 1);
                    report.issues.push_back(buf);
                }
                sum += v;
            }
            if (std::abs(sum - 1.0) > kProbTol) {
                report.issues.push_back(describe("observation", u, x, sum));
            }
        }
    }
    double init_sum = std::accumulate(model.initial_belief.begin(), model.initial_belief.end(), 0.0);
    for (size_t x = 0; x < model.initial_belief.size(); ++x) {
        if (model.initial_belief[x] < 0.0) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "negative initial belief at x=%zu", x + 1);
            report.issues.push_back(buf);
        }
    }
    if (static_cast<int>(model.initial_belief.size()) != model.n_states) {
        report.issues.push_back("initial belief length does not match n_states");
    } else if (std::abs(init_sum - 1.0) > kProbTol) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "initial belief sums to %.12g", init_sum);
        report.issues.push_back(buf);
    }
    return report;
}

void predict_into(const TabularModel& model, std::span<const double> belief, int u,
                  std::span<double> out) {
    const int n = model.n_states;
    for (int x = 0; x < n; ++x) out[x] = 0.0;
    const double* row = &model.transition[static_cast<size_t>(u) * n * n];
    for (int from = 0; from < n; ++from, row += n) {
        const double w = belief[from];
        if (w == 0.0) continue;
        for (int to = 0; to < n; ++to) out[to] += w * row[to];
    }
}

double obs_likelihood(const TabularModel& model, const Belief& belief, int u, int y) {
    const int n = model.n_states;
    std::vector<double> pred(n);
    predict_into(model, belief.p, u, pred);
    double sum = 0.0;
    for (int x = 0; x < n; ++x) sum += model.obs(u, x, y) * pred[x];
    return sum;
}

Belief filter_update(const TabularModel& model, const Belief& belief, int u, int y) {
    const int n = model.n_states;
    Belief next;
    next.p.resize(n);
    predict_into(model, belief.p, u, next.p);
    double norm = 0.0;
    for (int x = 0; x < n; ++x) {
        next.p[x] *= model.obs(u, x, y);
        norm += next.p[x];
    }
    if (norm < kNormalizerFloor) {
        throw ImpossibleObservation("filter update: observation " + std::to_string(y + 1) +
                                    " has zero predicted probability");
    }
    for (int x = 0; x < n; ++x) next.p[x] /= norm;
    return next;
}

}  // namespace isc
