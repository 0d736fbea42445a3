#include "botreg/eval.hpp"

#include <algorithm>
#include <cmath>

#include "botreg/errors.hpp"
#include "botreg/numeric.hpp"

namespace botreg {

namespace {

void check_pairs(const PredictionSet& p) {
    if (p.y_real.size() != p.y_pred.size())
        throw DimensionError("prediction set sequences differ in length");
    if (p.y_real.empty())
        throw EmptyInputError("metric over an empty prediction set");
}

}  // namespace

double mae(const PredictionSet& p) {
    check_pairs(p);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.y_real.size(); ++i)
        acc += std::fabs(p.y_real[i] - p.y_pred[i]);
    return acc / static_cast<double>(p.y_real.size());
}

double rmse(const PredictionSet& p) {
    check_pairs(p);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.y_real.size(); ++i) {
        const double d = p.y_real[i] - p.y_pred[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(p.y_real.size()));
}

FoldPlan make_folds(std::size_t n, std::size_t k, std::size_t repeats,
                    std::uint64_t seed) {
    if (k < 2) throw ConfigError("fold count must be at least 2");
    if (k > n)
        throw ConfigError("fold count " + std::to_string(k) +
                          " exceeds row count " + std::to_string(n));
    if (repeats < 1) throw ConfigError("repeat count must be at least 1");

    FoldPlan plan;
    plan.n = n;
    plan.k = k;
    plan.repeats = repeats;
    plan.seed = seed;
    plan.test_rows.resize(repeats);

    const RandomSource master(seed);
    std::vector<std::uint32_t> order(n);
    for (std::size_t r = 0; r < repeats; ++r) {
        for (std::size_t i = 0; i < n; ++i)
            order[i] = static_cast<std::uint32_t>(i);
        RandomSource rng = master.derive(r);
        rng.shuffle(order);

        auto& folds = plan.test_rows[r];
        folds.resize(k);
        // First n%k folds take one extra row.
        const std::size_t base = n / k;
        const std::size_t extra = n % k;
        std::size_t pos = 0;
        for (std::size_t f = 0; f < k; ++f) {
            const std::size_t size = base + (f < extra ? 1 : 0);
            folds[f].assign(order.begin() + pos, order.begin() + pos + size);
            std::sort(folds[f].begin(), folds[f].end());
            pos += size;
        }
    }
    return plan;
}

std::vector<std::uint32_t> FoldPlan::train_rows(std::size_t repeat,
                                                std::size_t fold) const {
    const auto& test = test_rows[repeat][fold];
    std::vector<std::uint32_t> train;
    train.reserve(n - test.size());
    std::size_t t = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (t < test.size() && test[t] == i) {
            ++t;
            continue;
        }
        train.push_back(i);
    }
    return train;
}

std::string metric_name(Metric m) {
    return m == Metric::MAE ? "mae" : "rmse";
}

TestResult corrected_paired_ttest(const EvalResult& candidate,
                                  const EvalResult& baseline, Metric metric,
                                  double alpha, bool corrected) {
    if (candidate.plan_n != baseline.plan_n ||
        candidate.plan_k != baseline.plan_k ||
        candidate.plan_repeats != baseline.plan_repeats ||
        candidate.plan_seed != baseline.plan_seed ||
        candidate.folds.size() != baseline.folds.size())
        throw PairingError("results come from different fold plans (" +
                           candidate.algorithm + " vs " + baseline.algorithm +
                           ")");
    const std::size_t m = candidate.folds.size();
    if (m < 2) throw PairingError("need at least two folds for a paired test");

    // Positive difference = candidate has the lower (better) error.
    std::vector<double> d(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double b = metric == Metric::MAE ? baseline.folds[j].mae
                                               : baseline.folds[j].rmse;
        const double c = metric == Metric::MAE ? candidate.folds[j].mae
                                               : candidate.folds[j].rmse;
        d[j] = b - c;
    }
    double mean = 0.0;
    for (const double v : d) mean += v;
    mean /= static_cast<double>(m);
    double ss = 0.0;
    for (const double v : d) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(m - 1);

    TestResult out;
    out.degrees_of_freedom = m - 1;
    out.alpha = alpha;
    if (var <= 0.0) {
        // All fold differences identical: the statistic is undefined, so the
        // call is decided by the sign of the mean difference alone.
        out.degenerate = true;
        out.t_statistic = 0.0;
        out.p_value = mean == 0.0 ? 1.0 : 0.0;
        out.significant_better = mean > 0.0;
        return out;
    }
    const double multiplier =
        corrected ? 1.0 / static_cast<double>(m) +
                        static_cast<double>(candidate.n_test) /
                            static_cast<double>(candidate.n_train)
                  : 1.0 / static_cast<double>(m);
    out.t_statistic = mean / std::sqrt(var * multiplier);
    out.p_value =
        student_t_p_value(out.t_statistic, static_cast<double>(m - 1));
    out.significant_better = out.p_value < alpha && mean > 0.0;
    return out;
}

}  // namespace botreg
