#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace botreg {

struct PredictionSet {
    std::vector<double> y_real;
    std::vector<double> y_pred;
};

double mae(const PredictionSet& p);
double rmse(const PredictionSet& p);

// Seeded assignment of rows to (repeat, fold) test sets. One plan is shared
// by every algorithm and feature set of an experiment so that per-fold
// metric differences are paired.
struct FoldPlan {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t repeats = 0;
    std::uint64_t seed = 0;
    // test_rows[r][f]: ascending row indices tested in repeat r, fold f.
    std::vector<std::vector<std::vector<std::uint32_t>>> test_rows;

    std::vector<std::uint32_t> train_rows(std::size_t repeat,
                                          std::size_t fold) const;
    bool same_shape(const FoldPlan& other) const {
        return n == other.n && k == other.k && repeats == other.repeats &&
               seed == other.seed;
    }
};

FoldPlan make_folds(std::size_t n, std::size_t k, std::size_t repeats,
                    std::uint64_t seed);

struct FoldScore {
    std::size_t repeat = 0;
    std::size_t fold = 0;
    double mae = 0.0;
    double rmse = 0.0;
};

struct EvalResult {
    std::string algorithm;
    std::string feature_set;
    std::vector<FoldScore> folds;
    double mae = 0.0;   // mean of per-fold values
    double rmse = 0.0;
    std::size_t n_train = 0;  // fold-0 sizes
    std::size_t n_test = 0;
    // Pairing key (copied from the plan).
    std::size_t plan_n = 0;
    std::size_t plan_k = 0;
    std::size_t plan_repeats = 0;
    std::uint64_t plan_seed = 0;
};

enum class Metric { MAE, RMSE };

std::string metric_name(Metric m);

struct TestResult {
    double t_statistic = 0.0;
    std::size_t degrees_of_freedom = 0;
    double p_value = 1.0;
    bool significant_better = false;
    double alpha = 0.05;
    bool degenerate = false;  // zero variance across fold differences
};

// Paired test of candidate vs baseline over per-fold metric values, with the
// variance of the mean difference inflated by (1/(R·k) + n_test/n_train)
// to account for overlapping training sets (corrected=false reverts to the
// naive 1/(R·k) multiplier).
TestResult corrected_paired_ttest(const EvalResult& candidate,
                                  const EvalResult& baseline, Metric metric,
                                  double alpha = 0.05, bool corrected = true);

}  // namespace botreg
