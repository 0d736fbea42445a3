#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "botreg/dataset.hpp"
#include "botreg/eval.hpp"
#include "botreg/features.hpp"
#include "botreg/model_spec.hpp"

namespace botreg {

// Predictions of one (repeat, fold) test block, rows ascending as in the
// plan. Row indices refer to the evaluated matrix.
struct FoldPredictions {
    std::size_t repeat = 0;
    std::size_t fold = 0;
    std::vector<std::uint32_t> rows;
    std::vector<double> y_real;
    std::vector<double> y_pred;
};

// Repeated k-fold evaluation of one spec on one matrix. Each fold fits on
// the out-of-fold rows only; learners that rescale inputs do so inside fit,
// so no scaler ever sees a test row. Stochastic specs draw a distinct
// per-fold seed from spec.seed. Numerical failures inside a fold are
// rethrown with "repeat r, fold f" prepended, keeping their type.
EvalResult cross_validate(const ModelSpec& spec, const FeatureMatrix& m,
                          const FoldPlan& plan,
                          std::vector<FoldPredictions>* capture = nullptr);

// One grid cell: an algorithm evaluated on one feature set, plus its paired
// tests against the same-set baseline row.
struct CellResult {
    ModelSpec spec;  // seed resolved to the cell's derived value
    FeatureSetTag set = FeatureSetTag::ClassAMinus;
    EvalResult eval;
    TestResult mae_vs_baseline;
    TestResult rmse_vs_baseline;
    std::vector<FoldPredictions> predictions;  // empty unless captured
};

struct ExperimentConfig {
    std::vector<ModelSpec> specs;     // a baseline row is prepended if absent
    std::vector<FeatureSetTag> sets;
    std::size_t k = 10;
    std::size_t repeats = 10;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    bool corrected_ttest = true;  // false: naive paired t-test
    std::size_t threads = 1;      // 0 behaves as 1
    bool capture_predictions = false;
    // Invoked (serialized) as each cell's evaluation finishes; significance
    // tests are not attached yet at that point. Intended for progress logs.
    std::function<void(const EvalResult&)> on_cell;
};

struct ExperimentResult {
    std::vector<ModelSpec> specs;     // row order, baseline first
    std::vector<FeatureSetTag> sets;  // column order
    ViewKind view = ViewKind::AllHumans;
    FoldPlan plan;
    std::vector<CellResult> cells;  // specs.size() x sets.size(), row-major

    const CellResult& cell(std::size_t spec_index,
                           std::size_t set_index) const {
        return cells[spec_index * sets.size() + set_index];
    }
};

// Evaluates every spec x feature set over one shared fold plan and attaches
// per-metric significance tests against the baseline row of the same set.
// The baseline (ZeroR) is moved to the front of the rows, or prepended when
// missing. Every cell's model seed is derived from cfg.seed and the cell
// key, overriding any seed set on the incoming spec, so reruns with the
// same config reproduce bit-identical results regardless of cfg.threads.
// The first failing cell (in grid order) aborts the experiment with
// "Algorithm on Feature_set" context, keeping the error type.
ExperimentResult run_experiment(const Dataset& d, const ExperimentConfig& cfg);

}  // namespace botreg
