#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "botreg/features.hpp"
#include "botreg/model_spec.hpp"

namespace botreg {

struct ZeroRState {
    double mean = 0.0;

    double predict_row(const double*) const { return mean; }
    bool operator==(const ZeroRState&) const = default;
};

struct LinearState {
    std::vector<double> weights;
    double intercept = 0.0;

    double predict_row(const double* x) const {
        double s = intercept;
        for (std::size_t c = 0; c < weights.size(); ++c) s += weights[c] * x[c];
        return s;
    }
    bool operator==(const LinearState&) const = default;
};

struct IbkState {
    std::size_t k = 1;
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> x;  // n * d, row-major
    std::vector<double> y;

    double predict_row(const double* q) const;
    bool operator==(const IbkState&) const = default;
};

struct LwlState {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> x;
    std::vector<double> y;
    // Per-column row order, ascending by value; rebuilt after load.
    std::vector<std::vector<std::uint32_t>> order;

    void rebuild_order();
    double predict_row(const double* q) const;
    bool operator==(const LwlState& o) const {
        return n == o.n && d == o.d && x == o.x && y == o.y;
    }
};

struct StumpState {
    bool split = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double left_value = 0.0;   // holds the plain mean when !split
    double right_value = 0.0;

    double predict_row(const double* x) const {
        if (!split) return left_value;
        return x[feature] <= threshold ? left_value : right_value;
    }
    bool operator==(const StumpState&) const = default;
};

struct AdditiveState {
    double base = 0.0;
    double shrinkage = 1.0;
    std::vector<StumpState> stages;

    double predict_row(const double* x) const {
        double s = base;
        for (const StumpState& st : stages) s += shrinkage * st.predict_row(x);
        return s;
    }
    bool operator==(const AdditiveState&) const = default;
};

struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    double value = 0.0;         // node mean (leaf prediction)
    std::int32_t left = -1;
    std::int32_t right = -1;

    bool operator==(const TreeNode&) const = default;
};

struct TreeState {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    double predict_row(const double* x) const {
        std::size_t i = 0;
        while (nodes[i].feature >= 0) {
            const TreeNode& nd = nodes[i];
            i = x[nd.feature] <= nd.threshold
                    ? static_cast<std::size_t>(nd.left)
                    : static_cast<std::size_t>(nd.right);
        }
        return nodes[i].value;
    }
    bool operator==(const TreeState&) const = default;
};

struct ForestState {
    std::vector<TreeState> trees;

    double predict_row(const double* x) const {
        double s = 0.0;
        for (const TreeState& t : trees) s += t.predict_row(x);
        return s / static_cast<double>(trees.size());
    }
    bool operator==(const ForestState&) const = default;
};

struct DiscretizeState {
    double lo = 0.0;
    double width = 0.0;
    std::vector<double> bin_values;  // mean target per bin
    TreeState tree;                  // leaf values are bin indices

    double predict_row(const double* x) const {
        const auto bin = static_cast<std::size_t>(tree.predict_row(x));
        return bin_values[bin];
    }
    bool operator==(const DiscretizeState&) const = default;
};

struct GpState {
    double gamma = 0.0;
    double noise = 1.0;
    double y_mean = 0.0;
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> x;      // training inputs, n * d
    std::vector<double> alpha;  // (K + noise I)^-1 (y - y_mean)

    double predict_row(const double* q) const;
    bool operator==(const GpState&) const = default;
};

struct SmoState {
    std::vector<double> weights;
    double bias = 0.0;
    std::vector<double> betas;  // dual coefficients, one per training row

    double predict_row(const double* x) const {
        double s = bias;
        for (std::size_t c = 0; c < weights.size(); ++c) s += weights[c] * x[c];
        return s;
    }
    bool operator==(const SmoState&) const = default;
};

using ModelState =
    std::variant<ZeroRState, LinearState, IbkState, LwlState, StumpState,
                 AdditiveState, DiscretizeState, GpState, SmoState, TreeState,
                 ForestState>;

struct TrainedModel {
    ModelSpec spec;
    FeatureSetTag feature_set = FeatureSetTag::ClassAMinus;
    std::vector<std::string> feature_names;
    // Input rescaling learned from the training rows; empty (lo/hi size 0)
    // for algorithms that consume raw features.
    ColumnScaler scaler;
    ModelState state;

    bool operator==(const TrainedModel&) const = default;
};

// Validates the spec, rescales inputs when the algorithm calls for it, and
// trains. Throws ConfigError/EmptyInputError/DimensionError on bad input,
// ConvergenceError or NotPositiveDefiniteError when optimization fails.
TrainedModel fit(const ModelSpec& spec, const FeatureMatrix& m);

// Prediction in the raw feature space (d must match the trained width).
double predict_row(const TrainedModel& model, const double* x, std::size_t d);
double predict(const TrainedModel& model, const FeatureVector& v);

void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace botreg
