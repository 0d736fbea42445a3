#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "botreg/dataset.hpp"

namespace botreg {

enum class FeatureSetTag { ClassAMinus, BotometerPlus, AllFeatures };

std::size_t feature_dimension(FeatureSetTag tag);
const std::vector<std::string>& feature_names(FeatureSetTag tag);
std::string feature_set_label(FeatureSetTag tag);     // paper-style label
std::string feature_set_key(FeatureSetTag tag);       // config/CLI key
FeatureSetTag parse_feature_set(const std::string& key);

struct FeatureVector {
    FeatureSetTag set = FeatureSetTag::ClassAMinus;
    std::vector<double> values;
};

// Row-major matrix with parallel targets/ids, all rows under one feature set.
struct FeatureMatrix {
    FeatureSetTag set = FeatureSetTag::ClassAMinus;
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<double> values;  // n_rows * n_cols
    std::vector<double> targets;
    std::vector<std::string> ids;

    const double* row(std::size_t i) const { return values.data() + i * n_cols; }
    double* row(std::size_t i) { return values.data() + i * n_cols; }
};

// The 18 profile features, fixed order (see feature_names(ClassAMinus)).
FeatureVector class_a_minus(const AccountProfile& p,
                            std::int64_t snapshot_time);

// The 12 ingested score fields in fixed order.
FeatureVector botometer_plus(const BotometerRecord& r);

// Concatenation: 18 profile features followed by the 12 score fields.
FeatureVector all_features(const FeatureVector& a, const FeatureVector& b);

FeatureMatrix assemble_matrix(const Dataset& d, FeatureSetTag set);

// Per-column affine map to [0,1] learned from a training matrix; constant
// columns map to 0. Held-out values extend beyond [0,1] without clamping.
struct ColumnScaler {
    std::vector<double> lo;
    std::vector<double> hi;

    bool operator==(const ColumnScaler&) const = default;

    double transform(std::size_t col, double x) const {
        const double span = hi[col] - lo[col];
        return span > 0.0 ? (x - lo[col]) / span : 0.0;
    }
    void transform_row(const double* in, double* out) const {
        for (std::size_t c = 0; c < lo.size(); ++c)
            out[c] = transform(c, in[c]);
    }
};

ColumnScaler fit_scaler(const double* values, std::size_t n_rows,
                        std::size_t n_cols);

std::pair<FeatureMatrix, ColumnScaler> normalize_columns(
    const FeatureMatrix& m);

}  // namespace botreg
