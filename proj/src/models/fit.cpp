#include <utility>
#include <variant>

#include "botreg/errors.hpp"
#include "botreg/models.hpp"
#include "botreg/textio.hpp"
#include "internal.hpp"

namespace botreg {

namespace detail {

std::vector<std::string> names_for(FeatureSetTag set, std::size_t d) {
    if (d == feature_dimension(set)) return feature_names(set);
    std::vector<std::string> names(d);
    for (std::size_t c = 0; c < d; ++c) {
        names[c] = "c" + format_int(static_cast<std::int64_t>(c));
    }
    return names;
}

}  // namespace detail

TrainedModel fit(const ModelSpec& spec, const FeatureMatrix& m) {
    validate_spec(spec);
    if (m.n_rows == 0) {
        throw EmptyInputError("cannot fit " + algorithm_name(spec.algorithm) +
                              " on an empty feature matrix");
    }
    if (m.n_cols == 0) {
        throw DimensionError("feature matrix has no columns");
    }
    if (m.targets.size() != m.n_rows) {
        throw DimensionError(
            "feature matrix has " + format_int(static_cast<std::int64_t>(m.n_rows)) +
            " rows but " + format_int(static_cast<std::int64_t>(m.targets.size())) +
            " targets");
    }

    TrainedModel model;
    model.spec = spec;
    model.feature_set = m.set;
    model.feature_names = detail::names_for(m.set, m.n_cols);

    FeatureMatrix scaled;
    const FeatureMatrix* in = &m;
    if (algorithm_normalizes(spec.algorithm)) {
        auto [sm, sc] = normalize_columns(m);
        scaled = std::move(sm);
        model.scaler = std::move(sc);
        in = &scaled;
    }
    const detail::TrainView v{in->values.data(), in->targets.data(), in->n_rows,
                              in->n_cols};
    const auto size_hyper = [&](const char* key) {
        return static_cast<std::size_t>(hyper(spec, key));
    };

    switch (spec.algorithm) {
        case Algorithm::ZeroR:
            model.state = detail::fit_zero_r(v.y, v.n);
            break;
        case Algorithm::REPTree:
            model.state = detail::fit_reptree(
                v, size_hyper("min_leaf"), size_hyper("max_depth"),
                hyper(spec, "prune") != 0.0,
                RandomSource(spec.seed.value_or(0)));
            break;
        case Algorithm::LinearRegression:
            model.state = detail::fit_linear(v, hyper(spec, "ridge"));
            break;
        case Algorithm::IBk:
            model.state = detail::fit_ibk(v, size_hyper("k"));
            break;
        case Algorithm::LWL:
            model.state = detail::fit_lwl(v);
            break;
        case Algorithm::AdditiveRegression:
            model.state = detail::fit_additive(v, size_hyper("iterations"),
                                               hyper(spec, "shrinkage"));
            break;
        case Algorithm::RegressionByDiscretization:
            model.state = detail::fit_discretize(v, size_hyper("bins"));
            break;
        case Algorithm::DecisionStump:
            model.state = detail::fit_stump(v);
            break;
        case Algorithm::GaussianProcesses:
            model.state =
                detail::fit_gp(v, hyper(spec, "gamma"), hyper(spec, "noise"));
            break;
        case Algorithm::SMOreg:
            model.state = detail::fit_smo(v, hyper(spec, "c"),
                                          hyper(spec, "epsilon"),
                                          hyper(spec, "tolerance"),
                                          size_hyper("max_updates"));
            break;
        case Algorithm::RandomForest:
            model.state = detail::fit_forest(
                v, size_hyper("trees"), size_hyper("features_per_split"),
                hyper(spec, "bootstrap") != 0.0, size_hyper("min_leaf"),
                size_hyper("max_depth"), RandomSource(*spec.seed));
            break;
    }
    return model;
}

double predict_row(const TrainedModel& model, const double* x, std::size_t d) {
    if (d != model.feature_names.size()) {
        throw DimensionError(
            "model expects " +
            format_int(static_cast<std::int64_t>(model.feature_names.size())) +
            " features, got " + format_int(static_cast<std::int64_t>(d)));
    }
    if (!model.scaler.lo.empty()) {
        std::vector<double> buf(d);
        model.scaler.transform_row(x, buf.data());
        return std::visit([&](const auto& s) { return s.predict_row(buf.data()); },
                          model.state);
    }
    return std::visit([&](const auto& s) { return s.predict_row(x); },
                      model.state);
}

double predict(const TrainedModel& model, const FeatureVector& v) {
    if (v.set != model.feature_set) {
        throw FeatureSetMismatchError(
            "model was trained on " + feature_set_label(model.feature_set) +
            " but the input is " + feature_set_label(v.set));
    }
    return predict_row(model, v.values.data(), v.values.size());
}

}  // namespace botreg
