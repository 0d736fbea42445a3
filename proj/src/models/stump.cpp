#include <vector>

#include "internal.hpp"

namespace botreg::detail {

ZeroRState fit_zero_r(const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += y[i];
    return ZeroRState{s / static_cast<double>(n)};
}

StumpState fit_stump(const TrainView& v) {
    const auto order = presort_columns(v.x, v.n, v.d);
    return best_stump(v, nullptr, order);
}

AdditiveState fit_additive(const TrainView& v, std::size_t iterations,
                           double shrinkage) {
    AdditiveState state;
    state.base = fit_zero_r(v.y, v.n).mean;
    state.shrinkage = shrinkage;

    const auto order = presort_columns(v.x, v.n, v.d);
    std::vector<double> residual(v.y, v.y + v.n);
    for (double& r : residual) r -= state.base;

    TrainView stage_view = v;
    stage_view.y = residual.data();
    for (std::size_t it = 0; it < iterations; ++it) {
        const StumpState stump = best_stump(stage_view, nullptr, order);
        for (std::size_t i = 0; i < v.n; ++i) {
            residual[i] -= shrinkage * stump.predict_row(v.row(i));
        }
        state.stages.push_back(stump);
    }
    return state;
}

}  // namespace botreg::detail
