#include <vector>

#include "internal.hpp"

namespace botreg::detail {

// Ridge regression on centered inputs/targets; the intercept absorbs the
// means and stays unpenalized.
LinearState fit_linear(const TrainView& v, double ridge) {
    const double nd = static_cast<double>(v.n);
    std::vector<double> x_mean(v.d, 0.0);
    double y_mean = 0.0;
    for (std::size_t i = 0; i < v.n; ++i) {
        const double* r = v.row(i);
        for (std::size_t c = 0; c < v.d; ++c) x_mean[c] += r[c];
        y_mean += v.y[i];
    }
    for (double& m : x_mean) m /= nd;
    y_mean /= nd;

    SquareMatrix a(v.d);
    std::vector<double> b(v.d, 0.0);
    std::vector<double> xc(v.d);
    for (std::size_t i = 0; i < v.n; ++i) {
        const double* r = v.row(i);
        for (std::size_t c = 0; c < v.d; ++c) xc[c] = r[c] - x_mean[c];
        const double yc = v.y[i] - y_mean;
        for (std::size_t p = 0; p < v.d; ++p) {
            b[p] += xc[p] * yc;
            for (std::size_t q = 0; q <= p; ++q) {
                a.at(p, q) += xc[p] * xc[q];
            }
        }
    }
    for (std::size_t p = 0; p < v.d; ++p) {
        a.at(p, p) += ridge;
        for (std::size_t q = 0; q < p; ++q) a.at(q, p) = a.at(p, q);
    }

    LinearState state;
    state.weights = solve_spd(a, b);
    state.intercept = y_mean;
    for (std::size_t c = 0; c < v.d; ++c) {
        state.intercept -= state.weights[c] * x_mean[c];
    }
    return state;
}

}  // namespace botreg::detail
