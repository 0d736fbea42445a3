#include <cmath>
#include <vector>

#include "internal.hpp"

namespace botreg {

namespace detail {

// RBF-kernel regression on centered targets: alpha = (K + noise·I)^-1 yc.
GpState fit_gp(const TrainView& v, double gamma, double noise) {
    GpState state;
    state.gamma = gamma > 0.0 ? gamma : 1.0 / static_cast<double>(v.d);
    state.noise = noise;
    state.n = v.n;
    state.d = v.d;
    state.x.assign(v.x, v.x + v.n * v.d);

    double mean = 0.0;
    for (std::size_t i = 0; i < v.n; ++i) mean += v.y[i];
    mean /= static_cast<double>(v.n);
    state.y_mean = mean;

    // ||xi - xj||^2 = ni + nj - 2 xi·xj; only the lower triangle is needed
    // by the factorization.
    std::vector<double> norms(v.n);
    for (std::size_t i = 0; i < v.n; ++i) {
        const double* r = v.row(i);
        double s = 0.0;
        for (std::size_t c = 0; c < v.d; ++c) s += r[c] * r[c];
        norms[i] = s;
    }
    SquareMatrix k(v.n);
    for (std::size_t i = 0; i < v.n; ++i) {
        const double* ri = v.row(i);
        for (std::size_t j = 0; j < i; ++j) {
            const double* rj = v.row(j);
            double dot = 0.0;
            for (std::size_t c = 0; c < v.d; ++c) dot += ri[c] * rj[c];
            const double d2 = std::max(0.0, norms[i] + norms[j] - 2.0 * dot);
            k.at(i, j) = std::exp(-state.gamma * d2);
        }
        k.at(i, i) = 1.0 + noise;
    }

    cholesky_in_place(k);
    std::vector<double> yc(v.n);
    for (std::size_t i = 0; i < v.n; ++i) yc[i] = v.y[i] - mean;
    state.alpha = cholesky_solve(k, yc);
    return state;
}

}  // namespace detail

double GpState::predict_row(const double* q) const {
    double s = y_mean;
    for (std::size_t i = 0; i < n; ++i) {
        const double* r = x.data() + i * d;
        double d2 = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            const double diff = q[c] - r[c];
            d2 += diff * diff;
        }
        s += alpha[i] * std::exp(-gamma * d2);
    }
    return s;
}

}  // namespace botreg
