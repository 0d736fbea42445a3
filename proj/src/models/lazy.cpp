#include <algorithm>
#include <cmath>
#include <vector>

#include "internal.hpp"

namespace botreg {

namespace detail {

IbkState fit_ibk(const TrainView& v, std::size_t k) {
    IbkState state;
    state.k = std::min(k, v.n);
    state.n = v.n;
    state.d = v.d;
    state.x.assign(v.x, v.x + v.n * v.d);
    state.y.assign(v.y, v.y + v.n);
    return state;
}

LwlState fit_lwl(const TrainView& v) {
    LwlState state;
    state.n = v.n;
    state.d = v.d;
    state.x.assign(v.x, v.x + v.n * v.d);
    state.y.assign(v.y, v.y + v.n);
    state.rebuild_order();
    return state;
}

}  // namespace detail

double IbkState::predict_row(const double* q) const {
    // Squared distances order the same as distances; ties break toward the
    // earlier training row.
    std::vector<std::pair<double, std::uint32_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* r = x.data() + i * d;
        double s = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            const double diff = q[c] - r[c];
            s += diff * diff;
        }
        dist[i] = {s, static_cast<std::uint32_t>(i)};
    }
    const auto kth = dist.begin() + static_cast<std::ptrdiff_t>(k);
    std::nth_element(dist.begin(), kth - 1, dist.end());
    std::sort(dist.begin(), kth);
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += y[dist[i].second];
    return s / static_cast<double>(k);
}

void LwlState::rebuild_order() {
    order = detail::presort_columns(x.data(), n, d);
}

double LwlState::predict_row(const double* q) const {
    // Linear kernel over the whole training set: w_i = 1 - dist_i/dist_max,
    // then a weighted stump on those weights. Degenerate weightings (single
    // row, or every row equally far) fall back to uniform.
    std::vector<double> w(n);
    double d_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = euclidean(q, x.data() + i * d, d);
        d_max = std::max(d_max, w[i]);
    }
    double total = 0.0;
    if (d_max > 0.0) {
        for (double& wi : w) {
            wi = std::max(0.0, 1.0 - wi / d_max);
            total += wi;
        }
    }
    detail::TrainView v{x.data(), y.data(), n, d};
    const StumpState stump =
        detail::best_stump(v, total > 0.0 ? w.data() : nullptr, order);
    return stump.predict_row(q);
}

}  // namespace botreg
