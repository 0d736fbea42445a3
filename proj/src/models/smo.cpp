#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "botreg/errors.hpp"
#include "botreg/textio.hpp"
#include "internal.hpp"

namespace botreg::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
    double lo, up;
};

// Admissible bias range implied by one sample's dual coefficient: a bound
// beta pins the sample outside the tube on one side, an interior beta pins
// it exactly on the tube, beta = 0 leaves the whole tube.
Interval bias_interval(double beta, double f, double c, double eps) {
    if (beta == 0.0) return {f - eps, f + eps};
    if (beta >= c) return {-kInf, f - eps};
    if (beta <= -c) return {f + eps, kInf};
    if (beta > 0.0) return {f - eps, f - eps};
    return {f + eps, f + eps};
}

}  // namespace

// Support-vector regression with a linear kernel, solved on the dual
// coefficients beta_i in [-C, C] with sum(beta) = 0. Each step moves mass
// between the two samples whose bias requirements disagree the most; the
// step size minimizes the exact piecewise-quadratic objective change.
SmoState fit_smo(const TrainView& v, double c, double epsilon,
                 double tolerance, std::size_t max_updates) {
    const std::size_t n = v.n;
    std::vector<double> gram(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* ri = v.row(i);
        for (std::size_t j = 0; j <= i; ++j) {
            const double* rj = v.row(j);
            double dot = 0.0;
            for (std::size_t col = 0; col < v.d; ++col) dot += ri[col] * rj[col];
            gram[i * n + j] = dot;
            gram[j * n + i] = dot;
        }
    }

    std::vector<double> betas(n, 0.0);
    std::vector<double> f(v.y, v.y + n);  // f_i = y_i - w·x_i

    double b_low = 0.0, b_up = 0.0;
    for (std::size_t updates = 0;; ++updates) {
        b_low = -kInf;
        b_up = kInf;
        std::size_t i = 0, j = 0;
        for (std::size_t s = 0; s < n; ++s) {
            const Interval iv = bias_interval(betas[s], f[s], c, epsilon);
            if (iv.lo > b_low) {
                b_low = iv.lo;
                i = s;
            }
            if (iv.up < b_up) {
                b_up = iv.up;
                j = s;
            }
        }
        const double gap = b_low - b_up;
        if (gap < tolerance) break;
        if (updates >= max_updates) {
            throw ConvergenceError("svm optimizer hit the update cap (" +
                                   format_int(static_cast<std::int64_t>(max_updates)) +
                                   "); bias gap " + format_double(gap));
        }

        // Move delta from beta_j to beta_i inside the box.
        const double bi = betas[i], bj = betas[j];
        const double lo = std::max(-c - bi, bj - c);
        const double hi = std::min(c - bi, bj + c);
        const double eta =
            gram[i * n + i] + gram[j * n + j] - 2.0 * gram[i * n + j];
        const double fdiff = f[i] - f[j];

        auto phi = [&](double delta) {
            return 0.5 * eta * delta * delta - fdiff * delta +
                   epsilon * (std::abs(bi + delta) - std::abs(bi)) +
                   epsilon * (std::abs(bj - delta) - std::abs(bj));
        };

        // The objective restricted to this pair is piecewise quadratic with
        // breakpoints where either coefficient crosses zero; the minimum sits
        // at a box end, a breakpoint, or a per-segment stationary point.
        double cand[8];
        std::size_t n_cand = 0;
        cand[n_cand++] = lo;
        cand[n_cand++] = hi;
        if (-bi > lo && -bi < hi) cand[n_cand++] = -bi;
        if (bj > lo && bj < hi) cand[n_cand++] = bj;
        if (eta > 0.0) {
            for (const double s1 : {-1.0, 1.0}) {
                for (const double s2 : {-1.0, 1.0}) {
                    const double delta =
                        (fdiff - epsilon * s1 + epsilon * s2) / eta;
                    cand[n_cand++] = std::clamp(delta, lo, hi);
                }
            }
        }
        double best_delta = 0.0, best_phi = 0.0;
        for (std::size_t ci = 0; ci < n_cand; ++ci) {
            const double p = phi(cand[ci]);
            if (p < best_phi) {
                best_phi = p;
                best_delta = cand[ci];
            }
        }
        if (!(best_phi < 0.0)) {
            throw ConvergenceError("svm optimizer stalled; bias gap " +
                                   format_double(gap));
        }

        betas[i] = std::clamp(bi + best_delta, -c, c);
        betas[j] = std::clamp(bj - best_delta, -c, c);
        const double* gi = gram.data() + i * n;
        const double* gj = gram.data() + j * n;
        for (std::size_t s = 0; s < n; ++s) {
            f[s] -= best_delta * (gi[s] - gj[s]);
        }
    }

    SmoState state;
    state.betas = betas;
    state.weights.assign(v.d, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        if (betas[s] == 0.0) continue;
        const double* r = v.row(s);
        for (std::size_t col = 0; col < v.d; ++col) {
            state.weights[col] += betas[s] * r[col];
        }
    }

    // Bias from samples pinned exactly on the tube; if every coefficient is
    // at a bound or zero, any value between the final envelopes works.
    double sum = 0.0;
    std::size_t cnt = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (betas[s] != 0.0 && std::abs(betas[s]) < c) {
            sum += f[s] - (betas[s] > 0.0 ? epsilon : -epsilon);
            cnt++;
        }
    }
    state.bias = cnt ? sum / static_cast<double>(cnt) : 0.5 * (b_low + b_up);
    return state;
}

}  // namespace botreg::detail
