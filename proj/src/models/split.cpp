#include <algorithm>
#include <cmath>
#include <numeric>

#include "internal.hpp"

namespace botreg::detail {

namespace {

// Threshold strictly below the next value so the comparison x <= t routes
// rows the way the scan counted them, even when the midpoint rounds up.
double split_threshold(double v, double v_next) {
    const double mid = v + (v_next - v) * 0.5;
    return std::min(mid, std::nextafter(v_next, -1e308));
}

double sse_part(double w, double wy, double wy2) {
    if (w <= 0.0) return 0.0;
    return std::max(0.0, wy2 - wy * wy / w);
}

}  // namespace

std::vector<std::vector<std::uint32_t>> presort_columns(const double* x,
                                                        std::size_t n,
                                                        std::size_t d) {
    std::vector<std::vector<std::uint32_t>> order(d);
    for (std::size_t c = 0; c < d; ++c) {
        auto& idx = order[c];
        idx.resize(n);
        std::iota(idx.begin(), idx.end(), 0u);
        std::stable_sort(idx.begin(), idx.end(),
                         [x, d, c](std::uint32_t a, std::uint32_t b) {
                             return x[a * d + c] < x[b * d + c];
                         });
    }
    return order;
}

StumpState best_stump(const TrainView& v, const double* w,
                      const std::vector<std::vector<std::uint32_t>>& order) {
    double tw = 0.0, twy = 0.0, twy2 = 0.0;
    for (std::size_t i = 0; i < v.n; ++i) {
        const double wi = w ? w[i] : 1.0;
        tw += wi;
        twy += wi * v.y[i];
        twy2 += wi * v.y[i] * v.y[i];
    }

    StumpState best;
    if (tw <= 0.0) {
        // Degenerate weighting; callers are expected to guard this.
        double s = 0.0;
        for (std::size_t i = 0; i < v.n; ++i) s += v.y[i];
        best.left_value = v.n ? s / static_cast<double>(v.n) : 0.0;
        return best;
    }
    const double mean = twy / tw;
    best.left_value = mean;
    double best_sse = sse_part(tw, twy, twy2);

    for (std::size_t c = 0; c < v.d; ++c) {
        const auto& idx = order[c];
        double wl = 0.0, wyl = 0.0, wy2l = 0.0;
        for (std::size_t p = 0; p + 1 < v.n; ++p) {
            const std::uint32_t i = idx[p];
            const double wi = w ? w[i] : 1.0;
            wl += wi;
            wyl += wi * v.y[i];
            wy2l += wi * v.y[i] * v.y[i];
            const double val = v.x[i * v.d + c];
            const double nxt = v.x[idx[p + 1] * v.d + c];
            if (!(nxt > val)) continue;
            const double sse =
                sse_part(wl, wyl, wy2l) + sse_part(tw - wl, twy - wyl, twy2 - wy2l);
            if (sse < best_sse) {
                best_sse = sse;
                best.split = true;
                best.feature = c;
                best.threshold = split_threshold(val, nxt);
                best.left_value = wl > 0.0 ? wyl / wl : mean;
                const double wr = tw - wl;
                best.right_value = wr > 0.0 ? (twy - wyl) / wr : mean;
            }
        }
    }
    return best;
}

namespace {

struct NodeBest {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
};

// Squared-error split over one node's rows; scratch holds (value, row)
// pairs sorted per candidate feature.
NodeBest best_node_split_sse(const TrainView& v, const std::uint32_t* rows,
                             std::size_t m, const std::size_t* feats,
                             std::size_t n_feats, std::size_t min_leaf,
                             std::vector<std::pair<double, std::uint32_t>>& scratch) {
    double ty = 0.0, ty2 = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
        const double yi = v.y[rows[p]];
        ty += yi;
        ty2 += yi * yi;
    }
    NodeBest best;
    double best_sse = sse_part(static_cast<double>(m), ty, ty2);
    if (best_sse <= 0.0) return best;  // already pure

    scratch.resize(m);
    for (std::size_t fi = 0; fi < n_feats; ++fi) {
        const std::size_t c = feats[fi];
        for (std::size_t p = 0; p < m; ++p) {
            scratch[p] = {v.x[rows[p] * v.d + c], rows[p]};
        }
        std::sort(scratch.begin(), scratch.end());
        double syl = 0.0, sy2l = 0.0;
        for (std::size_t p = 0; p + 1 < m; ++p) {
            const double yi = v.y[scratch[p].second];
            syl += yi;
            sy2l += yi * yi;
            const std::size_t nl = p + 1;
            if (nl < min_leaf || m - nl < min_leaf) continue;
            if (!(scratch[p + 1].first > scratch[p].first)) continue;
            const double sse =
                sse_part(static_cast<double>(nl), syl, sy2l) +
                sse_part(static_cast<double>(m - nl), ty - syl, ty2 - sy2l);
            if (sse < best_sse) {
                best_sse = sse;
                best.found = true;
                best.feature = c;
                best.threshold = split_threshold(scratch[p].first, scratch[p + 1].first);
            }
        }
    }
    return best;
}

}  // namespace

TreeState grow_variance_tree(const TrainView& v,
                             std::vector<std::uint32_t> rows,
                             const TreeGrowConfig& cfg) {
    TreeState t;
    std::vector<std::pair<double, std::uint32_t>> scratch;
    std::vector<std::size_t> feats(v.d);
    std::iota(feats.begin(), feats.end(), std::size_t{0});
    const bool subsample =
        cfg.features_per_split > 0 && cfg.features_per_split < v.d;

    auto build = [&](auto&& self, std::uint32_t* begin, std::size_t m,
                     std::size_t depth) -> std::int32_t {
        double sy = 0.0;
        for (std::size_t p = 0; p < m; ++p) sy += v.y[begin[p]];
        const auto idx = static_cast<std::int32_t>(t.nodes.size());
        TreeNode node;
        node.value = m ? sy / static_cast<double>(m) : 0.0;
        t.nodes.push_back(node);

        if (m < 2 * cfg.min_leaf) return idx;
        if (cfg.max_depth > 0 && depth >= cfg.max_depth) return idx;

        std::size_t n_feats = v.d;
        if (subsample) {
            // Partial Fisher-Yates, then ascending so ties break the same
            // way as the full-feature scan.
            for (std::size_t j = 0; j < cfg.features_per_split; ++j) {
                const std::size_t pick =
                    j + static_cast<std::size_t>(
                            cfg.rng->uniform_index(v.d - j));
                std::swap(feats[j], feats[pick]);
            }
            std::sort(feats.begin(),
                      feats.begin() + static_cast<std::ptrdiff_t>(cfg.features_per_split));
            n_feats = cfg.features_per_split;
        }

        const NodeBest best = best_node_split_sse(v, begin, m, feats.data(),
                                                  n_feats, cfg.min_leaf, scratch);
        if (!best.found) return idx;

        auto* mid = std::stable_partition(
            begin, begin + m, [&](std::uint32_t r) {
                return v.x[r * v.d + best.feature] <= best.threshold;
            });
        const auto nl = static_cast<std::size_t>(mid - begin);
        t.nodes[idx].feature = static_cast<std::int32_t>(best.feature);
        t.nodes[idx].threshold = best.threshold;
        const std::int32_t l = self(self, begin, nl, depth + 1);
        const std::int32_t r = self(self, mid, m - nl, depth + 1);
        t.nodes[idx].left = l;
        t.nodes[idx].right = r;
        return idx;
    };
    build(build, rows.data(), rows.size(), 0);
    return t;
}

TreeState grow_gini_tree(const double* x, const std::uint32_t* labels,
                         std::size_t n, std::size_t d, std::size_t n_classes,
                         std::size_t min_leaf) {
    TreeState t;
    std::vector<std::uint32_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0u);
    std::vector<std::pair<double, std::uint32_t>> scratch;
    std::vector<std::uint32_t> cnt(n_classes), cnt_l(n_classes), cnt_r(n_classes);

    auto majority = [&](const std::vector<std::uint32_t>& c) {
        std::size_t arg = 0;
        for (std::size_t k = 1; k < c.size(); ++k) {
            if (c[k] > c[arg]) arg = k;
        }
        return arg;
    };

    auto build = [&](auto&& self, std::uint32_t* begin, std::size_t m) -> std::int32_t {
        std::fill(cnt.begin(), cnt.end(), 0u);
        for (std::size_t p = 0; p < m; ++p) cnt[labels[begin[p]]]++;
        const auto idx = static_cast<std::int32_t>(t.nodes.size());
        TreeNode node;
        node.value = static_cast<double>(majority(cnt));
        t.nodes.push_back(node);
        if (m < 2 * min_leaf) return idx;

        double sum_sq = 0.0;
        for (std::uint32_t c : cnt) sum_sq += static_cast<double>(c) * c;
        const double md = static_cast<double>(m);
        double best_imp = md - sum_sq / md;  // Gini impurity * m
        if (best_imp <= 0.0) return idx;     // pure node

        bool found = false;
        std::size_t best_feature = 0;
        double best_threshold = 0.0;
        scratch.resize(m);
        // Node class counts survive in cnt; cnt_l/cnt_r are rebuilt per
        // feature from it.
        for (std::size_t c = 0; c < d; ++c) {
            for (std::size_t p = 0; p < m; ++p) {
                scratch[p] = {x[begin[p] * d + c], begin[p]};
            }
            std::sort(scratch.begin(), scratch.end());
            std::fill(cnt_l.begin(), cnt_l.end(), 0u);
            cnt_r = cnt;
            double sq_l = 0.0, sq_r = sum_sq;
            for (std::size_t p = 0; p + 1 < m; ++p) {
                const std::uint32_t lbl = labels[scratch[p].second];
                sq_l += 2.0 * cnt_l[lbl] + 1.0;
                cnt_l[lbl]++;
                sq_r -= 2.0 * cnt_r[lbl] - 1.0;
                cnt_r[lbl]--;
                const std::size_t nl = p + 1;
                if (nl < min_leaf || m - nl < min_leaf) continue;
                if (!(scratch[p + 1].first > scratch[p].first)) continue;
                const double nld = static_cast<double>(nl);
                const double nrd = static_cast<double>(m - nl);
                const double imp = (nld - sq_l / nld) + (nrd - sq_r / nrd);
                if (imp < best_imp) {
                    best_imp = imp;
                    found = true;
                    best_feature = c;
                    best_threshold =
                        split_threshold(scratch[p].first, scratch[p + 1].first);
                }
            }
        }
        if (!found) return idx;

        auto* mid = std::stable_partition(begin, begin + m, [&](std::uint32_t r) {
            return x[r * d + best_feature] <= best_threshold;
        });
        const auto nl = static_cast<std::size_t>(mid - begin);
        t.nodes[idx].feature = static_cast<std::int32_t>(best_feature);
        t.nodes[idx].threshold = best_threshold;
        const std::int32_t l = self(self, begin, nl);
        const std::int32_t r = self(self, mid, m - nl);
        t.nodes[idx].left = l;
        t.nodes[idx].right = r;
        return idx;
    };
    build(build, rows.data(), rows.size());
    return t;
}

void reduced_error_prune(TreeState& t, const TrainView& v,
                         const std::vector<std::uint32_t>& holdout) {
    std::vector<std::uint32_t> rows = holdout;

    auto prune = [&](auto&& self, std::size_t idx, std::uint32_t* begin,
                     std::size_t m) -> double {
        TreeNode& node = t.nodes[idx];
        double leaf_sse = 0.0;
        for (std::size_t p = 0; p < m; ++p) {
            const double e = v.y[begin[p]] - node.value;
            leaf_sse += e * e;
        }
        if (node.feature < 0) return leaf_sse;

        auto* mid = std::stable_partition(begin, begin + m, [&](std::uint32_t r) {
            return v.x[r * v.d + static_cast<std::size_t>(node.feature)] <=
                   node.threshold;
        });
        const auto nl = static_cast<std::size_t>(mid - begin);
        const double child_sse =
            self(self, static_cast<std::size_t>(node.left), begin, nl) +
            self(self, static_cast<std::size_t>(node.right), mid, m - nl);
        if (child_sse > leaf_sse) {
            node.feature = -1;
            node.left = node.right = -1;
            return leaf_sse;
        }
        return child_sse;
    };
    prune(prune, 0, rows.data(), rows.size());
    compact_tree(t);
}

void compact_tree(TreeState& t) {
    std::vector<TreeNode> out;
    out.reserve(t.nodes.size());
    auto copy = [&](auto&& self, std::size_t old) -> std::int32_t {
        const auto idx = static_cast<std::int32_t>(out.size());
        out.push_back(t.nodes[old]);
        if (t.nodes[old].feature >= 0) {
            const std::int32_t l =
                self(self, static_cast<std::size_t>(t.nodes[old].left));
            const std::int32_t r =
                self(self, static_cast<std::size_t>(t.nodes[old].right));
            out[static_cast<std::size_t>(idx)].left = l;
            out[static_cast<std::size_t>(idx)].right = r;
        }
        return idx;
    };
    copy(copy, 0);
    t.nodes = std::move(out);
}

}  // namespace botreg::detail
