#include <algorithm>
#include <cmath>
#include <numeric>

#include "internal.hpp"

namespace botreg::detail {

TreeState fit_reptree(const TrainView& v, std::size_t min_leaf,
                      std::size_t max_depth, bool prune, RandomSource rng) {
    TreeGrowConfig cfg;
    cfg.min_leaf = min_leaf;
    cfg.max_depth = max_depth;

    std::vector<std::uint32_t> rows(v.n);
    std::iota(rows.begin(), rows.end(), 0u);
    const std::size_t n_hold = prune ? v.n / 4 : 0;
    if (n_hold == 0) {
        return grow_variance_tree(v, std::move(rows), cfg);
    }

    rng.shuffle(rows);
    std::vector<std::uint32_t> holdout(rows.begin(),
                                       rows.begin() + static_cast<std::ptrdiff_t>(n_hold));
    std::vector<std::uint32_t> grow(rows.begin() + static_cast<std::ptrdiff_t>(n_hold),
                                    rows.end());
    std::sort(holdout.begin(), holdout.end());
    std::sort(grow.begin(), grow.end());

    TreeState t = grow_variance_tree(v, std::move(grow), cfg);
    reduced_error_prune(t, v, holdout);
    return t;
}

ForestState fit_forest(const TrainView& v, std::size_t trees,
                       std::size_t features_per_split, bool bootstrap,
                       std::size_t min_leaf, std::size_t max_depth,
                       RandomSource rng) {
    std::size_t f = features_per_split;
    if (f == 0) {
        f = static_cast<std::size_t>(std::log2(static_cast<double>(v.d))) + 1;
    }
    f = std::min(f, v.d);

    ForestState forest;
    forest.trees.reserve(trees);
    for (std::size_t t = 0; t < trees; ++t) {
        RandomSource tree_rng = rng.derive(t);
        std::vector<std::uint32_t> rows(v.n);
        if (bootstrap) {
            for (auto& r : rows) {
                r = static_cast<std::uint32_t>(tree_rng.uniform_index(v.n));
            }
            std::sort(rows.begin(), rows.end());
        } else {
            std::iota(rows.begin(), rows.end(), 0u);
        }
        TreeGrowConfig cfg;
        cfg.min_leaf = min_leaf;
        cfg.max_depth = max_depth;
        cfg.features_per_split = f;
        cfg.rng = &tree_rng;
        forest.trees.push_back(grow_variance_tree(v, std::move(rows), cfg));
    }
    return forest;
}

}  // namespace botreg::detail
