#pragma once

// Shared pieces of the model implementations. Everything here works on raw
// arrays; the public fit() in fit.cpp handles validation and rescaling.

#include <cstdint>
#include <vector>

#include "botreg/models.hpp"
#include "botreg/numeric.hpp"

namespace botreg::detail {

struct TrainView {
    const double* x = nullptr;  // n * d, row-major
    const double* y = nullptr;
    std::size_t n = 0;
    std::size_t d = 0;

    const double* row(std::size_t i) const { return x + i * d; }
};

// order[c] = row indices sorted ascending by column c (ties by row index).
std::vector<std::vector<std::uint32_t>> presort_columns(const double* x,
                                                        std::size_t n,
                                                        std::size_t d);

// Best single split by weighted squared error over presorted columns.
// w may be null (uniform). Returns split=false (mean-only) when no split
// strictly reduces the error. Total weight must be positive.
StumpState best_stump(const TrainView& v, const double* w,
                      const std::vector<std::vector<std::uint32_t>>& order);

struct TreeGrowConfig {
    std::size_t min_leaf = 1;
    std::size_t max_depth = 0;           // 0 = unbounded
    std::size_t features_per_split = 0;  // 0 = consider every feature
    RandomSource* rng = nullptr;         // needed when subsampling features
};

// Variance-reduction tree over the given rows (duplicates act as repeats).
TreeState grow_variance_tree(const TrainView& v,
                             std::vector<std::uint32_t> rows,
                             const TreeGrowConfig& cfg);

// Classification tree on integer labels, splitting by Gini impurity.
// Leaf value = majority label (ties to the smaller label).
TreeState grow_gini_tree(const double* x, const std::uint32_t* labels,
                         std::size_t n, std::size_t d, std::size_t n_classes,
                         std::size_t min_leaf);

// Reduced-error pruning: collapse any subtree whose holdout squared error
// exceeds that of a leaf at its root. Subtrees seeing no holdout rows stay.
void reduced_error_prune(TreeState& t, const TrainView& v,
                         const std::vector<std::uint32_t>& holdout);

// Drop unreachable nodes (after pruning), keeping DFS order.
void compact_tree(TreeState& t);

// Column names a model carries: the frozen list when the width matches the
// feature set, otherwise synthetic c0..c{d-1} (ad-hoc matrices).
std::vector<std::string> names_for(FeatureSetTag set, std::size_t d);

ZeroRState fit_zero_r(const double* y, std::size_t n);
LinearState fit_linear(const TrainView& v, double ridge);
StumpState fit_stump(const TrainView& v);
AdditiveState fit_additive(const TrainView& v, std::size_t iterations,
                           double shrinkage);
IbkState fit_ibk(const TrainView& v, std::size_t k);
LwlState fit_lwl(const TrainView& v);
TreeState fit_reptree(const TrainView& v, std::size_t min_leaf,
                      std::size_t max_depth, bool prune, RandomSource rng);
ForestState fit_forest(const TrainView& v, std::size_t trees,
                       std::size_t features_per_split, bool bootstrap,
                       std::size_t min_leaf, std::size_t max_depth,
                       RandomSource rng);
DiscretizeState fit_discretize(const TrainView& v, std::size_t bins);
GpState fit_gp(const TrainView& v, double gamma, double noise);
SmoState fit_smo(const TrainView& v, double c, double epsilon,
                 double tolerance, std::size_t max_updates);

}  // namespace botreg::detail
