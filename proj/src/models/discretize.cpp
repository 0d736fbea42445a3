#include <algorithm>
#include <cmath>
#include <vector>

#include "internal.hpp"

namespace botreg::detail {

// Equal-width binning of the target over [min, max], a Gini-split
// classification tree over the bin labels, and the training mean of each
// bin as the regression output.
DiscretizeState fit_discretize(const TrainView& v, std::size_t bins) {
    DiscretizeState state;
    double lo = v.y[0], hi = v.y[0];
    for (std::size_t i = 1; i < v.n; ++i) {
        lo = std::min(lo, v.y[i]);
        hi = std::max(hi, v.y[i]);
    }
    state.lo = lo;
    state.width = (hi - lo) / static_cast<double>(bins);

    std::vector<std::uint32_t> labels(v.n, 0u);
    if (state.width > 0.0) {
        for (std::size_t i = 0; i < v.n; ++i) {
            auto b = static_cast<std::size_t>((v.y[i] - lo) / state.width);
            labels[i] = static_cast<std::uint32_t>(std::min(b, bins - 1));
        }
    }

    double overall = 0.0;
    for (std::size_t i = 0; i < v.n; ++i) overall += v.y[i];
    overall /= static_cast<double>(v.n);

    std::vector<double> sums(bins, 0.0);
    std::vector<std::size_t> counts(bins, 0);
    for (std::size_t i = 0; i < v.n; ++i) {
        sums[labels[i]] += v.y[i];
        counts[labels[i]]++;
    }
    state.bin_values.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        // Empty bins are unreachable by the tree; give them the overall
        // mean anyway so the state stays well-defined.
        state.bin_values[b] =
            counts[b] ? sums[b] / static_cast<double>(counts[b]) : overall;
    }

    state.tree = grow_gini_tree(v.x, labels.data(), v.n, v.d, bins, 2);
    return state;
}

}  // namespace botreg::detail
