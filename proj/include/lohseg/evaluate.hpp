#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lohseg/cusum.hpp"

namespace lohseg {

// Per-observation tallies with LOH as the positive class.
struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;
};

inline ConfusionCounts operator+(const ConfusionCounts& a, const ConfusionCounts& b) {
    return {a.tp + b.tp, a.fp + b.fp, a.tn + b.tn, a.fn + b.fn};
}

// Empty classes leave the corresponding ratio unset, never zeroed.
struct Metrics {
    std::optional<double> sensitivity;
    std::optional<double> specificity;
};

// Per-observation labels of a segmentation, in index order.
std::vector<RegionLabel> expand_labels(const Segmentation& seg);

// Requires predicted to cover exactly [0, truth.size() - 1].
ConfusionCounts confusion(const std::vector<RegionLabel>& truth,
                          const Segmentation& predicted);

Metrics metrics(const ConfusionCounts& c);

Metrics compare_to_gold(const std::vector<RegionLabel>& gold,
                        const Segmentation& predicted);
Metrics compare_to_gold(const Segmentation& gold, const Segmentation& predicted);

} // namespace lohseg
