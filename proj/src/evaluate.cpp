#include "lohseg/evaluate.hpp"

#include <string>

#include "lohseg/errors.hpp"

namespace lohseg {

std::vector<RegionLabel> expand_labels(const Segmentation& seg) {
    std::vector<RegionLabel> out;
    if (seg.segments.empty()) return out;
    out.reserve(seg.segments.back().end + 1);
    for (const Segment& s : seg.segments)
        for (std::size_t i = s.start; i <= s.end; ++i) out.push_back(s.label);
    return out;
}

ConfusionCounts confusion(const std::vector<RegionLabel>& truth,
                          const Segmentation& predicted) {
    std::size_t expect = 0;
    for (const Segment& s : predicted.segments) {
        if (s.start != expect || s.end < s.start)
            throw ValidationError("segmentation does not partition the sequence");
        expect = s.end + 1;
    }
    if (expect != truth.size())
        throw ValidationError("segmentation covers " + std::to_string(expect) +
                              " observations, reference has " +
                              std::to_string(truth.size()));
    ConfusionCounts c;
    for (const Segment& s : predicted.segments) {
        const bool called = s.label == RegionLabel::Loh;
        for (std::size_t i = s.start; i <= s.end; ++i) {
            const bool actual = truth[i] == RegionLabel::Loh;
            if (actual && called)
                ++c.tp;
            else if (!actual && called)
                ++c.fp;
            else if (actual && !called)
                ++c.fn;
            else
                ++c.tn;
        }
    }
    return c;
}

Metrics metrics(const ConfusionCounts& c) {
    Metrics m;
    if (c.tp + c.fn > 0)
        m.sensitivity = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    if (c.tn + c.fp > 0)
        m.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
    return m;
}

Metrics compare_to_gold(const std::vector<RegionLabel>& gold,
                        const Segmentation& predicted) {
    return metrics(confusion(gold, predicted));
}

Metrics compare_to_gold(const Segmentation& gold, const Segmentation& predicted) {
    return metrics(confusion(expand_labels(gold), predicted));
}

} // namespace lohseg
