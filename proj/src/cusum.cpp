#include "lohseg/cusum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lohseg/errors.hpp"

namespace lohseg {

const char* to_string(RegionLabel label) {
    return label == RegionLabel::NonLoh ? "NonLOH" : "LOH";
}

RegionLabel region_label_from_string(const std::string& text) {
    if (text == "NonLOH" || text == "0") return RegionLabel::NonLoh;
    if (text == "LOH" || text == "1") return RegionLabel::Loh;
    throw ValidationError("unknown region label: '" + text + "'");
}

void SegmenterConfig::validate() const {
    if (!(delta >= 0.0 && delta < 1.0))
        throw ValidationError("delta must lie in [0,1), got " + std::to_string(delta));
    if (!(tolA > 0.0 && tolA < 1.0))
        throw ValidationError("tolerance level must lie in (0,1), got " +
                              std::to_string(tolA));
    if (minLen < 1) throw ValidationError("minimum length m must be >= 1");
    if (nSim < 100) throw ValidationError("nSim must be >= 100");
}

CusumTrace cusum_scan(const TBafSequence& data, const MixtureModel& assumed,
                      const MixtureModel& alternative, double threshold,
                      std::size_t startAt) {
    if (std::isnan(threshold) || threshold < 0.0)
        throw ValidationError("alarm threshold must be >= 0");
    if (startAt > data.size())
        throw ValidationError("scan start " + std::to_string(startAt) +
                              " beyond end of data");
    CusumTrace trace;
    trace.sums.push_back(0.0);
    double s = 0.0;
    for (std::size_t i = startAt; i < data.size(); ++i) {
        const double y = data[i];
        double inc = log_density(alternative, y) - log_density(assumed, y);
        if (std::isnan(inc)) inc = 0.0; // both masses zero: no information
        s = std::max(0.0, s + inc);
        trace.sums.push_back(s);
        if (s > threshold) {
            trace.alarmIndex = i;
            break;
        }
    }
    return trace;
}

std::size_t locate_change(const TBafSequence& data, const MixtureModel& assumed,
                          const MixtureModel& alternative, std::size_t i1,
                          std::size_t i2) {
    if (i1 > i2)
        throw ValidationError("locate_change requires i1 <= i2");
    if (i2 >= data.size())
        throw ValidationError("locate_change window beyond end of data");
    // Up to a constant, the objective at t is the prefix sum of
    // log_density(assumed) - log_density(alternative) over [i1, t).
    double cum = 0.0;
    double best = 0.0;
    std::size_t bestT = i1;
    for (std::size_t j = i1; j < i2; ++j) {
        double d = log_density(assumed, data[j]) - log_density(alternative, data[j]);
        if (std::isnan(d)) d = 0.0;
        cum += d;
        if (cum > best) {
            best = cum;
            bestT = j + 1;
        }
    }
    return bestT;
}

std::vector<double> calibrate_rm_sample(const MixtureModel& assumed,
                                        const MixtureModel& alternative,
                                        std::size_t m, std::size_t nSim,
                                        std::uint64_t seed) {
    if (m < 1) throw ValidationError("minimum length m must be >= 1");
    if (nSim < 100) throw ValidationError("nSim must be >= 100");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> rms;
    rms.reserve(nSim);
    for (std::size_t r = 0; r < nSim; ++r) {
        Rng rng(mix_seed(seed, r));
        const TBafSequence draw = sample(alternative, m, rng);
        const CusumTrace trace = cusum_scan(draw, assumed, alternative, inf, 0);
        double rm = 0.0;
        for (std::size_t i = 1; i < trace.sums.size(); ++i)
            rm = std::max(rm, trace.sums[i]);
        rms.push_back(rm);
    }
    return rms;
}

double calibrate_threshold(const MixtureModel& assumed,
                           const MixtureModel& alternative, std::size_t m,
                           double tolA, std::size_t nSim, std::uint64_t seed) {
    if (!(tolA > 0.0 && tolA < 1.0))
        throw ValidationError("tolerance level must lie in (0,1), got " +
                              std::to_string(tolA));
    std::vector<double> rms = calibrate_rm_sample(assumed, alternative, m, nSim, seed);
    std::sort(rms.begin(), rms.end());
    auto k = static_cast<std::size_t>(
        std::ceil((1.0 - tolA) * static_cast<double>(nSim)));
    if (k < 1) k = 1;
    if (k > nSim) k = nSim;
    return rms[k - 1];
}

Thresholds calibrate_thresholds(const MixtureModel& p0, const MixtureModel& p1,
                                const SegmenterConfig& cfg) {
    cfg.validate();
    Thresholds th;
    th.l0 = calibrate_threshold(p0, p1, cfg.minLen, cfg.tolA, cfg.nSim,
                                mix_seed(cfg.seed, 0xC0));
    th.l1 = calibrate_threshold(p1, p0, cfg.minLen, cfg.tolA, cfg.nSim,
                                mix_seed(cfg.seed, 0xC1));
    return th;
}

Segmentation segment_with_thresholds(const TBafSequence& data,
                                     const MixtureModel& p0,
                                     const MixtureModel& p1,
                                     const Thresholds& thresholds,
                                     RegionLabel initialState) {
    if (data.empty())
        throw ValidationError("segmentation requires at least one observation");
    const std::size_t n = data.size();
    Segmentation out;
    // An in-place flip can hand a segment the same label as its predecessor;
    // merging keeps the alternation invariant.
    const auto push = [&out](std::size_t start, std::size_t end, RegionLabel label) {
        if (!out.segments.empty() && out.segments.back().label == label) {
            out.segments.back().end = end;
            return;
        }
        out.segments.push_back({start, end, label});
    };
    RegionLabel state = initialState;
    std::size_t start = 0;
    const std::size_t maxScans = 3 * n + 8;
    std::size_t scans = 0;
    while (true) {
        if (++scans > maxScans)
            throw ComputationError("segmentation did not terminate: alarms without progress");
        const bool nonLoh = state == RegionLabel::NonLoh;
        const MixtureModel& assumed = nonLoh ? p0 : p1;
        const MixtureModel& alternative = nonLoh ? p1 : p0;
        const double threshold = nonLoh ? thresholds.l0 : thresholds.l1;
        const CusumTrace trace = cusum_scan(data, assumed, alternative, threshold, start);
        if (!trace.alarmIndex) {
            push(start, n - 1, state);
            break;
        }
        const std::size_t tau =
            locate_change(data, assumed, alternative, start, *trace.alarmIndex);
        if (tau > start) push(start, tau - 1, state);
        state = flip(state);
        start = tau;
    }
    for (std::size_t k = 1; k < out.segments.size(); ++k)
        out.changePoints.push_back(out.segments[k].start);
    return out;
}

SegmentRun segment_run(const TBafSequence& data, const MixtureModel& nonLoh,
                       const SegmenterConfig& cfg) {
    cfg.validate();
    nonLoh.validate();
    SegmentRun run;
    run.p0 = floored(nonLoh);
    run.p1 = floored(derive_loh_model(nonLoh, cfg.delta));
    run.thresholds = calibrate_thresholds(run.p0, run.p1, cfg);
    run.segmentation = segment_with_thresholds(data, run.p0, run.p1,
                                               run.thresholds, cfg.initialState);
    return run;
}

Segmentation segment(const TBafSequence& data, const MixtureModel& nonLoh,
                     const SegmenterConfig& cfg) {
    return segment_run(data, nonLoh, cfg).segmentation;
}

} // namespace lohseg
