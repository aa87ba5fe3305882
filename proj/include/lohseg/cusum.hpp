#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lohseg/model.hpp"

namespace lohseg {

enum class RegionLabel { NonLoh, Loh };

const char* to_string(RegionLabel label);
RegionLabel region_label_from_string(const std::string& text);
inline RegionLabel flip(RegionLabel label) {
    return label == RegionLabel::NonLoh ? RegionLabel::Loh : RegionLabel::NonLoh;
}

struct SegmenterConfig {
    double delta = 0.01;
    // Tolerance level of the R_m quantile rule.
    double tolA = 0.05;
    // Minimum segment length m the thresholds are calibrated for.
    std::size_t minLen = 25;
    std::size_t nSim = 10000;
    std::uint64_t seed = 0;
    RegionLabel initialState = RegionLabel::NonLoh;

    void validate() const;
};

struct Thresholds {
    // Alarm threshold while scanning under the non-LOH model p0.
    double l0 = 0.0;
    // Alarm threshold while scanning under the LOH model p1.
    double l1 = 0.0;
};

struct Segment {
    std::size_t start = 0; // inclusive
    std::size_t end = 0;   // inclusive
    RegionLabel label = RegionLabel::NonLoh;
};

struct Segmentation {
    // Contiguous, non-overlapping, exhaustive over [0, n-1]; labels alternate.
    std::vector<Segment> segments;
    // Start indices of all segments after the first.
    std::vector<std::size_t> changePoints;
};

struct CusumTrace {
    // S_0 .. S_k with sums[0] == 0 and every entry >= 0. Ends at the alarming
    // sum, or at the end of the sequence when no alarm fires.
    std::vector<double> sums;
    // Data index of the observation whose sum first exceeds the threshold.
    std::optional<std::size_t> alarmIndex;
};

// One CUSUM pass from startAt: s_i = log_density(alternative, y_i) -
// log_density(assumed, y_i), S_i = max(0, S_{i-1} + s_i), alarm on the first
// S_i strictly above threshold. startAt == data.size() yields sums == {0}.
CusumTrace cusum_scan(const TBafSequence& data, const MixtureModel& assumed,
                      const MixtureModel& alternative, double threshold,
                      std::size_t startAt);

// Maximum-likelihood change point over [i1, i2]: argmax over t of
// sum_{j<t} log_density(assumed, y_j) + sum_{j>=t} log_density(alternative, y_j),
// one pass via prefix sums, ties broken by the smallest t.
std::size_t locate_change(const TBafSequence& data, const MixtureModel& assumed,
                          const MixtureModel& alternative, std::size_t i1,
                          std::size_t i2);

// The nSim simulated R_m values behind the threshold quantile, in replicate
// order. Replicate r draws from its own substream mix_seed(seed, r), so the
// sample for a smaller m is a pathwise prefix of the sample for a larger m.
std::vector<double> calibrate_rm_sample(const MixtureModel& assumed,
                                        const MixtureModel& alternative,
                                        std::size_t m, std::size_t nSim,
                                        std::uint64_t seed);

// Empirical (1 - tolA) quantile of R_m under the alternative model, defined
// as the ceil((1-tolA)*nSim)-th order statistic.
double calibrate_threshold(const MixtureModel& assumed,
                           const MixtureModel& alternative, std::size_t m,
                           double tolA, std::size_t nSim, std::uint64_t seed);

// l0 from (assumed=p0, alternative=p1), l1 with the roles swapped. The two
// calibrations use independent substreams of cfg.seed.
Thresholds calibrate_thresholds(const MixtureModel& p0, const MixtureModel& p1,
                                const SegmenterConfig& cfg);

// Alternating CUSUM segmentation with precomputed thresholds. p0 and p1 must
// already be floored. On alarm at i2 the change point tau is located over
// [i1, i2]; the current segment closes at tau-1 and scanning restarts at tau
// under the opposite model. tau == i1 flips the label in place.
Segmentation segment_with_thresholds(const TBafSequence& data,
                                     const MixtureModel& p0,
                                     const MixtureModel& p1,
                                     const Thresholds& thresholds,
                                     RegionLabel initialState);

// Everything segment() computed, for callers that need the intermediates.
struct SegmentRun {
    Segmentation segmentation;
    Thresholds thresholds;
    MixtureModel p0;
    MixtureModel p1;
};

SegmentRun segment_run(const TBafSequence& data, const MixtureModel& nonLoh,
                       const SegmenterConfig& cfg);

// Floors nonLoh, derives the LOH model with cfg.delta, calibrates both
// thresholds, and runs the alternating scan from cfg.initialState.
Segmentation segment(const TBafSequence& data, const MixtureModel& nonLoh,
                     const SegmenterConfig& cfg);

} // namespace lohseg
