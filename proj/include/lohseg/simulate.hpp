#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lohseg/cusum.hpp"
#include "lohseg/evaluate.hpp"
#include "lohseg/model.hpp"
#include "lohseg/rng.hpp"

namespace lohseg {

struct ScenarioConfig {
    std::size_t totalLen = 1000;
    std::size_t lohStart = 500; // 0-based
    std::size_t lohLen = 0;
    double purity = 1.0;
    // Standard deviation of additive Gaussian BAF noise.
    double noiseSd = 0.03;
    // Probability a locus is germline-heterozygous.
    double hetRate = 0.33;
    std::uint64_t seed = 0;

    void validate() const;
};

struct LabeledSequence {
    std::vector<double> baf;
    std::vector<RegionLabel> truth;
};

// Purity-aware generative model. Heterozygous loci have mean BAF 0.5 outside
// the LOH region and (1 +- purity)/2 inside it (lost allele equiprobable);
// homozygous loci have mean 0 or 1 everywhere. Non-extreme means get Gaussian
// noise clamped to [0,1]; extreme means emit the exact atom w.p. 0.9, else
// |noise| away from the boundary.
LabeledSequence generate(const ScenarioConfig& cfg, Rng& rng);

// Observed BAF values per population, for resampling with replacement.
struct ResamplePools {
    std::vector<double> nonLoh;
    std::vector<double> loh;
};

// Same truth geometry as generate(), values drawn with replacement from the
// matching pool. A region type present in cfg requires a non-empty pool.
LabeledSequence generate_resample(const ScenarioConfig& cfg,
                                  const ResamplePools& pools, Rng& rng);

struct StudyCell {
    std::size_t lohLen = 0;
    double purity = 1.0;
    std::size_t minLen = 0;
    std::size_t replicates = 0;
    // Means and standard errors over the replicates where the ratio was
    // defined; unset when no replicate defined it (se also needs >= 2).
    std::optional<double> sensMean;
    std::optional<double> sensSe;
    std::size_t sensCount = 0;
    std::optional<double> specMean;
    std::optional<double> specSe;
    std::size_t specCount = 0;
    ConfusionCounts pooled;
    Metrics pooledMetrics;
};

struct StudyConfig {
    std::vector<std::size_t> lohLens = {25, 50, 100};
    std::vector<double> purities = {1.0, 0.79, 0.5};
    std::vector<std::size_t> minLens = {10, 25, 50};
    std::size_t replicates = 100;
    // Length of the pure non-LOH training sequence fitted per cell.
    std::size_t trainLen = 5000;
    // Geometry/noise template; lohLen and purity are filled per cell.
    ScenarioConfig base;
    // delta/tolA/nSim template; minLen and seed are filled per cell.
    SegmenterConfig segmenter;
    // Master seed; every cell derives its training, calibration, and
    // replicate substreams from it.
    std::uint64_t seed = 0;

    void validate() const;
};

struct StudyResult {
    // Cells in emission order: minLen outermost, then lohLen, then purity.
    std::vector<StudyCell> cells;
};

// For each grid cell: generate a fresh non-LOH training sequence, fit the
// mixture, calibrate thresholds, then segment and score each replicate.
StudyResult run_study(const StudyConfig& cfg);

} // namespace lohseg
