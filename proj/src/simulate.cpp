#include "lohseg/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "lohseg/errors.hpp"
#include "lohseg/estimation.hpp"

namespace lohseg {

void ScenarioConfig::validate() const {
    if (totalLen < 1) throw ValidationError("totalLen must be >= 1");
    if (lohLen > totalLen || lohStart > totalLen - lohLen)
        throw ValidationError("LOH region [" + std::to_string(lohStart) + ", " +
                              std::to_string(lohStart + lohLen) +
                              ") exceeds total length " + std::to_string(totalLen));
    if (!(purity > 0.0 && purity <= 1.0))
        throw ValidationError("purity must lie in (0,1], got " + std::to_string(purity));
    if (!(noiseSd >= 0.0) || !std::isfinite(noiseSd))
        throw ValidationError("noiseSd must be a finite real >= 0, got " +
                              std::to_string(noiseSd));
    if (!(hetRate >= 0.0 && hetRate <= 1.0))
        throw ValidationError("hetRate must lie in [0,1], got " + std::to_string(hetRate));
}

LabeledSequence generate(const ScenarioConfig& cfg, Rng& rng) {
    cfg.validate();
    LabeledSequence out;
    out.baf.reserve(cfg.totalLen);
    out.truth.reserve(cfg.totalLen);
    for (std::size_t i = 0; i < cfg.totalLen; ++i) {
        const bool inLoh = i >= cfg.lohStart && i < cfg.lohStart + cfg.lohLen;
        out.truth.push_back(inLoh ? RegionLabel::Loh : RegionLabel::NonLoh);
        double mean;
        if (rng.bernoulli(cfg.hetRate)) {
            if (inLoh)
                mean = rng.bernoulli(0.5) ? (1.0 + cfg.purity) / 2.0
                                          : (1.0 - cfg.purity) / 2.0;
            else
                mean = 0.5;
        } else {
            mean = rng.bernoulli(0.5) ? 1.0 : 0.0;
        }
        double v;
        if (mean == 0.0 || mean == 1.0) {
            if (rng.bernoulli(0.9)) {
                v = mean;
            } else {
                const double off = std::abs(rng.normal() * cfg.noiseSd);
                v = mean == 0.0 ? off : 1.0 - off;
            }
        } else {
            v = mean + rng.normal() * cfg.noiseSd;
        }
        out.baf.push_back(std::clamp(v, 0.0, 1.0));
    }
    return out;
}

LabeledSequence generate_resample(const ScenarioConfig& cfg,
                                  const ResamplePools& pools, Rng& rng) {
    cfg.validate();
    if (cfg.lohLen > 0 && pools.loh.empty())
        throw ValidationError("resample pool for the LOH population is empty");
    if (cfg.lohLen < cfg.totalLen && pools.nonLoh.empty())
        throw ValidationError("resample pool for the non-LOH population is empty");
    LabeledSequence out;
    out.baf.reserve(cfg.totalLen);
    out.truth.reserve(cfg.totalLen);
    for (std::size_t i = 0; i < cfg.totalLen; ++i) {
        const bool inLoh = i >= cfg.lohStart && i < cfg.lohStart + cfg.lohLen;
        out.truth.push_back(inLoh ? RegionLabel::Loh : RegionLabel::NonLoh);
        const std::vector<double>& pool = inLoh ? pools.loh : pools.nonLoh;
        out.baf.push_back(pool[rng.index(pool.size())]);
    }
    return out;
}

void StudyConfig::validate() const {
    if (lohLens.empty() || purities.empty() || minLens.empty())
        throw ValidationError("study grid must be non-empty in l, purity, and m");
    if (replicates < 1) throw ValidationError("replicates must be >= 1");
    if (trainLen < 10) throw ValidationError("training length must be >= 10");
    base.validate();
    segmenter.validate();
    for (std::size_t l : lohLens) {
        ScenarioConfig scn = base;
        scn.lohLen = l;
        scn.validate();
    }
    for (double p : purities)
        if (!(p > 0.0 && p <= 1.0))
            throw ValidationError("purity must lie in (0,1], got " + std::to_string(p));
}

namespace {

StudyCell run_cell(const StudyConfig& cfg, std::size_t l, double purity,
                   std::size_t m, std::uint64_t cellSeed) {
    ScenarioConfig trainCfg = cfg.base;
    trainCfg.totalLen = cfg.trainLen;
    trainCfg.lohStart = 0;
    trainCfg.lohLen = 0;
    trainCfg.seed = mix_seed(cellSeed, 0);
    Rng trainRng(trainCfg.seed);
    const LabeledSequence train = generate(trainCfg, trainRng);
    const MixtureModel fitted = fit_em(tbaf_transform(train.baf)).model;

    SegmenterConfig segCfg = cfg.segmenter;
    segCfg.minLen = m;
    segCfg.seed = mix_seed(cellSeed, 1);
    const MixtureModel p0 = floored(fitted);
    const MixtureModel p1 = floored(derive_loh_model(fitted, segCfg.delta));
    const Thresholds thresholds = calibrate_thresholds(p0, p1, segCfg);

    StudyCell cell;
    cell.lohLen = l;
    cell.purity = purity;
    cell.minLen = m;
    cell.replicates = cfg.replicates;
    double sensSum = 0.0, sensSq = 0.0, specSum = 0.0, specSq = 0.0;
    for (std::size_t r = 0; r < cfg.replicates; ++r) {
        ScenarioConfig scn = cfg.base;
        scn.lohLen = l;
        scn.purity = purity;
        scn.seed = mix_seed(cellSeed, 2 + r);
        Rng rng(scn.seed);
        const LabeledSequence rep = generate(scn, rng);
        const Segmentation seg =
            segment_with_thresholds(tbaf_transform(rep.baf), p0, p1, thresholds,
                                    segCfg.initialState);
        const ConfusionCounts c = confusion(rep.truth, seg);
        cell.pooled = cell.pooled + c;
        const Metrics mt = metrics(c);
        if (mt.sensitivity) {
            sensSum += *mt.sensitivity;
            sensSq += *mt.sensitivity * *mt.sensitivity;
            ++cell.sensCount;
        }
        if (mt.specificity) {
            specSum += *mt.specificity;
            specSq += *mt.specificity * *mt.specificity;
            ++cell.specCount;
        }
    }
    const auto finish = [](double sum, double sq, std::size_t count,
                           std::optional<double>& mean, std::optional<double>& se) {
        if (count == 0) return;
        const double nd = static_cast<double>(count);
        mean = sum / nd;
        if (count > 1) {
            const double var = std::max(0.0, (sq - sum * sum / nd) / (nd - 1.0));
            se = std::sqrt(var / nd);
        }
    };
    finish(sensSum, sensSq, cell.sensCount, cell.sensMean, cell.sensSe);
    finish(specSum, specSq, cell.specCount, cell.specMean, cell.specSe);
    cell.pooledMetrics = metrics(cell.pooled);
    return cell;
}

} // namespace

StudyResult run_study(const StudyConfig& cfg) {
    cfg.validate();
    StudyResult result;
    std::size_t cellIndex = 0;
    for (std::size_t m : cfg.minLens)
        for (std::size_t l : cfg.lohLens)
            for (double purity : cfg.purities)
                result.cells.push_back(
                    run_cell(cfg, l, purity, m, mix_seed(cfg.seed, cellIndex++)));
    return result;
}

} // namespace lohseg
