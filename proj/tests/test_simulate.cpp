#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <vector>

#include "lohseg/errors.hpp"
#include "lohseg/rng.hpp"
#include "lohseg/simulate.hpp"

using lohseg::LabeledSequence;
using lohseg::RegionLabel;
using lohseg::ScenarioConfig;

namespace {

LabeledSequence run(const ScenarioConfig& cfg) {
    lohseg::Rng rng(cfg.seed);
    return lohseg::generate(cfg, rng);
}

} // namespace

TEST_CASE("generated truth matches the configured geometry") {
    ScenarioConfig cfg;
    cfg.totalLen = 400;
    cfg.lohStart = 120;
    cfg.lohLen = 80;
    cfg.seed = 1;
    const LabeledSequence seq = run(cfg);
    REQUIRE(seq.baf.size() == 400);
    REQUIRE(seq.truth.size() == 400);
    for (std::size_t i = 0; i < seq.truth.size(); ++i) {
        const bool inLoh = i >= 120 && i < 200;
        CHECK(seq.truth[i] == (inLoh ? RegionLabel::Loh : RegionLabel::NonLoh));
    }
}

TEST_CASE("generation is deterministic per seed") {
    ScenarioConfig cfg;
    cfg.totalLen = 300;
    cfg.lohLen = 50;
    cfg.lohStart = 100;
    cfg.seed = 9;
    const LabeledSequence a = run(cfg);
    const LabeledSequence b = run(cfg);
    CHECK(a.baf == b.baf);
    cfg.seed = 10;
    const LabeledSequence c = run(cfg);
    CHECK(a.baf != c.baf);
}

TEST_CASE("values stay inside the unit interval") {
    ScenarioConfig cfg;
    cfg.totalLen = 20000;
    cfg.lohStart = 5000;
    cfg.lohLen = 10000;
    cfg.noiseSd = 0.2; // wide noise exercises the clamp
    cfg.seed = 3;
    const LabeledSequence seq = run(cfg);
    std::size_t outside = 0;
    for (double v : seq.baf)
        if (!(v >= 0.0 && v <= 1.0)) ++outside;
    CHECK(outside == 0);
}

TEST_CASE("non-loh band structure follows the het rate") {
    ScenarioConfig cfg;
    cfg.totalLen = 50000;
    cfg.lohLen = 0;
    cfg.lohStart = 0;
    cfg.hetRate = 0.33;
    cfg.seed = 4;
    const LabeledSequence seq = run(cfg);

    std::size_t mid = 0, extreme = 0, atoms = 0;
    for (double v : seq.baf) {
        if (std::abs(v - 0.5) < 0.25) ++mid;
        else ++extreme;
        if (v == 0.0 || v == 1.0) ++atoms;
    }
    const double n = static_cast<double>(cfg.totalLen);
    // Heterozygous loci sit near 1/2, homozygous near the edges.
    CHECK(mid / n == doctest::Approx(0.33).epsilon(0.03));
    CHECK(extreme / n == doctest::Approx(0.67).epsilon(0.02));
    // Extreme means emit the exact atom nine times out of ten.
    CHECK(atoms / n == doctest::Approx(0.9 * 0.67).epsilon(0.03));
}

TEST_CASE("full purity empties the central band inside the region") {
    ScenarioConfig cfg;
    cfg.totalLen = 20000;
    cfg.lohStart = 0;
    cfg.lohLen = 20000;
    cfg.purity = 1.0;
    cfg.seed = 5;
    const LabeledSequence seq = run(cfg);
    std::size_t mid = 0;
    for (double v : seq.baf)
        if (std::abs(v - 0.5) < 0.25) ++mid;
    CHECK(static_cast<double>(mid) / cfg.totalLen < 0.001);
}

TEST_CASE("half purity pulls het loci to the quarter bands") {
    ScenarioConfig cfg;
    cfg.totalLen = 50000;
    cfg.lohStart = 0;
    cfg.lohLen = 50000;
    cfg.purity = 0.5;
    cfg.seed = 6;
    const LabeledSequence seq = run(cfg);
    // Het means move to (1 +- 0.5)/2 = {0.25, 0.75}.
    std::size_t quarterBand = 0;
    for (double v : seq.baf) {
        const double d = std::min(std::abs(v - 0.25), std::abs(v - 0.75));
        if (d < 0.1) ++quarterBand;
    }
    CHECK(static_cast<double>(quarterBand) / cfg.totalLen ==
          doctest::Approx(0.33).epsilon(0.05));
}

TEST_CASE("scenario validation") {
    ScenarioConfig cfg;
    cfg.totalLen = 100;
    cfg.lohStart = 90;
    cfg.lohLen = 20;
    CHECK_THROWS_AS(cfg.validate(), lohseg::ValidationError);
    cfg = ScenarioConfig{};
    cfg.purity = 0.0;
    CHECK_THROWS_AS(cfg.validate(), lohseg::ValidationError);
    cfg = ScenarioConfig{};
    cfg.purity = 1.5;
    CHECK_THROWS_AS(cfg.validate(), lohseg::ValidationError);
    cfg = ScenarioConfig{};
    cfg.noiseSd = -0.1;
    CHECK_THROWS_AS(cfg.validate(), lohseg::ValidationError);
    cfg = ScenarioConfig{};
    cfg.hetRate = 1.5;
    CHECK_THROWS_AS(cfg.validate(), lohseg::ValidationError);
    cfg = ScenarioConfig{};
    cfg.totalLen = 0;
    CHECK_THROWS_AS(cfg.validate(), lohseg::ValidationError);
    CHECK_NOTHROW(ScenarioConfig{}.validate());
}

TEST_CASE("resampling draws from the matching pool") {
    lohseg::ResamplePools pools;
    pools.nonLoh = {0.5};
    pools.loh = {0.9, 0.1};

    ScenarioConfig cfg;
    cfg.totalLen = 100;
    cfg.lohStart = 40;
    cfg.lohLen = 20;
    cfg.seed = 7;
    lohseg::Rng rng(cfg.seed);
    const LabeledSequence seq = lohseg::generate_resample(cfg, pools, rng);
    for (std::size_t i = 0; i < seq.baf.size(); ++i) {
        if (seq.truth[i] == RegionLabel::NonLoh)
            CHECK(seq.baf[i] == 0.5);
        else
            CHECK((seq.baf[i] == 0.9 || seq.baf[i] == 0.1));
    }
}

TEST_CASE("resampling needs a pool for every region it touches") {
    ScenarioConfig cfg;
    cfg.totalLen = 50;
    cfg.lohStart = 10;
    cfg.lohLen = 10;
    lohseg::ResamplePools noLoh;
    noLoh.nonLoh = {0.5};
    lohseg::Rng rng(1);
    CHECK_THROWS_AS(lohseg::generate_resample(cfg, noLoh, rng),
                    lohseg::ValidationError);

    cfg.lohLen = 0;
    lohseg::Rng rng2(1);
    const LabeledSequence seq = lohseg::generate_resample(cfg, noLoh, rng2);
    CHECK(seq.baf.size() == 50);
}

TEST_CASE("study runs its grid cells in declared order") {
    lohseg::StudyConfig cfg;
    cfg.lohLens = {20, 40};
    cfg.purities = {1.0, 0.5};
    cfg.minLens = {5, 10};
    cfg.replicates = 2;
    cfg.trainLen = 600;
    cfg.base.totalLen = 200;
    cfg.base.lohStart = 100;
    cfg.segmenter.nSim = 150;
    cfg.seed = 11;
    const lohseg::StudyResult res = lohseg::run_study(cfg);
    REQUIRE(res.cells.size() == 8);

    std::size_t i = 0;
    for (std::size_t m : cfg.minLens)
        for (std::size_t l : cfg.lohLens)
            for (double p : cfg.purities) {
                CHECK(res.cells[i].minLen == m);
                CHECK(res.cells[i].lohLen == l);
                CHECK(res.cells[i].purity == p);
                CHECK(res.cells[i].replicates == 2);
                ++i;
            }
}

TEST_CASE("study tallies per-observation counts and is reproducible") {
    lohseg::StudyConfig cfg;
    cfg.lohLens = {30};
    cfg.purities = {1.0};
    cfg.minLens = {5};
    cfg.replicates = 3;
    cfg.trainLen = 600;
    cfg.base.totalLen = 200;
    cfg.base.lohStart = 100;
    cfg.segmenter.nSim = 150;
    cfg.seed = 12;
    const lohseg::StudyResult a = lohseg::run_study(cfg);
    const lohseg::StudyResult b = lohseg::run_study(cfg);
    REQUIRE(a.cells.size() == 1);

    const lohseg::StudyCell& cell = a.cells[0];
    CHECK(cell.pooled.tp + cell.pooled.fn == 3 * 30);
    CHECK(cell.pooled.tn + cell.pooled.fp == 3 * 170);
    CHECK(cell.sensCount == 3);
    CHECK(cell.specCount == 3);
    REQUIRE(cell.sensMean);
    REQUIRE(cell.specMean);
    CHECK(*cell.sensMean >= 0.0);
    CHECK(*cell.sensMean <= 1.0);

    CHECK(b.cells[0].pooled.tp == cell.pooled.tp);
    CHECK(b.cells[0].sensMean == cell.sensMean);
    CHECK(b.cells[0].specSe == cell.specSe);
}

TEST_CASE("study config validation") {
    lohseg::StudyConfig cfg;
    cfg.replicates = 0;
    CHECK_THROWS_AS(cfg.validate(), lohseg::ValidationError);
    cfg = lohseg::StudyConfig{};
    cfg.lohLens = {};
    CHECK_THROWS_AS(cfg.validate(), lohseg::ValidationError);
    cfg = lohseg::StudyConfig{};
    cfg.trainLen = 5;
    CHECK_THROWS_AS(cfg.validate(), lohseg::ValidationError);
    cfg = lohseg::StudyConfig{};
    cfg.lohLens = {500};
    cfg.base.totalLen = 300;
    CHECK_THROWS_AS(cfg.validate(), lohseg::ValidationError);
    CHECK_NOTHROW(lohseg::StudyConfig{}.validate());
}
