#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "lohseg/errors.hpp"
#include "lohseg/evaluate.hpp"

using lohseg::ConfusionCounts;
using lohseg::RegionLabel;
using lohseg::Segment;
using lohseg::Segmentation;

namespace {

Segmentation make_seg(std::initializer_list<Segment> segments) {
    Segmentation seg;
    seg.segments = segments;
    for (std::size_t k = 1; k < seg.segments.size(); ++k)
        seg.changePoints.push_back(seg.segments[k].start);
    return seg;
}

std::vector<RegionLabel> labels(std::size_t nonLoh, std::size_t loh) {
    std::vector<RegionLabel> out(nonLoh, RegionLabel::NonLoh);
    out.insert(out.end(), loh, RegionLabel::Loh);
    return out;
}

} // namespace

TEST_CASE("expanded labels repeat each segment") {
    const Segmentation seg = make_seg({{0, 2, RegionLabel::NonLoh},
                                       {3, 4, RegionLabel::Loh},
                                       {5, 5, RegionLabel::NonLoh}});
    const std::vector<RegionLabel> got = lohseg::expand_labels(seg);
    const std::vector<RegionLabel> want = {
        RegionLabel::NonLoh, RegionLabel::NonLoh, RegionLabel::NonLoh,
        RegionLabel::Loh,    RegionLabel::Loh,    RegionLabel::NonLoh};
    CHECK(got == want);
}

TEST_CASE("confusion counts by hand") {
    // Truth: 10 NonLOH then 10 LOH; prediction late by two.
    const std::vector<RegionLabel> truth = labels(10, 10);
    const Segmentation pred =
        make_seg({{0, 11, RegionLabel::NonLoh}, {12, 19, RegionLabel::Loh}});
    const ConfusionCounts c = lohseg::confusion(truth, pred);
    CHECK(c.tp == 8);
    CHECK(c.fp == 0);
    CHECK(c.tn == 10);
    CHECK(c.fn == 2);

    const lohseg::Metrics m = lohseg::metrics(c);
    REQUIRE(m.sensitivity);
    REQUIRE(m.specificity);
    CHECK(*m.sensitivity == doctest::Approx(0.8));
    CHECK(*m.specificity == doctest::Approx(1.0));
}

TEST_CASE("confusion requires an exact partition of the truth") {
    const std::vector<RegionLabel> truth = labels(5, 5);

    // Gap between segments.
    CHECK_THROWS_AS(
        lohseg::confusion(truth, make_seg({{0, 3, RegionLabel::NonLoh},
                                           {5, 9, RegionLabel::Loh}})),
        lohseg::ValidationError);
    // Does not start at zero.
    CHECK_THROWS_AS(
        lohseg::confusion(truth, make_seg({{1, 9, RegionLabel::NonLoh}})),
        lohseg::ValidationError);
    // Too short.
    CHECK_THROWS_AS(
        lohseg::confusion(truth, make_seg({{0, 8, RegionLabel::NonLoh}})),
        lohseg::ValidationError);
    // Too long.
    CHECK_THROWS_AS(
        lohseg::confusion(truth, make_seg({{0, 10, RegionLabel::NonLoh}})),
        lohseg::ValidationError);
    // Overlap.
    CHECK_THROWS_AS(
        lohseg::confusion(truth, make_seg({{0, 5, RegionLabel::NonLoh},
                                           {5, 9, RegionLabel::Loh}})),
        lohseg::ValidationError);
    // Inverted bounds.
    CHECK_THROWS_AS(
        lohseg::confusion(truth, make_seg({{3, 2, RegionLabel::NonLoh}})),
        lohseg::ValidationError);
}

TEST_CASE("metrics leave empty classes unset") {
    const std::vector<RegionLabel> allNeg = labels(10, 0);
    const Segmentation negPred = make_seg({{0, 9, RegionLabel::NonLoh}});
    const lohseg::Metrics m = lohseg::compare_to_gold(allNeg, negPred);
    CHECK(!m.sensitivity);
    REQUIRE(m.specificity);
    CHECK(*m.specificity == doctest::Approx(1.0));

    const std::vector<RegionLabel> allPos = labels(0, 10);
    const Segmentation posPred = make_seg({{0, 9, RegionLabel::Loh}});
    const lohseg::Metrics m2 = lohseg::compare_to_gold(allPos, posPred);
    REQUIRE(m2.sensitivity);
    CHECK(!m2.specificity);
    CHECK(*m2.sensitivity == doctest::Approx(1.0));
}

TEST_CASE("segmentation gold overload agrees with the label overload") {
    const Segmentation gold = make_seg({{0, 9, RegionLabel::NonLoh},
                                        {10, 19, RegionLabel::Loh},
                                        {20, 29, RegionLabel::NonLoh}});
    const Segmentation pred = make_seg({{0, 14, RegionLabel::NonLoh},
                                        {15, 24, RegionLabel::Loh},
                                        {25, 29, RegionLabel::NonLoh}});
    const lohseg::Metrics viaSeg = lohseg::compare_to_gold(gold, pred);
    const lohseg::Metrics viaLabels =
        lohseg::compare_to_gold(lohseg::expand_labels(gold), pred);
    CHECK(viaSeg.sensitivity == viaLabels.sensitivity);
    CHECK(viaSeg.specificity == viaLabels.specificity);
    REQUIRE(viaSeg.sensitivity);
    CHECK(*viaSeg.sensitivity == doctest::Approx(0.5));
}

TEST_CASE("counts add componentwise") {
    const ConfusionCounts a{1, 2, 3, 4};
    const ConfusionCounts b{10, 20, 30, 40};
    const ConfusionCounts c = a + b;
    CHECK(c.tp == 11);
    CHECK(c.fp == 22);
    CHECK(c.tn == 33);
    CHECK(c.fn == 44);
}

TEST_CASE("empty truth is rejected") {
    CHECK_THROWS_AS(
        lohseg::confusion({}, make_seg({{0, 0, RegionLabel::NonLoh}})),
        lohseg::ValidationError);
}
