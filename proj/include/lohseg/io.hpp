#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lohseg/cusum.hpp"
#include "lohseg/evaluate.hpp"
#include "lohseg/model.hpp"
#include "lohseg/simulate.hpp"

namespace lohseg {

// Shortest decimal text that parses back to exactly v.
std::string format_double(double v);

struct BafInput {
    std::vector<double> baf;
    // Parallel to baf when the source had a chrom column; empty otherwise.
    std::vector<std::string> chrom;
    // Parallel to baf when the source had a pos column; empty otherwise.
    std::vector<long long> pos;
};

// Two formats: plain one-value-per-line, or TSV whose header names a `baf`
// column and optionally `chrom` and `pos` columns. Values must lie in
// [-snapEps, 1 + snapEps]; positions must increase strictly within a
// chromosome. Errors name the offending line.
BafInput read_baf_file(const std::string& path, double snapEps = kSnapEps);

// {hetWeight, lower:{theta0, shapeB}, upper:{theta1, shapeA}}; doubles
// round-trip exactly.
MixtureModel model_from_json_text(const std::string& text);
std::string model_to_json_text(const MixtureModel& model);
MixtureModel read_model_json(const std::string& path);
void write_model_json(const std::string& path, const MixtureModel& model);

// Header `start	end	label	n_obs`, 0-based inclusive indices.
void write_segmentation_tsv(const std::string& path, const Segmentation& seg);
// Chromosome-aware variant: leading `chrom` column, indices local to each
// chromosome, one block per chromosome in input order.
void write_segmentation_tsv(
    const std::string& path,
    const std::vector<std::pair<std::string, Segmentation>>& perChrom);
Segmentation read_segmentation_tsv(const std::string& path);

// Header `index	baf	truth`, truth encoded 0 = NonLOH, 1 = LOH.
void write_labeled_tsv(const std::string& path, const LabeledSequence& seq);

// Per-observation labels: TSV with a `label` or `truth` column encoded {0,1};
// an `index` column, when present, must run 0..n-1 in order.
std::vector<RegionLabel> read_labels_tsv(const std::string& path);

// Header `baf	label`: observed BAF values pooled by population,
// label 0 = non-LOH pool, 1 = CNNLOH pool.
ResamplePools read_resample_pools(const std::string& path);

void write_study_tsv(const std::string& path, const StudyResult& study);
std::string study_to_json_text(const StudyResult& study);
void write_study_json(const std::string& path, const StudyResult& study);

} // namespace lohseg
