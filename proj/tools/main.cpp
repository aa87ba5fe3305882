#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lohseg/cusum.hpp"
#include "lohseg/errors.hpp"
#include "lohseg/estimation.hpp"
#include "lohseg/evaluate.hpp"
#include "lohseg/io.hpp"
#include "lohseg/manifest.hpp"
#include "lohseg/model.hpp"
#include "lohseg/simulate.hpp"
#include "lohseg/version.hpp"

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string default_manifest_path(const std::string& out) {
    return out + ".manifest.json";
}

ordered_json load_manifest_options(const std::string& path,
                                   const std::string& command) {
    const ordered_json doc = lohseg::read_manifest(path);
    if (!doc.contains("command") || doc["command"] != command)
        throw lohseg::ValidationError(path + ": manifest is not for command '" +
                                      command + "'");
    if (!doc.contains("options") || !doc["options"].is_object())
        throw lohseg::ValidationError(path + ": manifest has no options object");
    return doc["options"];
}

// Manifest values fill in options the user did not pass explicitly.
template <typename T>
void apply_manifest(CLI::App* cmd, const ordered_json& opts,
                    const std::string& flag, const std::string& key, T& var) {
    if (cmd->count(flag) > 0) return;
    const auto it = opts.find(key);
    if (it == opts.end()) return;
    try {
        var = it->template get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw lohseg::ValidationError("manifest option '" + key + "': " + e.what());
    }
}

void write_json_file(const std::string& path, const ordered_json& doc) {
    std::ofstream out(path);
    if (!out) throw lohseg::ValidationError("cannot open " + path + " for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw lohseg::ValidationError("failed writing " + path);
}

ordered_json opt_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

// ---------------------------------------------------------------- fit

struct FitOpts {
    std::string input;
    std::size_t trainStart = 0;
    long long trainEnd = -1; // inclusive; -1 means the last observation
    std::size_t maxIter = 500;
    double llTol = 1e-8;
    double snapEps = lohseg::kSnapEps;
    std::string out = "model.json";
    std::string reportOut;
    std::string manifestOut;
    std::string fromManifest;
};

void run_fit(FitOpts o, CLI::App* cmd) {
    const auto t0 = Clock::now();
    if (!o.fromManifest.empty()) {
        const ordered_json opts = load_manifest_options(o.fromManifest, "fit");
        apply_manifest(cmd, opts, "input", "input", o.input);
        apply_manifest(cmd, opts, "--train-start", "train-start", o.trainStart);
        apply_manifest(cmd, opts, "--train-end", "train-end", o.trainEnd);
        apply_manifest(cmd, opts, "--max-iter", "max-iter", o.maxIter);
        apply_manifest(cmd, opts, "--ll-tol", "ll-tol", o.llTol);
        apply_manifest(cmd, opts, "--snap-eps", "snap-eps", o.snapEps);
        apply_manifest(cmd, opts, "--out", "out", o.out);
        apply_manifest(cmd, opts, "--report-out", "report-out", o.reportOut);
    }
    if (o.input.empty())
        throw lohseg::ValidationError("fit: missing input BAF file");

    const lohseg::BafInput in = lohseg::read_baf_file(o.input, o.snapEps);
    const std::size_t n = in.baf.size();
    const std::size_t endIdx =
        o.trainEnd < 0 ? n - 1 : static_cast<std::size_t>(o.trainEnd);
    if (endIdx >= n || o.trainStart > endIdx)
        throw lohseg::ValidationError(
            "training range [" + std::to_string(o.trainStart) + ", " +
            std::to_string(endIdx) + "] invalid for input of length " +
            std::to_string(n));
    const std::vector<double> slice(in.baf.begin() + o.trainStart,
                                    in.baf.begin() + endIdx + 1);
    lohseg::EmConfig ec;
    ec.maxIter = o.maxIter;
    ec.llTol = o.llTol;
    const lohseg::EmReport rep =
        lohseg::fit_em(lohseg::tbaf_transform(slice, o.snapEps), ec);
    lohseg::write_model_json(o.out, rep.model);

    if (!o.reportOut.empty()) {
        ordered_json rj;
        rj["nObs"] = slice.size();
        rj["iterations"] = rep.iterations;
        rj["converged"] = rep.converged;
        rj["logLik"] = rep.logLikTrace.back();
        write_json_file(o.reportOut, rj);
    }
    std::printf("fit: %zu observations, %zu iterations, converged=%s, logLik=%.6f\n",
                slice.size(), rep.iterations, rep.converged ? "yes" : "no",
                rep.logLikTrace.back());

    lohseg::RunManifest man;
    man.command = "fit";
    man.version = lohseg::kVersion;
    man.options = ordered_json{{"input", o.input},
                               {"train-start", o.trainStart},
                               {"train-end", static_cast<long long>(endIdx)},
                               {"max-iter", o.maxIter},
                               {"ll-tol", o.llTol},
                               {"snap-eps", o.snapEps},
                               {"out", o.out},
                               {"report-out", o.reportOut}};
    man.inputs.push_back({o.input, lohseg::fnv1a64_hex_of_file(o.input)});
    man.outputs.push_back(o.out);
    if (!o.reportOut.empty()) man.outputs.push_back(o.reportOut);
    man.runtimeSeconds = seconds_since(t0);
    lohseg::write_manifest(
        o.manifestOut.empty() ? default_manifest_path(o.out) : o.manifestOut, man);
}

// ---------------------------------------------------------------- calibrate

struct CalOpts {
    std::string model;
    double delta = 0.01;
    double alpha = 0.05;
    std::size_t minLen = 25;
    std::size_t nsim = 10000;
    std::uint64_t seed = 0;
    std::string out = "thresholds.json";
    std::string manifestOut;
    std::string fromManifest;
};

void run_calibrate(CalOpts o, CLI::App* cmd) {
    const auto t0 = Clock::now();
    if (!o.fromManifest.empty()) {
        const ordered_json opts = load_manifest_options(o.fromManifest, "calibrate");
        apply_manifest(cmd, opts, "--model", "model", o.model);
        apply_manifest(cmd, opts, "--delta", "delta", o.delta);
        apply_manifest(cmd, opts, "--alpha", "alpha", o.alpha);
        apply_manifest(cmd, opts, "--min-len", "min-len", o.minLen);
        apply_manifest(cmd, opts, "--nsim", "nsim", o.nsim);
        apply_manifest(cmd, opts, "--seed", "seed", o.seed);
        apply_manifest(cmd, opts, "--out", "out", o.out);
    }
    if (o.model.empty())
        throw lohseg::ValidationError("calibrate: missing --model");

    lohseg::SegmenterConfig cfg;
    cfg.delta = o.delta;
    cfg.tolA = o.alpha;
    cfg.minLen = o.minLen;
    cfg.nSim = o.nsim;
    cfg.seed = o.seed;
    cfg.validate();

    const lohseg::MixtureModel base = lohseg::read_model_json(o.model);
    const lohseg::MixtureModel p0 = lohseg::floored(base);
    const lohseg::MixtureModel p1 =
        lohseg::floored(lohseg::derive_loh_model(base, cfg.delta));
    const lohseg::Thresholds th = lohseg::calibrate_thresholds(p0, p1, cfg);

    write_json_file(o.out, ordered_json{{"l0", th.l0}, {"l1", th.l1}});
    std::printf("calibrate: m=%zu, l0=%.6f, l1=%.6f\n", o.minLen, th.l0, th.l1);

    lohseg::RunManifest man;
    man.command = "calibrate";
    man.version = lohseg::kVersion;
    man.options = ordered_json{{"model", o.model}, {"delta", o.delta},
                               {"alpha", o.alpha}, {"min-len", o.minLen},
                               {"nsim", o.nsim},   {"seed", o.seed},
                               {"out", o.out}};
    man.inputs.push_back({o.model, lohseg::fnv1a64_hex_of_file(o.model)});
    man.outputs.push_back(o.out);
    man.runtimeSeconds = seconds_since(t0);
    lohseg::write_manifest(
        o.manifestOut.empty() ? default_manifest_path(o.out) : o.manifestOut, man);
}

// ---------------------------------------------------------------- segment

struct SegOpts {
    std::string input;
    std::string model;
    double delta = 0.01;
    double alpha = 0.05;
    std::size_t minLen = 25;
    std::size_t nsim = 10000;
    std::uint64_t seed = 0;
    std::string initialState = "NonLOH";
    double snapEps = lohseg::kSnapEps;
    std::string out = "segments.tsv";
    std::string plotOut;
    std::string manifestOut;
    std::string fromManifest;
};

void run_segment(SegOpts o, CLI::App* cmd) {
    const auto t0 = Clock::now();
    if (!o.fromManifest.empty()) {
        const ordered_json opts = load_manifest_options(o.fromManifest, "segment");
        apply_manifest(cmd, opts, "input", "input", o.input);
        apply_manifest(cmd, opts, "--model", "model", o.model);
        apply_manifest(cmd, opts, "--delta", "delta", o.delta);
        apply_manifest(cmd, opts, "--alpha", "alpha", o.alpha);
        apply_manifest(cmd, opts, "--min-len", "min-len", o.minLen);
        apply_manifest(cmd, opts, "--nsim", "nsim", o.nsim);
        apply_manifest(cmd, opts, "--seed", "seed", o.seed);
        apply_manifest(cmd, opts, "--initial-state", "initial-state", o.initialState);
        apply_manifest(cmd, opts, "--snap-eps", "snap-eps", o.snapEps);
        apply_manifest(cmd, opts, "--out", "out", o.out);
        apply_manifest(cmd, opts, "--plot-out", "plot-out", o.plotOut);
    }
    if (o.input.empty())
        throw lohseg::ValidationError("segment: missing input BAF file");
    if (o.model.empty())
        throw lohseg::ValidationError("segment: missing --model");

    lohseg::SegmenterConfig cfg;
    cfg.delta = o.delta;
    cfg.tolA = o.alpha;
    cfg.minLen = o.minLen;
    cfg.nSim = o.nsim;
    cfg.seed = o.seed;
    cfg.initialState = lohseg::region_label_from_string(o.initialState);
    cfg.validate();

    const lohseg::MixtureModel base = lohseg::read_model_json(o.model);
    const lohseg::BafInput in = lohseg::read_baf_file(o.input, o.snapEps);

    const lohseg::MixtureModel p0 = lohseg::floored(base);
    const lohseg::MixtureModel p1 =
        lohseg::floored(lohseg::derive_loh_model(base, cfg.delta));
    // Thresholds depend only on the models, so one calibration covers
    // every chromosome.
    const lohseg::Thresholds th = lohseg::calibrate_thresholds(p0, p1, cfg);

    // Contiguous chromosome blocks; one unnamed block when there is no
    // chrom column.
    std::vector<std::pair<std::string, std::vector<double>>> blocks;
    if (in.chrom.empty()) {
        blocks.emplace_back("", in.baf);
    } else {
        for (std::size_t i = 0; i < in.baf.size(); ++i) {
            if (blocks.empty() || blocks.back().first != in.chrom[i])
                blocks.emplace_back(in.chrom[i], std::vector<double>{});
            blocks.back().second.push_back(in.baf[i]);
        }
    }

    std::vector<std::pair<std::string, lohseg::Segmentation>> results;
    std::size_t totalSegments = 0;
    for (const auto& [chrom, baf] : blocks) {
        const lohseg::TBafSequence t = lohseg::tbaf_transform(baf, o.snapEps);
        lohseg::Segmentation seg =
            lohseg::segment_with_thresholds(t, p0, p1, th, cfg.initialState);
        totalSegments += seg.segments.size();
        results.emplace_back(chrom, std::move(seg));
    }

    if (in.chrom.empty())
        lohseg::write_segmentation_tsv(o.out, results.front().second);
    else
        lohseg::write_segmentation_tsv(o.out, results);

    if (!o.plotOut.empty()) {
        std::ofstream plot(o.plotOut);
        if (!plot)
            throw lohseg::ValidationError("cannot open " + o.plotOut + " for writing");
        plot << (in.chrom.empty() ? "index\tbaf\ttbaf\tlabel\n"
                                  : "index\tchrom\tbaf\ttbaf\tlabel\n");
        std::size_t global = 0;
        for (const auto& [chrom, seg] : results) {
            const std::vector<lohseg::RegionLabel> labels = lohseg::expand_labels(seg);
            for (std::size_t i = 0; i < labels.size(); ++i, ++global) {
                const double x = in.baf[global];
                const double y = 2.0 * std::abs(x - 0.5);
                plot << global << '\t';
                if (!in.chrom.empty()) plot << chrom << '\t';
                plot << lohseg::format_double(x) << '\t'
                     << lohseg::format_double(y > 1.0 ? 1.0 : y) << '\t'
                     << lohseg::to_string(labels[i]) << '\n';
            }
        }
        if (!plot) throw lohseg::ValidationError("failed writing " + o.plotOut);
    }
    std::printf("segment: %zu observations, %zu segments (l0=%.6f, l1=%.6f)\n",
                in.baf.size(), totalSegments, th.l0, th.l1);

    lohseg::RunManifest man;
    man.command = "segment";
    man.version = lohseg::kVersion;
    man.options = ordered_json{{"input", o.input},
                               {"model", o.model},
                               {"delta", o.delta},
                               {"alpha", o.alpha},
                               {"min-len", o.minLen},
                               {"nsim", o.nsim},
                               {"seed", o.seed},
                               {"initial-state", o.initialState},
                               {"snap-eps", o.snapEps},
                               {"out", o.out},
                               {"plot-out", o.plotOut}};
    man.inputs.push_back({o.input, lohseg::fnv1a64_hex_of_file(o.input)});
    man.inputs.push_back({o.model, lohseg::fnv1a64_hex_of_file(o.model)});
    man.outputs.push_back(o.out);
    if (!o.plotOut.empty()) man.outputs.push_back(o.plotOut);
    man.runtimeSeconds = seconds_since(t0);
    lohseg::write_manifest(
        o.manifestOut.empty() ? default_manifest_path(o.out) : o.manifestOut, man);
}

// ---------------------------------------------------------------- simulate

struct SimOpts {
    std::size_t totalLen = 1000;
    std::size_t lohStart = 500;
    std::size_t lohLen = 0;
    double purity = 1.0;
    double noiseSd = 0.03;
    double hetRate = 0.33;
    std::uint64_t seed = 0;
    std::string resample;
    std::string out = "sim.tsv";
    std::string manifestOut;
    std::string fromManifest;
};

void run_simulate(SimOpts o, CLI::App* cmd) {
    const auto t0 = Clock::now();
    if (!o.fromManifest.empty()) {
        const ordered_json opts = load_manifest_options(o.fromManifest, "simulate");
        apply_manifest(cmd, opts, "--total-len", "total-len", o.totalLen);
        apply_manifest(cmd, opts, "--loh-start", "loh-start", o.lohStart);
        apply_manifest(cmd, opts, "--loh-len", "loh-len", o.lohLen);
        apply_manifest(cmd, opts, "--purity", "purity", o.purity);
        apply_manifest(cmd, opts, "--noise-sd", "noise-sd", o.noiseSd);
        apply_manifest(cmd, opts, "--het-rate", "het-rate", o.hetRate);
        apply_manifest(cmd, opts, "--seed", "seed", o.seed);
        apply_manifest(cmd, opts, "--resample", "resample", o.resample);
        apply_manifest(cmd, opts, "--out", "out", o.out);
    }
    lohseg::ScenarioConfig cfg;
    cfg.totalLen = o.totalLen;
    cfg.lohStart = o.lohStart;
    cfg.lohLen = o.lohLen;
    cfg.purity = o.purity;
    cfg.noiseSd = o.noiseSd;
    cfg.hetRate = o.hetRate;
    cfg.seed = o.seed;
    cfg.validate();

    lohseg::Rng rng(cfg.seed);
    lohseg::LabeledSequence seq;
    if (o.resample.empty()) {
        seq = lohseg::generate(cfg, rng);
    } else {
        const lohseg::ResamplePools pools = lohseg::read_resample_pools(o.resample);
        seq = lohseg::generate_resample(cfg, pools, rng);
    }
    lohseg::write_labeled_tsv(o.out, seq);
    std::printf("simulate: %zu observations, %zu in LOH\n", cfg.totalLen, cfg.lohLen);

    lohseg::RunManifest man;
    man.command = "simulate";
    man.version = lohseg::kVersion;
    man.options = ordered_json{{"total-len", o.totalLen},
                               {"loh-start", o.lohStart},
                               {"loh-len", o.lohLen},
                               {"purity", o.purity},
                               {"noise-sd", o.noiseSd},
                               {"het-rate", o.hetRate},
                               {"seed", o.seed},
                               {"resample", o.resample},
                               {"out", o.out}};
    if (!o.resample.empty())
        man.inputs.push_back({o.resample, lohseg::fnv1a64_hex_of_file(o.resample)});
    man.outputs.push_back(o.out);
    man.runtimeSeconds = seconds_since(t0);
    lohseg::write_manifest(
        o.manifestOut.empty() ? default_manifest_path(o.out) : o.manifestOut, man);
}

// ---------------------------------------------------------------- study

struct StudyOpts {
    std::vector<std::size_t> lohLens{25, 50, 100};
    std::vector<double> purities{1.0, 0.79, 0.5};
    std::vector<std::size_t> minLens{10, 25, 50};
    std::size_t replicates = 100;
    std::size_t trainLen = 5000;
    std::size_t totalLen = 1000;
    std::size_t lohStart = 500;
    double noiseSd = 0.03;
    double hetRate = 0.33;
    double delta = 0.01;
    double alpha = 0.05;
    std::size_t nsim = 10000;
    std::uint64_t seed = 0;
    std::string out = "study.tsv";
    std::string jsonOut = "study.json";
    std::string manifestOut;
    std::string fromManifest;
};

void run_study_cmd(StudyOpts o, CLI::App* cmd) {
    const auto t0 = Clock::now();
    if (!o.fromManifest.empty()) {
        const ordered_json opts = load_manifest_options(o.fromManifest, "study");
        apply_manifest(cmd, opts, "--loh-lens", "loh-lens", o.lohLens);
        apply_manifest(cmd, opts, "--purities", "purities", o.purities);
        apply_manifest(cmd, opts, "--min-lens", "min-lens", o.minLens);
        apply_manifest(cmd, opts, "--replicates", "replicates", o.replicates);
        apply_manifest(cmd, opts, "--train-len", "train-len", o.trainLen);
        apply_manifest(cmd, opts, "--total-len", "total-len", o.totalLen);
        apply_manifest(cmd, opts, "--loh-start", "loh-start", o.lohStart);
        apply_manifest(cmd, opts, "--noise-sd", "noise-sd", o.noiseSd);
        apply_manifest(cmd, opts, "--het-rate", "het-rate", o.hetRate);
        apply_manifest(cmd, opts, "--delta", "delta", o.delta);
        apply_manifest(cmd, opts, "--alpha", "alpha", o.alpha);
        apply_manifest(cmd, opts, "--nsim", "nsim", o.nsim);
        apply_manifest(cmd, opts, "--seed", "seed", o.seed);
        apply_manifest(cmd, opts, "--out", "out", o.out);
        apply_manifest(cmd, opts, "--json-out", "json-out", o.jsonOut);
    }
    lohseg::StudyConfig cfg;
    cfg.lohLens = o.lohLens;
    cfg.purities = o.purities;
    cfg.minLens = o.minLens;
    cfg.replicates = o.replicates;
    cfg.trainLen = o.trainLen;
    cfg.base.totalLen = o.totalLen;
    cfg.base.lohStart = o.lohStart;
    cfg.base.lohLen = 0;
    cfg.base.noiseSd = o.noiseSd;
    cfg.base.hetRate = o.hetRate;
    cfg.segmenter.delta = o.delta;
    cfg.segmenter.tolA = o.alpha;
    cfg.segmenter.nSim = o.nsim;
    cfg.seed = o.seed;
    const lohseg::StudyResult result = lohseg::run_study(cfg);
    lohseg::write_study_tsv(o.out, result);
    lohseg::write_study_json(o.jsonOut, result);
    std::printf("study: %zu cells, %zu replicates each\n", result.cells.size(),
                o.replicates);

    lohseg::RunManifest man;
    man.command = "study";
    man.version = lohseg::kVersion;
    man.options = ordered_json{{"loh-lens", o.lohLens},
                               {"purities", o.purities},
                               {"min-lens", o.minLens},
                               {"replicates", o.replicates},
                               {"train-len", o.trainLen},
                               {"total-len", o.totalLen},
                               {"loh-start", o.lohStart},
                               {"noise-sd", o.noiseSd},
                               {"het-rate", o.hetRate},
                               {"delta", o.delta},
                               {"alpha", o.alpha},
                               {"nsim", o.nsim},
                               {"seed", o.seed},
                               {"out", o.out},
                               {"json-out", o.jsonOut}};
    man.outputs = {o.out, o.jsonOut};
    man.runtimeSeconds = seconds_since(t0);
    lohseg::write_manifest(
        o.manifestOut.empty() ? default_manifest_path(o.out) : o.manifestOut, man);
}

// ---------------------------------------------------------------- evaluate

struct EvalOpts {
    std::vector<std::string> gold;
    std::vector<std::string> pred;
    std::string out = "metrics.json";
    std::string manifestOut;
    std::string fromManifest;
};

std::vector<lohseg::RegionLabel> read_gold(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lohseg::ValidationError("cannot open " + path + " for reading");
    std::string header;
    std::getline(in, header);
    in.close();
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header.rfind("start\t", 0) == 0)
        return lohseg::expand_labels(lohseg::read_segmentation_tsv(path));
    return lohseg::read_labels_tsv(path);
}

void run_evaluate(EvalOpts o, CLI::App* cmd) {
    const auto t0 = Clock::now();
    if (!o.fromManifest.empty()) {
        const ordered_json opts = load_manifest_options(o.fromManifest, "evaluate");
        apply_manifest(cmd, opts, "--gold", "gold", o.gold);
        apply_manifest(cmd, opts, "--pred", "pred", o.pred);
        apply_manifest(cmd, opts, "--out", "out", o.out);
    }
    if (o.gold.empty())
        throw lohseg::ValidationError("evaluate: at least one --gold/--pred pair required");
    if (o.gold.size() != o.pred.size())
        throw lohseg::ValidationError("evaluate: --gold and --pred counts differ");

    ordered_json perInput = ordered_json::array();
    lohseg::ConfusionCounts pooled;
    for (std::size_t i = 0; i < o.gold.size(); ++i) {
        const std::vector<lohseg::RegionLabel> gold = read_gold(o.gold[i]);
        const lohseg::Segmentation pred = lohseg::read_segmentation_tsv(o.pred[i]);
        const lohseg::ConfusionCounts c = lohseg::confusion(gold, pred);
        pooled = pooled + c;
        const lohseg::Metrics m = lohseg::metrics(c);
        perInput.push_back(ordered_json{{"gold", o.gold[i]},
                                        {"pred", o.pred[i]},
                                        {"tp", c.tp},
                                        {"fp", c.fp},
                                        {"tn", c.tn},
                                        {"fn", c.fn},
                                        {"sensitivity", opt_json(m.sensitivity)},
                                        {"specificity", opt_json(m.specificity)}});
    }
    const lohseg::Metrics pm = lohseg::metrics(pooled);
    ordered_json doc;
    doc["perInput"] = perInput;
    doc["pooled"] = ordered_json{{"tp", pooled.tp},
                                 {"fp", pooled.fp},
                                 {"tn", pooled.tn},
                                 {"fn", pooled.fn},
                                 {"sensitivity", opt_json(pm.sensitivity)},
                                 {"specificity", opt_json(pm.specificity)}};
    write_json_file(o.out, doc);
    const auto show = [](const std::optional<double>& v) {
        return v ? lohseg::format_double(*v) : std::string("NA");
    };
    std::printf("evaluate: pooled sensitivity=%s, specificity=%s\n",
                show(pm.sensitivity).c_str(), show(pm.specificity).c_str());

    lohseg::RunManifest man;
    man.command = "evaluate";
    man.version = lohseg::kVersion;
    man.options = ordered_json{{"gold", o.gold}, {"pred", o.pred}, {"out", o.out}};
    for (const std::string& g : o.gold)
        man.inputs.push_back({g, lohseg::fnv1a64_hex_of_file(g)});
    for (const std::string& p : o.pred)
        man.inputs.push_back({p, lohseg::fnv1a64_hex_of_file(p)});
    man.outputs.push_back(o.out);
    man.runtimeSeconds = seconds_since(t0);
    lohseg::write_manifest(
        o.manifestOut.empty() ? default_manifest_path(o.out) : o.manifestOut, man);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CNNLOH detection in BAF sequences: inflated-beta mixture "
                 "modeling with CUSUM segmentation"};
    app.set_version_flag("--version", std::string(lohseg::kVersion));
    app.require_subcommand(1);

    FitOpts fit;
    CLI::App* fitCmd = app.add_subcommand(
        "fit", "Fit the tBAF mixture model to a non-LOH training segment");
    fitCmd->add_option("input", fit.input, "BAF input file (plain or TSV)");
    fitCmd->add_option("--train-start", fit.trainStart,
                       "First training index (inclusive)")->capture_default_str();
    fitCmd->add_option("--train-end", fit.trainEnd,
                       "Last training index (inclusive); -1 = last observation")
        ->capture_default_str();
    fitCmd->add_option("--max-iter", fit.maxIter, "EM iteration cap")
        ->capture_default_str();
    fitCmd->add_option("--ll-tol", fit.llTol,
                       "Relative log-likelihood convergence tolerance")
        ->capture_default_str();
    fitCmd->add_option("--snap-eps", fit.snapEps,
                       "Snap tolerance around the atoms at 0 and 1")
        ->capture_default_str();
    fitCmd->add_option("--out", fit.out, "Model JSON output")->capture_default_str();
    fitCmd->add_option("--report-out", fit.reportOut, "Fit report JSON output");
    fitCmd->add_option("--manifest-out", fit.manifestOut,
                       "Manifest path (default: <out>.manifest.json)");
    fitCmd->add_option("--from-manifest", fit.fromManifest,
                       "Take unset options from a previous run's manifest");

    CalOpts cal;
    CLI::App* calCmd = app.add_subcommand(
        "calibrate", "Monte-Carlo calibration of the CUSUM alarm thresholds");
    calCmd->add_option("--model", cal.model, "Model JSON from fit");
    calCmd->add_option("--delta", cal.delta, "LOH heterozygosity scaling")
        ->capture_default_str();
    calCmd->add_option("--alpha", cal.alpha, "Tolerance level of the quantile rule")
        ->capture_default_str();
    calCmd->add_option("--min-len", cal.minLen, "Minimum segment length m")
        ->capture_default_str();
    calCmd->add_option("--nsim", cal.nsim, "Monte-Carlo replicates")
        ->capture_default_str();
    calCmd->add_option("--seed", cal.seed, "Random seed")->capture_default_str();
    calCmd->add_option("--out", cal.out, "Thresholds JSON output")
        ->capture_default_str();
    calCmd->add_option("--manifest-out", cal.manifestOut,
                       "Manifest path (default: <out>.manifest.json)");
    calCmd->add_option("--from-manifest", cal.fromManifest,
                       "Take unset options from a previous run's manifest");

    SegOpts seg;
    CLI::App* segCmd = app.add_subcommand(
        "segment", "Segment a BAF sequence into alternating non-LOH/LOH regions");
    segCmd->add_option("input", seg.input, "BAF input file (plain or TSV)");
    segCmd->add_option("--model", seg.model, "Model JSON from fit");
    segCmd->add_option("--delta", seg.delta, "LOH heterozygosity scaling")
        ->capture_default_str();
    segCmd->add_option("--alpha", seg.alpha, "Tolerance level of the quantile rule")
        ->capture_default_str();
    segCmd->add_option("--min-len", seg.minLen, "Minimum segment length m")
        ->capture_default_str();
    segCmd->add_option("--nsim", seg.nsim, "Monte-Carlo replicates")
        ->capture_default_str();
    segCmd->add_option("--seed", seg.seed, "Random seed")->capture_default_str();
    segCmd->add_option("--initial-state", seg.initialState,
                       "Label assumed at the first observation (NonLOH or LOH)")
        ->capture_default_str();
    segCmd->add_option("--snap-eps", seg.snapEps,
                       "Snap tolerance around the atoms at 0 and 1")
        ->capture_default_str();
    segCmd->add_option("--out", seg.out, "Segmentation TSV output")
        ->capture_default_str();
    segCmd->add_option("--plot-out", seg.plotOut,
                       "Plot-ready TSV of tBAF values with segment labels");
    segCmd->add_option("--manifest-out", seg.manifestOut,
                       "Manifest path (default: <out>.manifest.json)");
    segCmd->add_option("--from-manifest", seg.fromManifest,
                       "Take unset options from a previous run's manifest");

    SimOpts sim;
    CLI::App* simCmd = app.add_subcommand(
        "simulate", "Generate a labeled synthetic BAF sequence");
    simCmd->add_option("--total-len", sim.totalLen, "Sequence length")
        ->capture_default_str();
    simCmd->add_option("--loh-start", sim.lohStart, "LOH region start (0-based)")
        ->capture_default_str();
    simCmd->add_option("--loh-len", sim.lohLen, "LOH region length")
        ->capture_default_str();
    simCmd->add_option("--purity", sim.purity, "Tumor purity in (0,1]")
        ->capture_default_str();
    simCmd->add_option("--noise-sd", sim.noiseSd, "Additive BAF noise sd")
        ->capture_default_str();
    simCmd->add_option("--het-rate", sim.hetRate,
                       "Germline heterozygosity probability")
        ->capture_default_str();
    simCmd->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
    simCmd->add_option("--resample", sim.resample,
                       "TSV of real BAF observations per population "
                       "(baf/label columns); sampled with replacement");
    simCmd->add_option("--out", sim.out, "Labeled TSV output")->capture_default_str();
    simCmd->add_option("--manifest-out", sim.manifestOut,
                       "Manifest path (default: <out>.manifest.json)");
    simCmd->add_option("--from-manifest", sim.fromManifest,
                       "Take unset options from a previous run's manifest");

    StudyOpts study;
    CLI::App* studyCmd = app.add_subcommand(
        "study", "Sensitivity/specificity study over an (l, purity, m) grid");
    studyCmd->add_option("--loh-lens", study.lohLens, "LOH lengths l")
        ->delimiter(',')->capture_default_str();
    studyCmd->add_option("--purities", study.purities, "Purity levels")
        ->delimiter(',')->capture_default_str();
    studyCmd->add_option("--min-lens", study.minLens, "Minimum lengths m")
        ->delimiter(',')->capture_default_str();
    studyCmd->add_option("--replicates", study.replicates, "Replicates per cell")
        ->capture_default_str();
    studyCmd->add_option("--train-len", study.trainLen,
                         "Training sequence length per cell")
        ->capture_default_str();
    studyCmd->add_option("--total-len", study.totalLen, "Sequence length")
        ->capture_default_str();
    studyCmd->add_option("--loh-start", study.lohStart, "LOH region start")
        ->capture_default_str();
    studyCmd->add_option("--noise-sd", study.noiseSd, "Additive BAF noise sd")
        ->capture_default_str();
    studyCmd->add_option("--het-rate", study.hetRate,
                         "Germline heterozygosity probability")
        ->capture_default_str();
    studyCmd->add_option("--delta", study.delta, "LOH heterozygosity scaling")
        ->capture_default_str();
    studyCmd->add_option("--alpha", study.alpha,
                         "Tolerance level of the quantile rule")
        ->capture_default_str();
    studyCmd->add_option("--nsim", study.nsim, "Monte-Carlo replicates")
        ->capture_default_str();
    studyCmd->add_option("--seed", study.seed, "Random seed")->capture_default_str();
    studyCmd->add_option("--out", study.out, "Study table TSV output")
        ->capture_default_str();
    studyCmd->add_option("--json-out", study.jsonOut, "Study table JSON output")
        ->capture_default_str();
    studyCmd->add_option("--manifest-out", study.manifestOut,
                         "Manifest path (default: <out>.manifest.json)");
    studyCmd->add_option("--from-manifest", study.fromManifest,
                         "Take unset options from a previous run's manifest");

    EvalOpts eval;
    CLI::App* evalCmd = app.add_subcommand(
        "evaluate", "Score predicted segmentations against reference labelings");
    evalCmd->add_option("--gold", eval.gold,
                        "Reference labeling (label TSV or segmentation TSV); repeatable");
    evalCmd->add_option("--pred", eval.pred,
                        "Predicted segmentation TSV; repeatable, paired with --gold");
    evalCmd->add_option("--out", eval.out, "Metrics JSON output")
        ->capture_default_str();
    evalCmd->add_option("--manifest-out", eval.manifestOut,
                        "Manifest path (default: <out>.manifest.json)");
    evalCmd->add_option("--from-manifest", eval.fromManifest,
                        "Take unset options from a previous run's manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*fitCmd) run_fit(fit, fitCmd);
        else if (*calCmd) run_calibrate(cal, calCmd);
        else if (*segCmd) run_segment(seg, segCmd);
        else if (*simCmd) run_simulate(sim, simCmd);
        else if (*studyCmd) run_study_cmd(study, studyCmd);
        else if (*evalCmd) run_evaluate(eval, evalCmd);
    } catch (const lohseg::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
