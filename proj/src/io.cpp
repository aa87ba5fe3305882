#include "lohseg/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <string>
#include <system_error>

#include "json.hpp"
#include "lohseg/errors.hpp"

namespace lohseg {

namespace {

constexpr std::size_t kNoCol = std::numeric_limits<std::size_t>::max();

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path + " for reading");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open " + path + " for writing");
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t from = 0;
    while (true) {
        const std::size_t tab = line.find('\t', from);
        if (tab == std::string::npos) {
            cells.push_back(line.substr(from));
            return cells;
        }
        cells.push_back(line.substr(from, tab - from));
        from = tab + 1;
    }
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool try_parse_double(const std::string& text, double& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

double parse_double(const std::string& text, const std::string& where) {
    double v{};
    if (!try_parse_double(text, v))
        throw ValidationError(where + ": cannot parse number '" + text + "'");
    return v;
}

long long parse_int(const std::string& text, const std::string& where) {
    long long v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ValidationError(where + ": cannot parse integer '" + text + "'");
    return v;
}

std::string at_line(const std::string& path, std::size_t lineNo) {
    return path + ":" + std::to_string(lineNo);
}

void check_baf_range(double v, double snapEps, const std::string& where) {
    if (!(v >= -snapEps && v <= 1.0 + snapEps))
        throw ValidationError(where + ": BAF value out of range: " +
                              std::to_string(v));
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

BafInput read_baf_file(const std::string& path, double snapEps) {
    std::ifstream in = open_input(path);
    BafInput out;
    std::string line;
    std::size_t lineNo = 0;

    std::string first;
    std::size_t firstLineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        line = strip_cr(line);
        if (!line.empty()) {
            first = line;
            firstLineNo = lineNo;
            break;
        }
    }
    if (first.empty()) throw ValidationError(path + ": no data");

    double probe{};
    const bool plain = try_parse_double(first, probe);
    if (plain) {
        check_baf_range(probe, snapEps, at_line(path, firstLineNo));
        out.baf.push_back(probe);
        while (std::getline(in, line)) {
            ++lineNo;
            line = strip_cr(line);
            if (line.empty()) continue;
            const double v = parse_double(line, at_line(path, lineNo));
            check_baf_range(v, snapEps, at_line(path, lineNo));
            out.baf.push_back(v);
        }
        return out;
    }

    const std::vector<std::string> header = split_tabs(first);
    std::size_t bafCol = kNoCol, chromCol = kNoCol, posCol = kNoCol;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = lower(header[i]);
        if (name == "baf") bafCol = i;
        else if (name == "chrom") chromCol = i;
        else if (name == "pos") posCol = i;
    }
    if (bafCol == kNoCol)
        throw ValidationError(at_line(path, firstLineNo) +
                              ": header must contain a 'baf' column");

    std::vector<std::string> seenChroms;
    long long lastPos = 0;
    bool havePos = false;
    while (std::getline(in, line)) {
        ++lineNo;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_tabs(line);
        if (cells.size() != header.size())
            throw ValidationError(at_line(path, lineNo) + ": expected " +
                                  std::to_string(header.size()) + " columns, got " +
                                  std::to_string(cells.size()));
        const double v = parse_double(cells[bafCol], at_line(path, lineNo));
        check_baf_range(v, snapEps, at_line(path, lineNo));
        out.baf.push_back(v);
        if (chromCol != kNoCol) {
            const std::string& chrom = cells[chromCol];
            if (seenChroms.empty() || seenChroms.back() != chrom) {
                if (std::find(seenChroms.begin(), seenChroms.end(), chrom) !=
                    seenChroms.end())
                    throw ValidationError(at_line(path, lineNo) +
                                          ": chromosome blocks must be contiguous: '" +
                                          chrom + "' reappears");
                seenChroms.push_back(chrom);
                havePos = false;
            }
            out.chrom.push_back(chrom);
        }
        if (posCol != kNoCol) {
            const long long p = parse_int(cells[posCol], at_line(path, lineNo));
            if (havePos && p <= lastPos)
                throw ValidationError(at_line(path, lineNo) +
                                      ": positions must increase strictly within a chromosome");
            lastPos = p;
            havePos = true;
            out.pos.push_back(p);
        }
    }
    if (out.baf.empty()) throw ValidationError(path + ": no data rows");
    return out;
}

MixtureModel model_from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("model JSON: ") + e.what());
    }
    try {
        MixtureModel m;
        m.hetWeight = doc.at("hetWeight").get<double>();
        m.lower.theta0 = doc.at("lower").at("theta0").get<double>();
        m.lower.shapeB = doc.at("lower").at("shapeB").get<double>();
        m.upper.theta1 = doc.at("upper").at("theta1").get<double>();
        m.upper.shapeA = doc.at("upper").at("shapeA").get<double>();
        m.validate();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("model JSON: ") + e.what());
    }
}

std::string model_to_json_text(const MixtureModel& model) {
    nlohmann::ordered_json doc;
    doc["hetWeight"] = model.hetWeight;
    doc["lower"] = {{"theta0", model.lower.theta0}, {"shapeB", model.lower.shapeB}};
    doc["upper"] = {{"theta1", model.upper.theta1}, {"shapeA", model.upper.shapeA}};
    return doc.dump(2) + "\n";
}

MixtureModel read_model_json(const std::string& path) {
    std::ifstream in = open_input(path);
    const std::string text((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    try {
        return model_from_json_text(text);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_model_json(const std::string& path, const MixtureModel& model) {
    std::ofstream out = open_output(path);
    out << model_to_json_text(model);
    if (!out) throw ValidationError("failed writing " + path);
}

namespace {

void write_segment_rows(std::ofstream& out, const Segmentation& seg,
                        const std::string& prefix) {
    for (const Segment& s : seg.segments)
        out << prefix << s.start << '\t' << s.end << '\t' << to_string(s.label)
            << '\t' << (s.end - s.start + 1) << '\n';
}

} // namespace

void write_segmentation_tsv(const std::string& path, const Segmentation& seg) {
    std::ofstream out = open_output(path);
    out << "start\tend\tlabel\tn_obs\n";
    write_segment_rows(out, seg, "");
    if (!out) throw ValidationError("failed writing " + path);
}

void write_segmentation_tsv(
    const std::string& path,
    const std::vector<std::pair<std::string, Segmentation>>& perChrom) {
    std::ofstream out = open_output(path);
    out << "chrom\tstart\tend\tlabel\tn_obs\n";
    for (const auto& [chrom, seg] : perChrom)
        write_segment_rows(out, seg, chrom + "\t");
    if (!out) throw ValidationError("failed writing " + path);
}

Segmentation read_segmentation_tsv(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError(path + ": no data");
    line = strip_cr(line);
    const std::vector<std::string> header = split_tabs(line);
    if (header.size() >= 1 && lower(header[0]) == "chrom")
        throw ValidationError(path +
                              ": chromosome-aware segmentations must be evaluated per chromosome");
    if (header.size() != 4 || lower(header[0]) != "start" ||
        lower(header[1]) != "end" || lower(header[2]) != "label" ||
        lower(header[3]) != "n_obs")
        throw ValidationError(path + ": expected header 'start\tend\tlabel\tn_obs'");
    Segmentation seg;
    std::size_t lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_tabs(line);
        if (cells.size() != 4)
            throw ValidationError(at_line(path, lineNo) + ": expected 4 columns");
        Segment s;
        const long long start = parse_int(cells[0], at_line(path, lineNo));
        const long long end = parse_int(cells[1], at_line(path, lineNo));
        if (start < 0 || end < start)
            throw ValidationError(at_line(path, lineNo) +
                                  ": segment bounds must satisfy 0 <= start <= end");
        s.start = static_cast<std::size_t>(start);
        s.end = static_cast<std::size_t>(end);
        try {
            s.label = region_label_from_string(cells[2]);
        } catch (const ValidationError& e) {
            throw ValidationError(at_line(path, lineNo) + ": " + e.what());
        }
        const long long nObs = parse_int(cells[3], at_line(path, lineNo));
        if (nObs != end - start + 1)
            throw ValidationError(at_line(path, lineNo) +
                                  ": n_obs disagrees with segment bounds");
        seg.segments.push_back(s);
    }
    if (seg.segments.empty())
        throw ValidationError(path + ": no segments");
    for (std::size_t k = 1; k < seg.segments.size(); ++k)
        seg.changePoints.push_back(seg.segments[k].start);
    return seg;
}

void write_labeled_tsv(const std::string& path, const LabeledSequence& seq) {
    std::ofstream out = open_output(path);
    out << "index\tbaf\ttruth\n";
    for (std::size_t i = 0; i < seq.baf.size(); ++i)
        out << i << '\t' << format_double(seq.baf[i]) << '\t'
            << (seq.truth[i] == RegionLabel::Loh ? 1 : 0) << '\n';
    if (!out) throw ValidationError("failed writing " + path);
}

std::vector<RegionLabel> read_labels_tsv(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError(path + ": no data");
    line = strip_cr(line);
    const std::vector<std::string> header = split_tabs(line);
    std::size_t labelCol = kNoCol, indexCol = kNoCol;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = lower(header[i]);
        if (name == "label" || name == "truth") labelCol = i;
        else if (name == "index") indexCol = i;
    }
    if (labelCol == kNoCol)
        throw ValidationError(path + ": header must contain a 'label' or 'truth' column");
    std::vector<RegionLabel> labels;
    std::size_t lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_tabs(line);
        if (cells.size() != header.size())
            throw ValidationError(at_line(path, lineNo) + ": expected " +
                                  std::to_string(header.size()) + " columns, got " +
                                  std::to_string(cells.size()));
        if (indexCol != kNoCol) {
            const long long idx = parse_int(cells[indexCol], at_line(path, lineNo));
            if (idx != static_cast<long long>(labels.size()))
                throw ValidationError(at_line(path, lineNo) +
                                      ": index column must run 0..n-1 in order");
        }
        try {
            labels.push_back(region_label_from_string(cells[labelCol]));
        } catch (const ValidationError& e) {
            throw ValidationError(at_line(path, lineNo) + ": " + e.what());
        }
    }
    if (labels.empty()) throw ValidationError(path + ": no data rows");
    return labels;
}

ResamplePools read_resample_pools(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError(path + ": no data");
    line = strip_cr(line);
    const std::vector<std::string> header = split_tabs(line);
    std::size_t bafCol = kNoCol, labelCol = kNoCol;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = lower(header[i]);
        if (name == "baf") bafCol = i;
        else if (name == "label") labelCol = i;
    }
    if (bafCol == kNoCol || labelCol == kNoCol)
        throw ValidationError(path + ": header must contain 'baf' and 'label' columns");
    ResamplePools pools;
    std::size_t lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_tabs(line);
        if (cells.size() != header.size())
            throw ValidationError(at_line(path, lineNo) + ": expected " +
                                  std::to_string(header.size()) + " columns, got " +
                                  std::to_string(cells.size()));
        const double v = parse_double(cells[bafCol], at_line(path, lineNo));
        check_baf_range(v, kSnapEps, at_line(path, lineNo));
        RegionLabel label;
        try {
            label = region_label_from_string(cells[labelCol]);
        } catch (const ValidationError& e) {
            throw ValidationError(at_line(path, lineNo) + ": " + e.what());
        }
        (label == RegionLabel::Loh ? pools.loh : pools.nonLoh).push_back(v);
    }
    if (pools.loh.empty() && pools.nonLoh.empty())
        throw ValidationError(path + ": no data rows");
    return pools;
}

namespace {

std::string opt_text(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("NA");
}

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

} // namespace

void write_study_tsv(const std::string& path, const StudyResult& study) {
    std::ofstream out = open_output(path);
    out << "m\tl\tpurity\treplicates\tsens_mean\tsens_se\tsens_n\tspec_mean\t"
           "spec_se\tspec_n\tpooled_tp\tpooled_fp\tpooled_tn\tpooled_fn\t"
           "pooled_sensitivity\tpooled_specificity\n";
    for (const StudyCell& c : study.cells) {
        out << c.minLen << '\t' << c.lohLen << '\t' << format_double(c.purity)
            << '\t' << c.replicates << '\t' << opt_text(c.sensMean) << '\t'
            << opt_text(c.sensSe) << '\t' << c.sensCount << '\t'
            << opt_text(c.specMean) << '\t' << opt_text(c.specSe) << '\t'
            << c.specCount << '\t' << c.pooled.tp << '\t' << c.pooled.fp << '\t'
            << c.pooled.tn << '\t' << c.pooled.fn << '\t'
            << opt_text(c.pooledMetrics.sensitivity) << '\t'
            << opt_text(c.pooledMetrics.specificity) << '\n';
    }
    if (!out) throw ValidationError("failed writing " + path);
}

std::string study_to_json_text(const StudyResult& study) {
    nlohmann::ordered_json doc;
    doc["cells"] = nlohmann::ordered_json::array();
    for (const StudyCell& c : study.cells) {
        nlohmann::ordered_json cell;
        cell["m"] = c.minLen;
        cell["l"] = c.lohLen;
        cell["purity"] = c.purity;
        cell["replicates"] = c.replicates;
        cell["sensitivity"] = {{"mean", opt_json(c.sensMean)},
                               {"se", opt_json(c.sensSe)},
                               {"n", c.sensCount}};
        cell["specificity"] = {{"mean", opt_json(c.specMean)},
                               {"se", opt_json(c.specSe)},
                               {"n", c.specCount}};
        cell["pooled"] = {{"tp", c.pooled.tp},
                          {"fp", c.pooled.fp},
                          {"tn", c.pooled.tn},
                          {"fn", c.pooled.fn},
                          {"sensitivity", opt_json(c.pooledMetrics.sensitivity)},
                          {"specificity", opt_json(c.pooledMetrics.specificity)}};
        doc["cells"].push_back(cell);
    }
    return doc.dump(2) + "\n";
}

void write_study_json(const std::string& path, const StudyResult& study) {
    std::ofstream out = open_output(path);
    out << study_to_json_text(study);
    if (!out) throw ValidationError("failed writing " + path);
}

} // namespace lohseg
