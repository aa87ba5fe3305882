#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"
#include "lohseg/io.hpp"

namespace {

std::string cli_path() {
    const char* p = std::getenv("LOHSEG_CLI");
    REQUIRE_MESSAGE(p != nullptr, "LOHSEG_CLI must point at the lohseg binary");
    return p;
}

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("lohseg_cli_test_" + std::to_string(++counter));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }

    std::string name(const std::string& n) const { return (path / n).string(); }

    int run(const std::string& args) const {
        const std::string cmd = cli_path() + std::string(" ") + args + " > " +
                                name("stdout.txt") + " 2> " + name("stderr.txt");
        const int rc = std::system(cmd.c_str());
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    }

    std::string out_text() const { return slurp(name("stdout.txt")); }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    }
};

std::size_t line_count(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

} // namespace

TEST_CASE("version and help exit cleanly") {
    TempDir tmp;
    CHECK(tmp.run("--version") == 0);
    CHECK(tmp.out_text().find("0.1.0") != std::string::npos);
    CHECK(tmp.run("--help") == 0);
    CHECK(tmp.out_text().find("segment") != std::string::npos);
    CHECK(tmp.run("segment --help") == 0);
}

TEST_CASE("usage and validation failures exit with code 2") {
    TempDir tmp;
    CHECK(tmp.run("frobnicate") == 2);
    CHECK(tmp.run("") == 2);
    // Input resolved through neither the command line nor a manifest.
    CHECK(tmp.run("fit --out " + tmp.name("m.json")) == 2);
    // Unreadable input.
    CHECK(tmp.run("fit " + tmp.name("absent.tsv") + " --out " +
                  tmp.name("m.json")) == 2);
    // Out-of-domain option on top of a valid model file.
    lohseg::write_model_json(tmp.name("model.json"),
                             {1.0 / 3.0, {0.1, 8.0}, {0.2, 8.0}});
    CHECK(tmp.run("calibrate --model " + tmp.name("model.json") +
                  " --alpha 2.0 --nsim 200 --out " + tmp.name("thr.json")) == 2);
    CHECK(tmp.run("calibrate --model " + tmp.name("model.json") +
                  " --nsim 50 --out " + tmp.name("thr.json")) == 2);
    CHECK(tmp.run("simulate --purity 0 --out " + tmp.name("sim.tsv")) == 2);
}

TEST_CASE("simulate fit segment evaluate pipeline") {
    TempDir tmp;

    REQUIRE(tmp.run("simulate --total-len 3000 --loh-len 0 --noise-sd 0.01 "
                    "--seed 42 --out " + tmp.name("train.tsv")) == 0);
    REQUIRE(tmp.run("simulate --total-len 800 --loh-start 400 --loh-len 200 "
                    "--purity 1 --noise-sd 0.01 --seed 7 --out " +
                    tmp.name("case.tsv")) == 0);

    REQUIRE(tmp.run("fit " + tmp.name("train.tsv") + " --out " +
                    tmp.name("model.json") + " --report-out " +
                    tmp.name("report.json")) == 0);
    const lohseg::MixtureModel model =
        lohseg::read_model_json(tmp.name("model.json"));
    CHECK(model.hetWeight > 0.2);
    CHECK(model.hetWeight < 0.45);
    const nlohmann::json report =
        nlohmann::json::parse(TempDir::slurp(tmp.name("report.json")));
    CHECK(report["converged"].get<bool>());
    CHECK(report["nObs"].get<int>() == 3000);
    CHECK(report["iterations"].get<int>() >= 1);

    REQUIRE(tmp.run("calibrate --model " + tmp.name("model.json") +
                    " --min-len 10 --nsim 500 --seed 1 --out " +
                    tmp.name("thr.json")) == 0);
    const nlohmann::json thr =
        nlohmann::json::parse(TempDir::slurp(tmp.name("thr.json")));
    CHECK(thr["l0"].get<double>() > 0.0);
    CHECK(thr["l1"].get<double>() > 0.0);
    CHECK(std::filesystem::exists(tmp.name("thr.json.manifest.json")));

    REQUIRE(tmp.run("segment " + tmp.name("case.tsv") + " --model " +
                    tmp.name("model.json") +
                    " --min-len 10 --nsim 2000 --seed 3 --out " +
                    tmp.name("seg.tsv") + " --plot-out " +
                    tmp.name("plot.tsv")) == 0);
    const lohseg::Segmentation seg =
        lohseg::read_segmentation_tsv(tmp.name("seg.tsv"));
    CHECK(seg.segments.front().start == 0);
    CHECK(seg.segments.back().end == 799);
    CHECK(line_count(TempDir::slurp(tmp.name("plot.tsv"))) == 801);

    REQUIRE(tmp.run("evaluate --gold " + tmp.name("case.tsv") + " --pred " +
                    tmp.name("seg.tsv") + " --out " +
                    tmp.name("metrics.json")) == 0);
    const nlohmann::json metrics =
        nlohmann::json::parse(TempDir::slurp(tmp.name("metrics.json")));
    CHECK(metrics["perInput"].size() == 1);
    CHECK(metrics["pooled"]["sensitivity"].get<double>() > 0.8);
    CHECK(metrics["pooled"]["specificity"].get<double>() > 0.8);
    CHECK(metrics["pooled"]["tp"].get<long long>() +
              metrics["pooled"]["fp"].get<long long>() +
              metrics["pooled"]["tn"].get<long long>() +
              metrics["pooled"]["fn"].get<long long>() == 800);
}

TEST_CASE("a rerun from the manifest reproduces the output bytes") {
    TempDir tmp;
    REQUIRE(tmp.run("simulate --total-len 400 --loh-start 100 --loh-len 80 "
                    "--seed 9 --out " + tmp.name("a.tsv")) == 0);
    REQUIRE(std::filesystem::exists(tmp.name("a.tsv.manifest.json")));
    REQUIRE(tmp.run("simulate --from-manifest " + tmp.name("a.tsv.manifest.json") +
                    " --out " + tmp.name("b.tsv")) == 0);
    CHECK(TempDir::slurp(tmp.name("b.tsv")) == TempDir::slurp(tmp.name("a.tsv")));

    // Explicit flags override manifest-resolved values.
    REQUIRE(tmp.run("simulate --from-manifest " + tmp.name("a.tsv.manifest.json") +
                    " --seed 10 --out " + tmp.name("c.tsv")) == 0);
    CHECK(TempDir::slurp(tmp.name("c.tsv")) != TempDir::slurp(tmp.name("a.tsv")));
}

TEST_CASE("small study emits both tables") {
    TempDir tmp;
    REQUIRE(tmp.run("study --loh-lens 30 --purities 1 --min-lens 5 "
                    "--replicates 2 --train-len 600 --total-len 200 "
                    "--loh-start 80 --nsim 200 --seed 5 --out " +
                    tmp.name("study.tsv") + " --json-out " +
                    tmp.name("study.json")) == 0);
    const std::string tsv = TempDir::slurp(tmp.name("study.tsv"));
    CHECK(line_count(tsv) == 2);
    CHECK(tsv.rfind("m\tl\tpurity", 0) == 0);
    const nlohmann::json doc =
        nlohmann::json::parse(TempDir::slurp(tmp.name("study.json")));
    REQUIRE(doc["cells"].size() == 1);
    CHECK(doc["cells"][0]["m"].get<int>() == 5);
    CHECK(doc["cells"][0]["l"].get<int>() == 30);
    CHECK(doc["cells"][0]["replicates"].get<int>() == 2);
}
