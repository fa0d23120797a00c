#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = WEYLP_CLI_PATH;

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("weylp_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::vector<json> read_jsonl(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::vector<json> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(json::parse(line));
    return lines;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("cli: help and argument errors exit with the documented codes") {
    CHECK(run("--help") == 0);
    CHECK(run("estimate-b --help") == 0);
    CHECK(run("") == 2);                      // a subcommand is required
    CHECK(run("no-such-command") == 2);
    CHECK(run("estimate-b --bogus-flag 1") == 2);
    CHECK(run("estimate-b --format xml --T 4 --trials 32") == 2);
    CHECK(run("estimate-b --step 0 --T 4 --trials 32") == 2);
    // a single T value cannot support a slope fit
    CHECK(run("estimate-b --T 0 --trials 64") == 3);
    // whole-line persistence of an odd-degree polynomial is ill-posed
    CHECK(run("weyl-exponent --side whole --n 63 --trials 64") == 7);
}

TEST_CASE("cli: estimate-b emits the documented record schema") {
    const fs::path out = work_dir() / "eb.jsonl";
    CHECK(run("estimate-b --T 2,3,4 --step 0.1 --trials 4096 --seed 7 --out " +
              out.string()) == 0);
    const auto lines = read_jsonl(out);
    REQUIRE(lines.size() == 5);  // run header + 3 estimates + 1 fit

    const json& head = lines[0];
    CHECK(head.at("type") == "run");
    CHECK(head.at("schema_version") == 1);
    CHECK(head.contains("build_id"));
    CHECK(head.at("config").at("subcommand") == "estimate-b");
    CHECK(head.at("config").at("trials") == 4096);
    CHECK(head.at("summary").contains("b_hat"));
    CHECK(head.at("summary").contains("b_stderr"));
    // wall-clock facts stay out of the payload so reruns are byte-identical
    CHECK_FALSE(head.contains("duration_seconds"));
    CHECK_FALSE(head.contains("timestamp"));

    for (std::size_t i = 1; i <= 3; ++i) {
        const json& e = lines[i];
        CHECK(e.at("type") == "estimate");
        for (const char* key :
             {"params", "trials", "successes", "p_hat", "ci", "log_p", "scale", "seed"})
            CHECK(e.contains(key));
        CHECK(e.at("ci").is_array());
        CHECK(e.at("ci").size() == 2);
        CHECK(e.at("params").contains("T"));
    }
    const json& fit = lines[4];
    CHECK(fit.at("type") == "fit");
    for (const char* key : {"label", "slope", "stderr", "intercept", "r2", "points"})
        CHECK(fit.contains(key));
    CHECK(fit.at("points").size() == 3);
}

TEST_CASE("cli: reruns and worker counts leave the output byte-identical") {
    const fs::path a = work_dir() / "det_a.jsonl";
    const fs::path b = work_dir() / "det_b.jsonl";
    const std::string base = "weyl-exponent --side half --n 8,16,24 --step 0.1 --trials 20000 "
                             "--seed 99 --out ";

    // Identical command repeated: the whole file is byte-identical.
    CHECK(run(base + a.string() + " --workers 1") == 0);
    const std::string first = slurp(a);
    CHECK(run(base + a.string() + " --workers 1") == 0);
    CHECK_FALSE(first.empty());
    CHECK(first == slurp(a));

    // Different worker count and output path: the run header echoes both, so
    // compare every payload line plus the header's summary block instead.
    CHECK(run(base + b.string() + " --workers 3") == 0);
    const auto la = read_jsonl(a);
    const auto lb = read_jsonl(b);
    REQUIRE(la.size() == lb.size());
    CHECK(la[0].at("summary") == lb[0].at("summary"));
    for (std::size_t i = 1; i < la.size(); ++i) CHECK(la[i].dump() == lb[i].dump());
}

TEST_CASE("cli: config file provides values, explicit flags win") {
    const fs::path cfg = work_dir() / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "# smoke config\n"
          << "trials = 1111\n"
          << "step = 0.2\n"
          << "seed = 5\n"
          << "T_list = 2, 3, 4\n";
    }
    const fs::path out = work_dir() / "cfg_run.jsonl";
    CHECK(run("estimate-b --config " + cfg.string() + " --trials 2222 --out " +
              out.string()) == 0);
    const auto lines = read_jsonl(out);
    const json& config = lines[0].at("config");
    CHECK(config.at("trials") == 2222);    // flag overrides file
    CHECK(config.at("step") == 0.2);       // file overrides default
    CHECK(config.at("seed") == 5);
    CHECK(config.at("T_list").size() == 3);

    CHECK(run("estimate-b --config " + (work_dir() / "missing.cfg").string()) == 2);
}

TEST_CASE("cli: verify-bounds emits one passing report per inequality") {
    const fs::path out = work_dir() / "vb.jsonl";
    CHECK(run("verify-bounds --out " + out.string()) == 0);
    const auto lines = read_jsonl(out);
    REQUIRE(lines.size() == 11);  // run header + 10 reports
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const json& r = lines[i];
        CHECK(r.at("type") == "report");
        for (const char* key : {"name", "swept_box", "worst_margin", "worst_point", "pass",
                                "tolerance", "thresholds"})
            CHECK(r.contains(key));
        CHECK(r.at("pass") == true);
    }
}

TEST_CASE("cli: decompose emits window estimates and consistency summaries") {
    const fs::path out = work_dir() / "dec.jsonl";
    CHECK(run("decompose --n 64 --step 0.1 --trials 20000 --out " + out.string()) == 0);
    const auto lines = read_jsonl(out);
    REQUIRE(lines.size() == 5);  // run header + A, B, C, full
    int windows = 0;
    for (std::size_t i = 1; i < lines.size(); ++i)
        if (lines[i].at("params").contains("window")) ++windows;
    CHECK(windows == 4);
    const json& summary = lines[0].at("summary");
    CHECK(summary.contains("slepian_margin_64"));
    CHECK(summary.contains("neglog_B_over_sqrt_n_64"));
    CHECK(summary.contains("neglog_C_over_sqrt_n_64"));
    CHECK(summary.at("slepian_margin_64").get<double>() >= 0.0);
}

TEST_CASE("cli: csv format writes sectioned tables") {
    const fs::path out = work_dir() / "eb.csv";
    CHECK(run("estimate-b --T 2,3,4 --step 0.1 --trials 4096 --seed 7 --format csv --out " +
              out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("record,") == 0);  // leading header row
    CHECK(text.find("estimate,") != std::string::npos);
    CHECK(text.find("fit,") != std::string::npos);
}
