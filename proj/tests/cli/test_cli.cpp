// End-to-end checks of the rancca binary: exit codes, stdout contract,
// output files. The binary path comes in through RANCCA_CLI_PATH.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rancca/csv_io.hpp"
#include "rancca/simulator.hpp"
#include "rancca/splitmix.hpp"
#include "../unit/test_support.hpp"

namespace fs = std::filesystem;
using namespace rancca;
using test_support::TempDir;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliResult run_cli(const std::string& args, const fs::path& scratch) {
    const auto out_path = scratch / "stdout.txt";
    const auto err_path = scratch / "stderr.txt";
    const std::string command = std::string(RANCCA_CLI_PATH) + " " + args + " > " +
                                out_path.string() + " 2> " + err_path.string();
    const int status = std::system(command.c_str());
    CliResult result;
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

std::string default_config() {
    return (fs::path(RANCCA_SOURCE_DIR) / "config" / "default.cfg").string();
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text) lines += (c == '\n') ? 1 : 0;
    return lines;
}

const std::string kCaseStudyCols =
    "--x-cols unavailable_time,max_dl_tx_power,avg_users "
    "--y-cols dl_prb,ul_prb,throughput,avg_users";

} // namespace

TEST_CASE("simulate writes the one-week trace, manifest included") {
    TempDir dir("cli_sim");
    const auto out_dir = dir.path() / "out";
    const auto result =
        run_cli("simulate --config " + default_config() + " --out-dir " + out_dir.string(),
                dir.path());
    CHECK(result.code == 0);

    // stdout carries key=value lines only
    CHECK(result.out.find("coverage_csv=") != std::string::npos);
    CHECK(result.out.find("shutdown_hours=") != std::string::npos);
    for (const auto& line : {result.out}) CHECK(line.find("error") == std::string::npos);

    const auto coverage = load_csv(out_dir / "coverage.csv", "coverage");
    CHECK(coverage.rows() == 168);
    CHECK(coverage.kpi_count() == 6);

    const auto manifest = nlohmann::json::parse(slurp(out_dir / "manifest.json"));
    CHECK(manifest.at("command") == "simulate");
    CHECK(manifest.at("parameters").at("seed") == "42");
    CHECK(manifest.at("inputs").at(0).at("sha256").get<std::string>().size() == 64);
    CHECK(manifest.at("outputs").size() == 2);
}

TEST_CASE("simulate honors the hours override") {
    TempDir dir("cli_sim24");
    const auto out_dir = dir.path() / "out";
    const auto result = run_cli("simulate --config " + default_config() +
                                    " --hours 24 --out-dir " + out_dir.string(),
                                dir.path());
    CHECK(result.code == 0);
    CHECK(load_csv(out_dir / "capacity.csv", "capacity").rows() == 24);
}

TEST_CASE("simulate exit codes: config and I/O errors") {
    TempDir dir("cli_sim_err");
    auto result = run_cli("simulate --config " + (dir.path() / "nope.cfg").string() +
                              " --out-dir " + (dir.path() / "out").string(),
                          dir.path());
    CHECK(result.code == 2); // missing config counts as a config error
    CHECK(result.out.empty());
    CHECK_FALSE(result.err.empty());

    const auto bad_cfg = dir.path() / "bad.cfg";
    std::ofstream(bad_cfg) << "hours=3\n";
    result = run_cli("simulate --config " + bad_cfg.string() + " --out-dir " +
                         (dir.path() / "out").string(),
                     dir.path());
    CHECK(result.code == 2);

    const auto blocker = dir.path() / "blocker";
    std::ofstream(blocker) << "x";
    result = run_cli("simulate --config " + default_config() + " --out-dir " +
                         (blocker / "out").string(),
                     dir.path());
    CHECK(result.code == 3);
}

TEST_CASE("analyze runs the case-study selection") {
    TempDir dir("cli_analyze");
    const auto sim_dir = dir.path() / "sim";
    REQUIRE(run_cli("simulate --config " + default_config() + " --out-dir " + sim_dir.string(),
                    dir.path())
                .code == 0);

    const auto out_dir = dir.path() / "out";
    const auto result = run_cli(
        "analyze --x-csv " + (sim_dir / "capacity.csv").string() + " --y-csv " +
            (sim_dir / "coverage.csv").string() + " " + kCaseStudyCols +
            " --ridge 1e-6 --out-dir " + out_dir.string(),
        dir.path());
    CHECK(result.code == 0);

    // stdout is exactly one machine-parseable line
    CHECK(result.out.rfind("rho1=", 0) == 0);
    CHECK(count_lines(result.out) == 1);
    const double rho1 = std::stod(result.out.substr(5));
    CHECK(rho1 > 0.8);
    CHECK(rho1 <= 1.0);

    for (const char* name :
         {"report.json", "table1.csv", "table2.csv", "table3.csv", "table4.csv", "report.txt",
          "manifest.json"}) {
        CHECK(fs::exists(out_dir / name));
    }
    const auto manifest = nlohmann::json::parse(slurp(out_dir / "manifest.json"));
    CHECK(manifest.at("outputs").size() == 6);
    CHECK(manifest.at("inputs").size() == 2);
}

TEST_CASE("analyze of a frame against itself prints rho1=1.00000") {
    TempDir dir("cli_self");
    const auto frame = test_support::make_frame("cell", 0, 60, 5, {"k1", "k2", "k3"});
    const auto csv = dir.path() / "cell.csv";
    save_csv(frame, csv);

    const auto result = run_cli("analyze --x-csv " + csv.string() + " --y-csv " + csv.string() +
                                    " --x-cols k1,k2,k3 --y-cols k1,k2,k3 --out-dir " +
                                    (dir.path() / "out").string(),
                                dir.path());
    CHECK(result.code == 0);
    CHECK(result.out == "rho1=1.00000\n");
}

TEST_CASE("analyze exit codes for bad inputs") {
    TempDir dir("cli_an_err");
    const auto sim_dir = dir.path() / "sim";
    REQUIRE(run_cli("simulate --config " + default_config() + " --hours 48 --out-dir " +
                        sim_dir.string(),
                    dir.path())
                .code == 0);
    const std::string cap = (sim_dir / "capacity.csv").string();
    const std::string cov = (sim_dir / "coverage.csv").string();
    const std::string out = (dir.path() / "out").string();

    // constant column: the coverage cell is never unavailable
    auto result = run_cli("analyze --x-csv " + cov + " --y-csv " + cap +
                              " --x-cols unavailable_time,avg_users --y-cols dl_prb"
                              " --out-dir " + out,
                          dir.path());
    CHECK(result.code == 4);
    CHECK(result.err.find("unavailable_time") != std::string::npos);

    // collinear block without ridge
    result = run_cli("analyze --x-csv " + cap + " --y-csv " + cov + " " + kCaseStudyCols +
                         " --out-dir " + out,
                     dir.path());
    CHECK(result.code == 4);
    CHECK(result.err.find("ridge") != std::string::npos);

    // misspelled column
    result = run_cli("analyze --x-csv " + cap + " --y-csv " + cov +
                         " --x-cols avg_userz --y-cols dl_prb --out-dir " + out,
                     dir.path());
    CHECK(result.code == 2);

    // missing required flag
    result = run_cli("analyze --x-csv " + cap + " --y-cols dl_prb --out-dir " + out, dir.path());
    CHECK(result.code == 2);

    // disjoint time ranges
    const auto early = test_support::make_frame("early", 0, 24, 7, {"k"});
    const auto late = test_support::make_frame("late", 1000, 24, 8, {"k"});
    save_csv(early, dir.path() / "early.csv");
    save_csv(late, dir.path() / "late.csv");
    result = run_cli("analyze --x-csv " + (dir.path() / "early.csv").string() + " --y-csv " +
                         (dir.path() / "late.csv").string() +
                         " --x-cols k --y-cols k --out-dir " + out,
                     dir.path());
    CHECK(result.code == 5);

    // more columns than rows
    const auto tiny = test_support::make_frame("tiny", 0, 3, 9, {"k1", "k2", "k3"});
    save_csv(tiny, dir.path() / "tiny.csv");
    result = run_cli("analyze --x-csv " + (dir.path() / "tiny.csv").string() + " --y-csv " +
                         (dir.path() / "tiny.csv").string() +
                         " --x-cols k1,k2,k3 --y-cols k1,k2,k3 --out-dir " + out,
                     dir.path());
    CHECK(result.code == 4);
}

TEST_CASE("oracle agrees with the solver on simulated data") {
    TempDir dir("cli_oracle");
    const auto sim_dir = dir.path() / "sim";
    REQUIRE(run_cli("simulate --config " + default_config() + " --out-dir " + sim_dir.string(),
                    dir.path())
                .code == 0);

    const auto result = run_cli(
        "oracle --x-csv " + (sim_dir / "coverage.csv").string() + " --y-csv " +
            (sim_dir / "capacity.csv").string() +
            " --x-cols dl_prb,ul_prb --y-cols throughput,avg_users --grid 2000",
        dir.path());
    CHECK(result.code == 0);
    CHECK(result.out.find("oracle_max=") != std::string::npos);
    CHECK(result.out.find("solver_rho1=") != std::string::npos);
    CHECK(result.out.find("diff=") != std::string::npos);
}

TEST_CASE("oracle rejects p != 2 selections") {
    TempDir dir("cli_oracle_p3");
    const auto frame = test_support::make_frame("cell", 0, 40, 11, {"k1", "k2", "k3"});
    save_csv(frame, dir.path() / "c.csv");
    const auto result = run_cli("oracle --x-csv " + (dir.path() / "c.csv").string() +
                                    " --y-csv " + (dir.path() / "c.csv").string() +
                                    " --x-cols k1,k2,k3 --y-cols k1,k2",
                                dir.path());
    CHECK(result.code == 2);
}

TEST_CASE("a deliberately coarse grid fails with exit 6") {
    TempDir dir("cli_oracle_coarse");
    // Optimal directions sit at 45 degrees; a grid of two angles per block
    // (0 and 90 degrees) cannot reach them.
    SplitMix64 rng(21);
    const std::size_t rows = 60;
    std::vector<double> x1(rows), x2(rows), y1(rows), y2(rows);
    std::vector<std::int64_t> ts(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        ts[i] = std::int64_t(i);
        x1[i] = rng.next_normal();
        x2[i] = rng.next_normal();
        y1[i] = x1[i] + x2[i];
        y2[i] = x1[i] - x2[i];
    }
    save_csv(KpiFrame("x", ts, {{"k1", Category::PM, "", x1}, {"k2", Category::PM, "", x2}}),
             dir.path() / "x.csv");
    save_csv(KpiFrame("y", ts, {{"k1", Category::PM, "", y1}, {"k2", Category::PM, "", y2}}),
             dir.path() / "y.csv");

    const auto coarse = run_cli("oracle --x-csv " + (dir.path() / "x.csv").string() +
                                    " --y-csv " + (dir.path() / "y.csv").string() +
                                    " --x-cols k1,k2 --y-cols k1,k2 --grid 2",
                                dir.path());
    CHECK(coarse.code == 6);

    const auto fine = run_cli("oracle --x-csv " + (dir.path() / "x.csv").string() + " --y-csv " +
                                  (dir.path() / "y.csv").string() +
                                  " --x-cols k1,k2 --y-cols k1,k2 --grid 2000",
                              dir.path());
    CHECK(fine.code == 0);
}

TEST_CASE("pair-cross-variable fits across cells") {
    TempDir dir("cli_pcv");
    std::vector<std::string> inputs;
    for (int c = 0; c < 8; ++c) {
        const auto frame = test_support::make_frame("cell" + std::to_string(c), 0, 24,
                                                    400 + std::uint64_t(c), {"p1", "c1", "c2"});
        const auto path = dir.path() / ("cell" + std::to_string(c) + ".csv");
        save_csv(frame, path);
        inputs.push_back(path.string());
    }
    std::string joined = inputs[0];
    for (std::size_t i = 1; i < inputs.size(); ++i) joined += "," + inputs[i];

    const auto result = run_cli("pair-cross-variable --inputs " + joined +
                                    " --x-cols p1 --y-cols c1,c2 --aggregator mean --out-dir " +
                                    (dir.path() / "out").string(),
                                dir.path());
    CHECK(result.code == 0);
    CHECK(result.out.rfind("rho1=", 0) == 0);
    CHECK(fs::exists(dir.path() / "out" / "report.json"));

    const auto single = run_cli("pair-cross-variable --inputs " + inputs[0] +
                                    " --x-cols p1 --y-cols c1 --out-dir " +
                                    (dir.path() / "out2").string(),
                                dir.path());
    CHECK(single.code == 2);
}

TEST_CASE("usage errors and help") {
    TempDir dir("cli_usage");
    CHECK(run_cli("--help", dir.path()).code == 0);
    CHECK(run_cli("no-such-command", dir.path()).code == 2);
    CHECK(run_cli("", dir.path()).code == 2);
}
