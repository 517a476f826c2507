// rancca: canonical correlation analysis for RAN KPI data.
//
// Subcommands: simulate, analyze, pair-cross-variable, oracle.
// stdout carries machine-parseable key=value result lines only; diagnostics
// go to stderr. Exit codes: 0 ok, 2 invalid arguments/config, 3 I/O error,
// 4 degenerate data, 5 alignment failure, 6 oracle mismatch.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rancca/cca.hpp"
#include "rancca/csv_io.hpp"
#include "rancca/manifest.hpp"
#include "rancca/oracle.hpp"
#include "rancca/pairing.hpp"
#include "rancca/report.hpp"
#include "rancca/simulator.hpp"
#include "rancca/version.hpp"

namespace fs = std::filesystem;
using namespace rancca;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitAlignment = 5;
constexpr int kExitOracleMismatch = 6;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto pos = text.find(',', start);
        if (pos == std::string::npos) pos = text.size();
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

void write_text_file(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << body;
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

struct SimulateArgs {
    std::string config_path;
    std::string out_dir;
    std::int64_t hours_override = -1;
    std::int64_t seed_override = -1;
};

int cmd_simulate(const SimulateArgs& args, const std::vector<std::string>& argv) {
    SimConfig config = load_sim_config(args.config_path);
    if (args.hours_override >= 0) config.hours = static_cast<std::size_t>(args.hours_override);
    if (args.seed_override >= 0) config.seed = static_cast<std::uint64_t>(args.seed_override);
    config.validate();

    const SectorTrace trace = simulate(config);
    ensure_dir(args.out_dir);
    const auto [coverage_path, capacity_path] = export_trace(trace, args.out_dir);

    RunManifest manifest;
    manifest.command = "simulate";
    manifest.argv = argv;
    std::istringstream cfg(render_sim_config(config));
    std::string line;
    while (std::getline(cfg, line)) {
        const auto eq = line.find('=');
        manifest.parameters.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    manifest.inputs.emplace_back(args.config_path, sha256_file(args.config_path));
    manifest.outputs = {coverage_path.string(), capacity_path.string()};
    manifest.library_version = kVersion;
    manifest.created_utc = utc_timestamp();
    write_manifest(manifest, fs::path(args.out_dir) / "manifest.json");

    std::size_t shutdown_hours = 0;
    for (bool shut : trace.shutdown_mask) shutdown_hours += shut ? 1 : 0;
    std::printf("coverage_csv=%s\n", coverage_path.c_str());
    std::printf("capacity_csv=%s\n", capacity_path.c_str());
    std::printf("shutdown_hours=%zu\n", shutdown_hours);
    return kExitOk;
}

struct AnalyzeArgs {
    std::string x_csv;
    std::string y_csv;
    std::string x_cols;
    std::string y_cols;
    std::string arrangement = "cross-cell";
    std::string aggregator = "mean";
    double ridge = 0.0;
    std::string out_dir;
};

int write_report_outputs(const CcaModel& model,
                         const PairedDataset& data,
                         const std::string& out_dir,
                         RunManifest manifest) {
    const LoadingsReport report = build_report(model, data);
    ensure_dir(out_dir);
    const fs::path dir(out_dir);

    write_text_file(dir / "report.json", render_json(report));
    write_text_file(dir / "table1.csv", render_table_csv(report, TableId::XWithin));
    write_text_file(dir / "table2.csv", render_table_csv(report, TableId::YWithin));
    write_text_file(dir / "table3.csv", render_table_csv(report, TableId::YCross));
    write_text_file(dir / "table4.csv", render_table_csv(report, TableId::XCross));
    write_text_file(dir / "report.txt", render_text(report));

    for (const char* name :
         {"report.json", "table1.csv", "table2.csv", "table3.csv", "table4.csv", "report.txt"}) {
        manifest.outputs.push_back((dir / name).string());
    }
    manifest.library_version = kVersion;
    manifest.created_utc = utc_timestamp();
    write_manifest(manifest, dir / "manifest.json");

    if (model.discarded_pairs() > 0) {
        std::fprintf(stderr, "note: discarded %zu near-zero canonical directions\n",
                     model.discarded_pairs());
    }
    if (data.swapped()) {
        std::fprintf(stderr, "note: blocks swapped to enforce p <= q; X is the second block\n");
    }
    std::printf("rho1=%.5f\n", report.rho1);
    return kExitOk;
}

int cmd_analyze(const AnalyzeArgs& args, const std::vector<std::string>& argv) {
    const auto x_cols = split_list(args.x_cols);
    const auto y_cols = split_list(args.y_cols);

    const KpiFrame frame_x = load_csv(args.x_csv, fs::path(args.x_csv).stem().string());
    const KpiFrame frame_y = load_csv(args.y_csv, fs::path(args.y_csv).stem().string());

    PairedDataset data =
        args.arrangement == "cross-variable"
            ? pair_cross_variable({frame_x, frame_y}, x_cols, y_cols,
                                  aggregator_from_string(args.aggregator))
            : pair_cross_cell(frame_x, frame_y, x_cols, y_cols);
    const CcaModel model = fit(data, args.ridge);

    RunManifest manifest;
    manifest.command = "analyze";
    manifest.argv = argv;
    manifest.parameters.emplace_back("x_cols", args.x_cols);
    manifest.parameters.emplace_back("y_cols", args.y_cols);
    manifest.parameters.emplace_back("arrangement", args.arrangement);
    char ridge_buf[32];
    std::snprintf(ridge_buf, sizeof(ridge_buf), "%.17g", args.ridge);
    manifest.parameters.emplace_back("ridge", ridge_buf);
    manifest.inputs.emplace_back(args.x_csv, sha256_file(args.x_csv));
    manifest.inputs.emplace_back(args.y_csv, sha256_file(args.y_csv));

    return write_report_outputs(model, data, args.out_dir, std::move(manifest));
}

struct PairCrossVariableArgs {
    std::vector<std::string> inputs;
    std::string x_cols;
    std::string y_cols;
    std::string aggregator = "mean";
    double ridge = 0.0;
    std::string out_dir;
};

int cmd_pair_cross_variable(const PairCrossVariableArgs& args,
                            const std::vector<std::string>& argv) {
    std::vector<KpiFrame> frames;
    frames.reserve(args.inputs.size());
    for (const auto& input : args.inputs) {
        frames.push_back(load_csv(input, fs::path(input).stem().string()));
    }
    const PairedDataset data = pair_cross_variable(frames, split_list(args.x_cols),
                                                   split_list(args.y_cols),
                                                   aggregator_from_string(args.aggregator));
    const CcaModel model = fit(data, args.ridge);

    RunManifest manifest;
    manifest.command = "pair-cross-variable";
    manifest.argv = argv;
    manifest.parameters.emplace_back("x_cols", args.x_cols);
    manifest.parameters.emplace_back("y_cols", args.y_cols);
    manifest.parameters.emplace_back("aggregator", args.aggregator);
    char ridge_buf[32];
    std::snprintf(ridge_buf, sizeof(ridge_buf), "%.17g", args.ridge);
    manifest.parameters.emplace_back("ridge", ridge_buf);
    for (const auto& input : args.inputs) {
        manifest.inputs.emplace_back(input, sha256_file(input));
    }
    return write_report_outputs(model, data, args.out_dir, std::move(manifest));
}

struct OracleArgs {
    std::string x_csv;
    std::string y_csv;
    std::string x_cols;
    std::string y_cols;
    std::size_t grid = 2000;
};

int cmd_oracle(const OracleArgs& args) {
    const auto x_cols = split_list(args.x_cols);
    const auto y_cols = split_list(args.y_cols);
    if (x_cols.size() != 2 || y_cols.size() != 2) {
        std::fprintf(stderr, "oracle requires exactly 2 columns per block (p = q = 2)\n");
        return kExitUsage;
    }

    const KpiFrame frame_x = load_csv(args.x_csv, fs::path(args.x_csv).stem().string());
    const KpiFrame frame_y = load_csv(args.y_csv, fs::path(args.y_csv).stem().string());
    const PairedDataset data = pair_cross_cell(frame_x, frame_y, x_cols, y_cols);

    const double solver_rho1 = fit(data).rho()(0);
    const double oracle_max = grid_search_max_correlation(data.x(), data.y(), args.grid);
    const double diff = solver_rho1 - oracle_max;

    std::printf("oracle_max=%.10f\n", oracle_max);
    std::printf("solver_rho1=%.10f\n", solver_rho1);
    std::printf("diff=%.3e\n", diff);
    if (std::abs(diff) > 1e-3) {
        std::fprintf(stderr, "solver and grid oracle disagree beyond 1e-3 (grid too coarse?)\n");
        return kExitOracleMismatch;
    }
    return kExitOk;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Canonical correlation analysis toolkit for RAN KPI data"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate",
                                   "Generate a synthetic coverage/capacity sector trace");
    sim->add_option("--config", sim_args.config_path, "key=value simulation config")->required();
    sim->add_option("--out-dir", sim_args.out_dir, "output directory")->required();
    sim->add_option("--hours", sim_args.hours_override, "override the configured duration")
        ->check(CLI::NonNegativeNumber);
    sim->add_option("--seed", sim_args.seed_override, "override the configured seed")
        ->check(CLI::NonNegativeNumber);

    AnalyzeArgs an_args;
    auto* an = app.add_subcommand("analyze", "Pair two KPI CSVs and fit a CCA model");
    an->add_option("--x-csv", an_args.x_csv, "CSV of the X block cell")->required();
    an->add_option("--y-csv", an_args.y_csv, "CSV of the Y block cell")->required();
    an->add_option("--x-cols", an_args.x_cols, "comma-separated X KPIs")->required();
    an->add_option("--y-cols", an_args.y_cols, "comma-separated Y KPIs")->required();
    an->add_option("--arrangement", an_args.arrangement, "cross-cell (default) or cross-variable")
        ->check(CLI::IsMember({"cross-cell", "cross-variable"}));
    an->add_option("--aggregator", an_args.aggregator,
                   "time aggregate for cross-variable: mean, sum or last");
    an->add_option("--ridge", an_args.ridge, "ridge added to the covariance diagonals");
    an->add_option("--out-dir", an_args.out_dir, "output directory")->required();

    PairCrossVariableArgs pcv_args;
    auto* pcv = app.add_subcommand("pair-cross-variable",
                                   "Fit a CCA across cells on time-aggregated KPIs");
    pcv->add_option("--inputs", pcv_args.inputs, "KPI CSVs, one per cell (two or more)")
        ->required()
        ->delimiter(',');
    pcv->add_option("--x-cols", pcv_args.x_cols, "comma-separated X KPIs")->required();
    pcv->add_option("--y-cols", pcv_args.y_cols, "comma-separated Y KPIs")->required();
    pcv->add_option("--aggregator", pcv_args.aggregator, "mean (default), sum or last");
    pcv->add_option("--ridge", pcv_args.ridge, "ridge added to the covariance diagonals");
    pcv->add_option("--out-dir", pcv_args.out_dir, "output directory")->required();

    OracleArgs or_args;
    auto* orc = app.add_subcommand("oracle",
                                   "Check the solver against the brute-force angle grid (p = q = 2)");
    orc->add_option("--x-csv", or_args.x_csv, "CSV of the X block cell")->required();
    orc->add_option("--y-csv", or_args.y_csv, "CSV of the Y block cell")->required();
    orc->add_option("--x-cols", or_args.x_cols, "exactly 2 X KPIs")->required();
    orc->add_option("--y-cols", or_args.y_cols, "exactly 2 Y KPIs")->required();
    orc->add_option("--grid", or_args.grid, "angle grid size per block (default 2000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    const std::vector<std::string> full_argv(argv, argv + argc);
    if (sim->parsed()) return cmd_simulate(sim_args, full_argv);
    if (an->parsed()) return cmd_analyze(an_args, full_argv);
    if (pcv->parsed()) return cmd_pair_cross_variable(pcv_args, full_argv);
    if (orc->parsed()) return cmd_oracle(or_args);
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const AlignmentError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitAlignment;
    } catch (const DegenerateColumnError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDegenerate;
    } catch (const SingularCovarianceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDegenerate;
    } catch (const UnderdeterminedError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDegenerate;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const Error& e) {
        // ParseError, OrderError, NameError, ConfigError, ShapeError, ...:
        // all count as invalid input.
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}
