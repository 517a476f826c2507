#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rancca/report.hpp"
#include "test_support.hpp"

using namespace rancca;
using test_support::correlated_blocks;
using test_support::sequential_labels;

namespace {

PairedDataset dataset_from(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    return PairedDataset::from_matrices(x, y, sequential_labels("x", std::size_t(x.cols())),
                                        sequential_labels("y", std::size_t(y.cols())),
                                        Arrangement::CrossCell, true);
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text) lines += (c == '\n') ? 1 : 0;
    return lines;
}

} // namespace

TEST_CASE("build_report satisfies the table invariants") {
    auto [x, y] = correlated_blocks(301, 80, 3, 4);
    const auto data = dataset_from(x, y);
    const auto model = fit(data);
    const auto report = build_report(model, data);

    CHECK(report.rho1 == model.rho()(0));
    CHECK(report.canonical_correlations.size() == model.r());

    for (const auto* table :
         {&report.x_within, &report.y_within, &report.y_cross, &report.x_cross}) {
        const auto n = table->values.rows();
        CHECK(std::size_t(n) == table->labels.size());
        for (Eigen::Index i = 0; i < n; ++i) {
            CHECK(table->values(i, i) == 1.0);
            for (Eigen::Index j = 0; j < n; ++j) {
                CHECK(table->values(i, j) >= -1.0);
                CHECK(table->values(i, j) <= 1.0);
                CHECK(table->values(i, j) == table->values(j, i));
            }
        }
    }

    // Cross-loading identity on the first rows.
    for (Eigen::Index j = 1; j < report.y_cross.values.cols(); ++j) {
        CHECK(std::abs(report.y_cross.values(0, j) -
                       report.rho1 * report.y_within.values(0, j)) < 1e-8);
    }
    for (Eigen::Index j = 1; j < report.x_cross.values.cols(); ++j) {
        CHECK(std::abs(report.x_cross.values(0, j) -
                       report.rho1 * report.x_within.values(0, j)) < 1e-8);
    }

    // Variable-variable entries are shared between within and cross tables.
    CHECK(report.y_cross.values.bottomRightCorner(4, 4) ==
          report.y_within.values.bottomRightCorner(4, 4));
    CHECK(report.x_cross.values.bottomRightCorner(3, 3) ==
          report.x_within.values.bottomRightCorner(3, 3));

    CHECK(report.x_within.labels.front() == "U1");
    CHECK(report.y_within.labels.front() == "V1");
    CHECK(report.y_cross.labels.front() == "U1");
    CHECK(report.x_cross.labels.front() == "V1");
}

TEST_CASE("self-pairing collapses the cross table onto the within table") {
    auto [x, y_unused] = correlated_blocks(307, 50, 3, 3);
    const auto data = dataset_from(x, x);
    const auto model = fit(data);
    const auto report = build_report(model, data);

    CHECK(report.rho1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((report.y_cross.values - report.y_within.values).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("p = q = 1 report is Pearson-consistent") {
    // Hand data: x = 1..5, y = (1,3,2,5,4) -> pearson = 0.8 exactly.
    Eigen::MatrixXd x(5, 1), y(5, 1);
    x << 1, 2, 3, 4, 5;
    y << 1, 3, 2, 5, 4;
    const auto data = dataset_from(x, y);
    const auto model = fit(data);
    const auto report = build_report(model, data);

    CHECK(report.rho1 == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(report.x_within.values.rows() == 2);
    CHECK(report.x_within.values(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.y_cross.values(0, 1) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(report.x_cross.values(0, 1) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("render_json is byte-stable and round-trips through raw values") {
    auto [x, y] = correlated_blocks(311, 60, 2, 3);
    const auto data = dataset_from(x, y);
    const auto report = build_report(fit(data), data);

    const std::string once = render_json(report);
    const std::string twice = render_json(build_report(fit(data), data));
    CHECK(once == twice);

    const auto parsed = parse_report_json(once);
    CHECK(parsed.rho1 == report.rho1);
    CHECK(parsed.canonical_correlations == report.canonical_correlations);
    CHECK(parsed.x_within.labels == report.x_within.labels);
    CHECK((parsed.x_within.values - report.x_within.values).cwiseAbs().maxCoeff() == 0.0);
    CHECK((parsed.y_cross.values - report.y_cross.values).cwiseAbs().maxCoeff() == 0.0);

    // Rounded section really is 5-decimal.
    const auto doc = nlohmann::json::parse(once);
    const double shown = doc.at("rho1").get<double>();
    CHECK(std::abs(shown - report.rho1) <= 5e-6);
    CHECK(shown == doctest::Approx(std::round(report.rho1 * 1e5) / 1e5).epsilon(1e-12));

    CHECK_THROWS_AS(parse_report_json("{ not json"), ParseError);
    CHECK_THROWS_AS(parse_report_json("{}"), ParseError);
}

TEST_CASE("table renderers emit the contracted shapes") {
    // p = 1, q = 1: 2x2 tables -> 3 text lines (header + 2 rows).
    Eigen::MatrixXd x(5, 1), y(5, 1);
    x << 1, 2, 3, 4, 5;
    y << 1.2, 2.1, 2.9, 4.2, 5.1;
    const auto small_data = dataset_from(x, y);
    const auto small_report = build_report(fit(small_data), small_data);
    CHECK(count_lines(render_table_text(small_report, TableId::XWithin)) == 3);

    // p = 3: table1 CSV is header + 4 rows = 5 lines.
    auto [x3, y3] = correlated_blocks(313, 40, 3, 3);
    const auto data = dataset_from(x3, y3);
    const auto report = build_report(fit(data), data);
    const std::string csv = render_table_csv(report, TableId::XWithin);
    CHECK(count_lines(csv) == 5);
    CHECK(csv.substr(0, 3) == ",U1");

    const std::string text = render_text(report);
    CHECK(text.find("First canonical correlation") != std::string::npos);
    CHECK(text.find("U1") != std::string::npos);
}

TEST_CASE("reference sector loadings obey the cross-loading identity") {
    const auto path = std::filesystem::path(RANCCA_SOURCE_DIR) / "tests" / "fixtures" /
                      "lte_sector_loadings.json";
    std::ifstream in(path);
    REQUIRE(in.good());
    const auto doc = nlohmann::json::parse(in);

    const double rho1 = doc.at("rho1").get<double>();
    CHECK(rho1 == 0.96925);
    const auto x_within = doc.at("x_within").get<std::vector<double>>();
    const auto x_cross = doc.at("x_cross").get<std::vector<double>>();
    const auto y_within = doc.at("y_within").get<std::vector<double>>();
    const auto y_cross = doc.at("y_cross").get<std::vector<double>>();
    REQUIRE(x_within.size() == x_cross.size());
    REQUIRE(y_within.size() == y_cross.size());

    // 5e-5 slack: the source values are rounded to 5 decimals.
    for (std::size_t j = 0; j < x_within.size(); ++j) {
        CHECK(std::abs(x_cross[j] - rho1 * x_within[j]) <= 5e-5);
    }
    for (std::size_t j = 0; j < y_within.size(); ++j) {
        CHECK(std::abs(y_cross[j] - rho1 * y_within[j]) <= 5e-5);
    }
}

TEST_CASE("export_plot_series shapes and errors") {
    SimConfig config;
    config.hours = 168;
    const auto trace = simulate(config);

    const auto series = export_plot_series(trace, {"dl_prb"});
    REQUIRE(series.size() == 2);
    CHECK(series[0].role == CellRole::Coverage);
    CHECK(series[1].role == CellRole::Capacity);
    CHECK(series[0].timestamps.size() == 168);
    CHECK(series[1].values.size() == 168);

    CHECK(export_plot_series(trace, {}).empty());
    CHECK_THROWS_AS(export_plot_series(trace, {"nope"}), NameError);

    const std::string csv = plot_series_csv(series[0]);
    CHECK(count_lines(csv) == 169); // header + one line per hour
    CHECK(csv.rfind("timestamp,value\n", 0) == 0);
}
