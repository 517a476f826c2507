#include "rancca/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace rancca {

namespace {

using ordered_json = nlohmann::ordered_json;

double round5(double value) {
    const double rounded = std::round(value * 1e5) / 1e5;
    return rounded == 0.0 ? 0.0 : rounded; // normalize -0.0
}

CorrelationTable make_table(std::string variate_label,
                            const std::vector<std::string>& variable_labels,
                            const Eigen::VectorXd& first_row,
                            const Eigen::MatrixXd& variable_block) {
    const auto n = static_cast<Eigen::Index>(variable_labels.size());
    CorrelationTable table;
    table.labels.reserve(static_cast<std::size_t>(n) + 1);
    table.labels.push_back(std::move(variate_label));
    table.labels.insert(table.labels.end(), variable_labels.begin(), variable_labels.end());

    table.values.resize(n + 1, n + 1);
    table.values(0, 0) = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        table.values(0, j + 1) = first_row(j);
        table.values(j + 1, 0) = first_row(j);
    }
    table.values.bottomRightCorner(n, n) = variable_block;
    return table;
}

/// Pairwise Pearson correlations with an exactly-unit diagonal.
Eigen::MatrixXd correlation_block(const Eigen::MatrixXd& data) {
    const auto n = data.cols();
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double r = canonical_correlation(data.col(i), data.col(j));
            out(i, j) = r;
            out(j, i) = r;
        }
    }
    return out;
}

const CorrelationTable& table_of(const LoadingsReport& report, TableId id) {
    switch (id) {
        case TableId::XWithin: return report.x_within;
        case TableId::YWithin: return report.y_within;
        case TableId::YCross: return report.y_cross;
        case TableId::XCross: return report.x_cross;
    }
    throw IndexError("unknown table id");
}

ordered_json table_json(const CorrelationTable& table, bool rounded) {
    ordered_json values = ordered_json::array();
    for (Eigen::Index i = 0; i < table.values.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
            row.push_back(rounded ? round5(table.values(i, j)) : table.values(i, j));
        }
        values.push_back(std::move(row));
    }
    ordered_json out;
    out["labels"] = table.labels;
    out["values"] = std::move(values);
    return out;
}

ordered_json report_body(const LoadingsReport& report, bool rounded) {
    ordered_json out;
    out["rho1"] = rounded ? round5(report.rho1) : report.rho1;
    ordered_json rhos = ordered_json::array();
    for (double rho : report.canonical_correlations) {
        rhos.push_back(rounded ? round5(rho) : rho);
    }
    out["canonical_correlations"] = std::move(rhos);
    ordered_json tables;
    tables["x_within"] = table_json(report.x_within, rounded);
    tables["y_within"] = table_json(report.y_within, rounded);
    tables["y_cross"] = table_json(report.y_cross, rounded);
    tables["x_cross"] = table_json(report.x_cross, rounded);
    out["tables"] = std::move(tables);
    return out;
}

CorrelationTable table_from_json(const ordered_json& node) {
    CorrelationTable table;
    table.labels = node.at("labels").get<std::vector<std::string>>();
    const auto& values = node.at("values");
    const auto n = static_cast<Eigen::Index>(values.size());
    table.values.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = values.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != n) {
            throw ParseError("report table is not square");
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            table.values(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
        }
    }
    return table;
}

} // namespace

LoadingsReport build_report(const CcaModel& model, const PairedDataset& data) {
    const LoadingsSet first = loadings(model, data, 0);

    const Eigen::MatrixXd x =
        data.standardized() ? data.x() : apply_standardization(data.x(), model.x_record());
    const Eigen::MatrixXd y =
        data.standardized() ? data.y() : apply_standardization(data.y(), model.y_record());
    const Eigen::MatrixXd x_block = correlation_block(x);
    const Eigen::MatrixXd y_block = correlation_block(y);

    LoadingsReport report;
    report.rho1 = model.rho()(0);
    report.canonical_correlations.assign(model.rho().begin(), model.rho().end());
    report.discarded_pairs = model.discarded_pairs();
    report.x_within = make_table("U1", data.x_labels(), first.x_within, x_block);
    report.y_within = make_table("V1", data.y_labels(), first.y_within, y_block);
    report.y_cross = make_table("U1", data.y_labels(), first.y_cross, y_block);
    report.x_cross = make_table("V1", data.x_labels(), first.x_cross, x_block);
    return report;
}

std::string render_json(const LoadingsReport& report) {
    ordered_json out;
    out["schema"] = "rancca-report/1";
    const ordered_json rounded = report_body(report, /*rounded=*/true);
    for (const auto& [key, value] : rounded.items()) out[key] = value;
    out["discarded_pairs"] = report.discarded_pairs;
    out["raw"] = report_body(report, /*rounded=*/false);
    return out.dump(2) + "\n";
}

LoadingsReport parse_report_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad report JSON: ") + e.what());
    }
    try {
        const auto& raw = doc.at("raw");
        LoadingsReport report;
        report.rho1 = raw.at("rho1").get<double>();
        report.canonical_correlations =
            raw.at("canonical_correlations").get<std::vector<double>>();
        report.discarded_pairs = doc.at("discarded_pairs").get<std::size_t>();
        const auto& tables = raw.at("tables");
        report.x_within = table_from_json(tables.at("x_within"));
        report.y_within = table_from_json(tables.at("y_within"));
        report.y_cross = table_from_json(tables.at("y_cross"));
        report.x_cross = table_from_json(tables.at("x_cross"));
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report JSON missing fields: ") + e.what());
    }
}

std::string render_table_csv(const LoadingsReport& report, TableId id) {
    const CorrelationTable& table = table_of(report, id);
    std::ostringstream out;
    for (const auto& label : table.labels) out << ',' << label;
    out << '\n';
    char buf[64];
    for (Eigen::Index i = 0; i < table.values.rows(); ++i) {
        out << table.labels[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", table.values(i, j));
            out << ',' << buf;
        }
        out << '\n';
    }
    return out.str();
}

std::string render_table_text(const LoadingsReport& report, TableId id) {
    const CorrelationTable& table = table_of(report, id);
    std::size_t label_width = 0;
    for (const auto& label : table.labels) label_width = std::max(label_width, label.size());
    const std::size_t cell_width = std::max<std::size_t>(10, label_width + 2);

    std::ostringstream out;
    out << std::string(label_width, ' ');
    for (const auto& label : table.labels) {
        out << std::string(cell_width - label.size(), ' ') << label;
    }
    out << '\n';
    char buf[64];
    for (Eigen::Index i = 0; i < table.values.rows(); ++i) {
        const auto& label = table.labels[static_cast<std::size_t>(i)];
        out << label << std::string(label_width - label.size(), ' ');
        for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%*.5f", static_cast<int>(cell_width),
                          table.values(i, j));
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

std::string render_text(const LoadingsReport& report) {
    std::ostringstream out;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.5f", report.rho1);
    out << "First canonical correlation: " << buf << '\n';
    out << "All canonical correlations:";
    for (double rho : report.canonical_correlations) {
        std::snprintf(buf, sizeof(buf), " %.5f", rho);
        out << buf;
    }
    out << '\n';
    if (report.discarded_pairs > 0) {
        out << "Discarded near-zero pairs: " << report.discarded_pairs << '\n';
    }
    out << '\n';
    out << "X variables vs U1 (within-loadings)\n"
        << render_table_text(report, TableId::XWithin) << '\n';
    out << "Y variables vs V1 (within-loadings)\n"
        << render_table_text(report, TableId::YWithin) << '\n';
    out << "Y variables vs U1 (cross-loadings)\n"
        << render_table_text(report, TableId::YCross) << '\n';
    out << "X variables vs V1 (cross-loadings)\n"
        << render_table_text(report, TableId::XCross);
    return out.str();
}

std::string to_string(CellRole role) {
    return role == CellRole::Coverage ? "coverage" : "capacity";
}

std::vector<PlotSeries> export_plot_series(const SectorTrace& trace,
                                           const std::vector<std::string>& kpis) {
    std::vector<PlotSeries> out;
    out.reserve(kpis.size() * 2);
    for (const auto& kpi : kpis) {
        out.push_back({kpi, CellRole::Coverage, trace.coverage.timestamps(),
                       trace.coverage.column(kpi).values});
        out.push_back({kpi, CellRole::Capacity, trace.capacity.timestamps(),
                       trace.capacity.column(kpi).values});
    }
    return out;
}

std::string plot_series_csv(const PlotSeries& series) {
    std::ostringstream out;
    out << "timestamp,value\n";
    char buf[64];
    for (std::size_t i = 0; i < series.timestamps.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", series.values[i]);
        out << series.timestamps[i] << ',' << buf << '\n';
    }
    return out.str();
}

} // namespace rancca
