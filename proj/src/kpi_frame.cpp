#include "rancca/kpi_frame.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace rancca {

std::string to_string(Category category) {
    switch (category) {
        case Category::CM: return "CM";
        case Category::PM: return "PM";
        case Category::IM: return "IM";
    }
    return "PM";
}

Category category_from_string(const std::string& text) {
    if (text == "CM") return Category::CM;
    if (text == "PM") return Category::PM;
    if (text == "IM") return Category::IM;
    throw ParseError("unknown KPI category '" + text + "' (expected CM, PM or IM)");
}

KpiFrame::KpiFrame(std::string cell_id,
                   std::vector<std::int64_t> timestamps,
                   std::vector<KpiColumn> columns)
    : cell_id_(std::move(cell_id)),
      timestamps_(std::move(timestamps)),
      columns_(std::move(columns)) {
    for (std::size_t i = 1; i < timestamps_.size(); ++i) {
        if (timestamps_[i] <= timestamps_[i - 1]) {
            throw OrderError("timestamps must be strictly increasing (row " +
                             std::to_string(i + 1) + " of cell '" + cell_id_ + "')");
        }
    }
    std::unordered_set<std::string> seen;
    for (const auto& col : columns_) {
        if (col.values.size() != timestamps_.size()) {
            throw ShapeError("column '" + col.name + "' has " +
                             std::to_string(col.values.size()) + " values for " +
                             std::to_string(timestamps_.size()) + " timestamps");
        }
        if (!seen.insert(col.name).second) {
            throw NameError("duplicate KPI name '" + col.name + "' in cell '" + cell_id_ + "'");
        }
    }
}

bool KpiFrame::has_column(const std::string& name) const {
    return std::any_of(columns_.begin(), columns_.end(),
                       [&](const KpiColumn& c) { return c.name == name; });
}

const KpiColumn& KpiFrame::column(const std::string& name) const {
    for (const auto& col : columns_) {
        if (col.name == name) return col;
    }
    throw NameError("no KPI named '" + name + "' in cell '" + cell_id_ + "'");
}

Eigen::MatrixXd KpiFrame::matrix(const std::vector<std::string>& names) const {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows()),
                        static_cast<Eigen::Index>(names.size()));
    for (std::size_t j = 0; j < names.size(); ++j) {
        const auto& col = column(names[j]);
        for (std::size_t i = 0; i < col.values.size(); ++i) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col.values[i];
        }
    }
    return out;
}

std::vector<KpiFrame> align(const std::vector<KpiFrame>& frames) {
    if (frames.size() < 2) {
        throw ShapeError("align needs at least 2 frames, got " + std::to_string(frames.size()));
    }

    std::set<std::int64_t> shared(frames[0].timestamps().begin(), frames[0].timestamps().end());
    for (std::size_t k = 1; k < frames.size(); ++k) {
        std::set<std::int64_t> ts(frames[k].timestamps().begin(), frames[k].timestamps().end());
        std::set<std::int64_t> kept;
        std::set_intersection(shared.begin(), shared.end(), ts.begin(), ts.end(),
                              std::inserter(kept, kept.begin()));
        shared.swap(kept);
    }
    if (shared.empty()) {
        throw AlignmentError("frames share no timestamps");
    }

    std::vector<KpiFrame> out;
    out.reserve(frames.size());
    for (const auto& frame : frames) {
        std::vector<std::size_t> keep;
        keep.reserve(shared.size());
        for (std::size_t i = 0; i < frame.timestamps().size(); ++i) {
            if (shared.count(frame.timestamps()[i])) keep.push_back(i);
        }

        std::vector<std::int64_t> ts;
        ts.reserve(keep.size());
        for (auto i : keep) ts.push_back(frame.timestamps()[i]);

        std::vector<KpiColumn> cols;
        cols.reserve(frame.columns().size());
        for (const auto& col : frame.columns()) {
            KpiColumn restricted{col.name, col.category, col.unit, {}};
            restricted.values.reserve(keep.size());
            for (auto i : keep) restricted.values.push_back(col.values[i]);
            cols.push_back(std::move(restricted));
        }
        out.emplace_back(frame.cell_id(), std::move(ts), std::move(cols));
    }
    return out;
}

namespace {

std::string column_label(const std::vector<std::string>& labels, std::size_t j) {
    if (j < labels.size()) return "'" + labels[j] + "'";
    return "#" + std::to_string(j);
}

} // namespace

std::pair<Eigen::MatrixXd, StandardizationRecord> standardize(
    const Eigen::MatrixXd& values, const std::vector<std::string>& labels) {
    const auto rows = values.rows();
    const auto cols = values.cols();
    if (rows < 2) {
        throw ShapeError("standardize needs at least 2 rows, got " + std::to_string(rows));
    }

    Eigen::MatrixXd out(rows, cols);
    StandardizationRecord record;
    record.columns.reserve(static_cast<std::size_t>(cols));

    for (Eigen::Index j = 0; j < cols; ++j) {
        const double mean = values.col(j).mean();
        // Population (1/M) variance; a constant column yields exactly zero.
        const double var = (values.col(j).array() - mean).square().sum() /
                           static_cast<double>(rows);
        const double sd = std::sqrt(var);
        if (sd == 0.0) {
            throw DegenerateColumnError(
                "column " + column_label(labels, static_cast<std::size_t>(j)) +
                " has zero variance and cannot be standardized");
        }
        out.col(j) = (values.col(j).array() - mean) / sd;
        record.columns.push_back({mean, sd});
    }
    return {std::move(out), std::move(record)};
}

Eigen::MatrixXd apply_standardization(const Eigen::MatrixXd& values,
                                      const StandardizationRecord& record) {
    if (static_cast<std::size_t>(values.cols()) != record.size()) {
        throw ShapeError("standardization record covers " + std::to_string(record.size()) +
                         " columns, data has " + std::to_string(values.cols()));
    }
    Eigen::MatrixXd out(values.rows(), values.cols());
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
        const auto& stats = record.columns[static_cast<std::size_t>(j)];
        out.col(j) = (values.col(j).array() - stats.mean) / stats.stddev;
    }
    return out;
}

} // namespace rancca
