#include "rancca/pairing.hpp"

#include <algorithm>
#include <unordered_set>

namespace rancca {

std::string to_string(Arrangement arrangement) {
    return arrangement == Arrangement::CrossCell ? "cross-cell" : "cross-variable";
}

std::string to_string(Aggregator aggregator) {
    switch (aggregator) {
        case Aggregator::Mean: return "mean";
        case Aggregator::Sum: return "sum";
        case Aggregator::Last: return "last";
    }
    return "mean";
}

Aggregator aggregator_from_string(const std::string& text) {
    if (text == "mean") return Aggregator::Mean;
    if (text == "sum") return Aggregator::Sum;
    if (text == "last") return Aggregator::Last;
    throw ConfigError("unknown aggregator '" + text + "' (expected mean, sum or last)");
}

namespace {

void require_unique(const std::vector<std::string>& labels, const char* block) {
    std::unordered_set<std::string> seen;
    for (const auto& label : labels) {
        if (!seen.insert(label).second) {
            throw NameError(std::string("duplicate KPI '") + label + "' in the " + block + " block");
        }
    }
}

} // namespace

PairedDataset PairedDataset::from_matrices(Eigen::MatrixXd x,
                                           Eigen::MatrixXd y,
                                           std::vector<std::string> x_labels,
                                           std::vector<std::string> y_labels,
                                           Arrangement arrangement,
                                           bool standardize_blocks,
                                           Provenance provenance) {
    if (x.rows() != y.rows()) {
        throw ShapeError("X has " + std::to_string(x.rows()) + " rows, Y has " +
                         std::to_string(y.rows()));
    }
    if (x.cols() < 1 || y.cols() < 1) {
        throw ShapeError("both blocks need at least one column");
    }
    if (static_cast<std::size_t>(x.cols()) != x_labels.size() ||
        static_cast<std::size_t>(y.cols()) != y_labels.size()) {
        throw ShapeError("label count does not match column count");
    }
    require_unique(x_labels, "X");
    require_unique(y_labels, "Y");

    PairedDataset out;
    out.arrangement_ = arrangement;
    out.provenance_ = std::move(provenance);

    // Convention: p <= q. Swap blocks when the caller supplied p > q.
    if (x.cols() > y.cols()) {
        out.swapped_ = true;
        out.x_ = std::move(y);
        out.y_ = std::move(x);
        out.x_labels_ = std::move(y_labels);
        out.y_labels_ = std::move(x_labels);
    } else {
        out.x_ = std::move(x);
        out.y_ = std::move(y);
        out.x_labels_ = std::move(x_labels);
        out.y_labels_ = std::move(y_labels);
    }

    if (standardize_blocks) {
        auto [xs, xrec] = standardize(out.x_, out.x_labels_);
        auto [ys, yrec] = standardize(out.y_, out.y_labels_);
        out.x_ = std::move(xs);
        out.y_ = std::move(ys);
        out.x_record_ = std::move(xrec);
        out.y_record_ = std::move(yrec);
        out.standardized_ = true;
    }
    return out;
}

PairedDataset pair_cross_cell(const KpiFrame& frame_x,
                              const KpiFrame& frame_y,
                              const std::vector<std::string>& x_kpis,
                              const std::vector<std::string>& y_kpis) {
    for (const auto& name : x_kpis) frame_x.column(name); // NameError before aligning
    for (const auto& name : y_kpis) frame_y.column(name);

    const auto aligned = align({frame_x, frame_y});

    Provenance prov;
    prov.cell_ids = {frame_x.cell_id(), frame_y.cell_id()};
    prov.start_hour = aligned[0].timestamps().front();
    prov.end_hour = aligned[0].timestamps().back();

    return PairedDataset::from_matrices(aligned[0].matrix(x_kpis), aligned[1].matrix(y_kpis),
                                        x_kpis, y_kpis, Arrangement::CrossCell,
                                        /*standardize_blocks=*/true, std::move(prov));
}

namespace {

double aggregate(const std::vector<double>& values, Aggregator aggregator) {
    switch (aggregator) {
        case Aggregator::Mean: {
            double sum = 0.0;
            for (double v : values) sum += v;
            return sum / static_cast<double>(values.size());
        }
        case Aggregator::Sum: {
            double sum = 0.0;
            for (double v : values) sum += v;
            return sum;
        }
        case Aggregator::Last:
            return values.back();
    }
    return 0.0;
}

} // namespace

PairedDataset pair_cross_variable(const std::vector<KpiFrame>& frames,
                                  const std::vector<std::string>& x_kpis,
                                  const std::vector<std::string>& y_kpis,
                                  Aggregator aggregator) {
    if (frames.size() < 2) {
        throw SingleFrameError("cross-variable pairing needs at least 2 cells, got " +
                               std::to_string(frames.size()));
    }

    std::vector<std::size_t> order(frames.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return frames[a].cell_id() < frames[b].cell_id();
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (frames[order[i]].cell_id() == frames[order[i - 1]].cell_id()) {
            throw NameError("duplicate cell id '" + frames[order[i]].cell_id() + "'");
        }
    }

    const auto rows = static_cast<Eigen::Index>(frames.size());
    Eigen::MatrixXd x(rows, static_cast<Eigen::Index>(x_kpis.size()));
    Eigen::MatrixXd y(rows, static_cast<Eigen::Index>(y_kpis.size()));

    Provenance prov;
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& frame = frames[order[static_cast<std::size_t>(i)]];
        if (frame.rows() == 0) {
            throw ShapeError("cell '" + frame.cell_id() + "' has no rows to aggregate");
        }
        for (std::size_t j = 0; j < x_kpis.size(); ++j) {
            x(i, static_cast<Eigen::Index>(j)) = aggregate(frame.column(x_kpis[j]).values, aggregator);
        }
        for (std::size_t j = 0; j < y_kpis.size(); ++j) {
            y(i, static_cast<Eigen::Index>(j)) = aggregate(frame.column(y_kpis[j]).values, aggregator);
        }
        prov.cell_ids.push_back(frame.cell_id());
        prov.start_hour = i == 0 ? frame.timestamps().front()
                                 : std::min(prov.start_hour, frame.timestamps().front());
        prov.end_hour = i == 0 ? frame.timestamps().back()
                               : std::max(prov.end_hour, frame.timestamps().back());
    }

    return PairedDataset::from_matrices(std::move(x), std::move(y), x_kpis, y_kpis,
                                        Arrangement::CrossVariable,
                                        /*standardize_blocks=*/true, std::move(prov));
}

} // namespace rancca
