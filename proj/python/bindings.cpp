#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rancca/cca.hpp"
#include "rancca/csv_io.hpp"
#include "rancca/manifest.hpp"
#include "rancca/oracle.hpp"
#include "rancca/pairing.hpp"
#include "rancca/report.hpp"
#include "rancca/simulator.hpp"
#include "rancca/version.hpp"

namespace py = pybind11;
using namespace rancca;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Canonical correlation analysis toolkit for RAN KPI data";
    m.attr("__version__") = kVersion;

    // Exception hierarchy, rooted at rancca.Error.
    static py::exception<Error> base(m, "Error");
    static py::exception<ParseError> parse_error(m, "ParseError", base);
    static py::exception<OrderError> order_error(m, "OrderError", base);
    static py::exception<AlignmentError> alignment_error(m, "AlignmentError", base);
    static py::exception<DegenerateColumnError> degenerate_error(m, "DegenerateColumnError", base);
    static py::exception<NameError> name_error(m, "KpiNameError", base);
    static py::exception<SingleFrameError> single_frame_error(m, "SingleFrameError", base);
    static py::exception<UnderdeterminedError> underdetermined_error(m, "UnderdeterminedError", base);
    static py::exception<SingularCovarianceError> singular_error(m, "SingularCovarianceError", base);
    static py::exception<ShapeError> shape_error(m, "ShapeError", base);
    static py::exception<IndexError> index_error(m, "PairIndexError", base);
    static py::exception<IoError> io_error(m, "IoError", base);
    static py::exception<ConfigError> config_error(m, "ConfigError", base);

    py::register_exception_translator([](std::exception_ptr p) {
        if (!p) return;
        try {
            std::rethrow_exception(p);
        } catch (const ParseError& e) { py::set_error(parse_error, e.what());
        } catch (const OrderError& e) { py::set_error(order_error, e.what());
        } catch (const AlignmentError& e) { py::set_error(alignment_error, e.what());
        } catch (const DegenerateColumnError& e) { py::set_error(degenerate_error, e.what());
        } catch (const NameError& e) { py::set_error(name_error, e.what());
        } catch (const SingleFrameError& e) { py::set_error(single_frame_error, e.what());
        } catch (const UnderdeterminedError& e) { py::set_error(underdetermined_error, e.what());
        } catch (const SingularCovarianceError& e) { py::set_error(singular_error, e.what());
        } catch (const ShapeError& e) { py::set_error(shape_error, e.what());
        } catch (const IndexError& e) { py::set_error(index_error, e.what());
        } catch (const IoError& e) { py::set_error(io_error, e.what());
        } catch (const ConfigError& e) { py::set_error(config_error, e.what());
        } catch (const Error& e) { py::set_error(base, e.what());
        }
    });

    py::enum_<Category>(m, "Category")
        .value("CM", Category::CM)
        .value("PM", Category::PM)
        .value("IM", Category::IM);

    py::enum_<Arrangement>(m, "Arrangement")
        .value("CrossVariable", Arrangement::CrossVariable)
        .value("CrossCell", Arrangement::CrossCell);

    py::enum_<Aggregator>(m, "Aggregator")
        .value("Mean", Aggregator::Mean)
        .value("Sum", Aggregator::Sum)
        .value("Last", Aggregator::Last);

    py::enum_<TableId>(m, "TableId")
        .value("XWithin", TableId::XWithin)
        .value("YWithin", TableId::YWithin)
        .value("YCross", TableId::YCross)
        .value("XCross", TableId::XCross);

    py::enum_<CellRole>(m, "CellRole")
        .value("Coverage", CellRole::Coverage)
        .value("Capacity", CellRole::Capacity);

    py::class_<KpiColumn>(m, "KpiColumn")
        .def(py::init([](std::string name, Category category, std::string unit,
                         std::vector<double> values) {
                 return KpiColumn{std::move(name), category, std::move(unit), std::move(values)};
             }),
             py::arg("name"), py::arg("category") = Category::PM, py::arg("unit") = "",
             py::arg("values") = std::vector<double>{})
        .def_readonly("name", &KpiColumn::name)
        .def_readonly("category", &KpiColumn::category)
        .def_readonly("unit", &KpiColumn::unit)
        .def_readonly("values", &KpiColumn::values);

    py::class_<KpiFrame>(m, "KpiFrame")
        .def(py::init<std::string, std::vector<std::int64_t>, std::vector<KpiColumn>>(),
             py::arg("cell_id"), py::arg("timestamps"), py::arg("columns"))
        .def_property_readonly("cell_id", &KpiFrame::cell_id)
        .def_property_readonly("timestamps", &KpiFrame::timestamps)
        .def_property_readonly("columns", &KpiFrame::columns)
        .def_property_readonly("rows", &KpiFrame::rows)
        .def_property_readonly("kpi_count", &KpiFrame::kpi_count)
        .def("has_column", &KpiFrame::has_column, py::arg("name"))
        .def("column", &KpiFrame::column, py::arg("name"),
             py::return_value_policy::reference_internal)
        .def("matrix", &KpiFrame::matrix, py::arg("names"));

    py::class_<ColumnStats>(m, "ColumnStats")
        .def_readonly("mean", &ColumnStats::mean)
        .def_readonly("stddev", &ColumnStats::stddev);

    py::class_<StandardizationRecord>(m, "StandardizationRecord")
        .def_readonly("columns", &StandardizationRecord::columns)
        .def("__len__", &StandardizationRecord::size);

    m.def("load_csv", &load_csv, py::arg("path"), py::arg("cell_id"));
    m.def("save_csv", &save_csv, py::arg("frame"), py::arg("path"));
    m.def("align", &align, py::arg("frames"));
    m.def("standardize", &standardize, py::arg("values"),
          py::arg("labels") = std::vector<std::string>{});
    m.def("apply_standardization", &apply_standardization, py::arg("values"), py::arg("record"));

    py::class_<Provenance>(m, "Provenance")
        .def_readonly("cell_ids", &Provenance::cell_ids)
        .def_readonly("start_hour", &Provenance::start_hour)
        .def_readonly("end_hour", &Provenance::end_hour);

    py::class_<PairedDataset>(m, "PairedDataset")
        .def_static("from_matrices", &PairedDataset::from_matrices, py::arg("x"), py::arg("y"),
                    py::arg("x_labels"), py::arg("y_labels"), py::arg("arrangement"),
                    py::arg("standardize_blocks"), py::arg("provenance") = Provenance{})
        .def_property_readonly("x", &PairedDataset::x)
        .def_property_readonly("y", &PairedDataset::y)
        .def_property_readonly("x_labels", &PairedDataset::x_labels)
        .def_property_readonly("y_labels", &PairedDataset::y_labels)
        .def_property_readonly("rows", &PairedDataset::rows)
        .def_property_readonly("p", &PairedDataset::p)
        .def_property_readonly("q", &PairedDataset::q)
        .def_property_readonly("arrangement", &PairedDataset::arrangement)
        .def_property_readonly("standardized", &PairedDataset::standardized)
        .def_property_readonly("swapped", &PairedDataset::swapped)
        .def_property_readonly("x_record", &PairedDataset::x_record)
        .def_property_readonly("y_record", &PairedDataset::y_record)
        .def_property_readonly("provenance", &PairedDataset::provenance);

    m.def("pair_cross_cell", &pair_cross_cell, py::arg("frame_x"), py::arg("frame_y"),
          py::arg("x_kpis"), py::arg("y_kpis"));
    m.def("pair_cross_variable", &pair_cross_variable, py::arg("frames"), py::arg("x_kpis"),
          py::arg("y_kpis"), py::arg("aggregator") = Aggregator::Mean);

    py::class_<SignAnchor>(m, "SignAnchor")
        .def_readonly("anchor", &SignAnchor::anchor)
        .def_readonly("flipped", &SignAnchor::flipped);

    py::class_<CcaModel>(m, "CcaModel")
        .def_property_readonly("a", &CcaModel::a)
        .def_property_readonly("b", &CcaModel::b)
        .def_property_readonly("rho", &CcaModel::rho)
        .def_property_readonly("p", &CcaModel::p)
        .def_property_readonly("q", &CcaModel::q)
        .def_property_readonly("r", &CcaModel::r)
        .def_property_readonly("discarded_pairs", &CcaModel::discarded_pairs)
        .def_property_readonly("ridge", &CcaModel::ridge)
        .def_property_readonly("x_record", &CcaModel::x_record)
        .def_property_readonly("y_record", &CcaModel::y_record)
        .def_property_readonly("sign_convention", &CcaModel::sign_convention)
        .def_property_readonly("x_labels", &CcaModel::x_labels)
        .def_property_readonly("y_labels", &CcaModel::y_labels);

    py::class_<VariatePair>(m, "VariatePair")
        .def_readonly("index", &VariatePair::index)
        .def_readonly("u", &VariatePair::u)
        .def_readonly("v", &VariatePair::v)
        .def_readonly("rho", &VariatePair::rho);

    py::class_<LoadingsSet>(m, "LoadingsSet")
        .def_readonly("x_within", &LoadingsSet::x_within)
        .def_readonly("y_within", &LoadingsSet::y_within)
        .def_readonly("x_cross", &LoadingsSet::x_cross)
        .def_readonly("y_cross", &LoadingsSet::y_cross);

    m.def("fit", &fit, py::arg("data"), py::arg("ridge") = 0.0);
    m.def("transform", &transform, py::arg("model"), py::arg("data"));
    m.def("canonical_correlation", &canonical_correlation, py::arg("u"), py::arg("v"));
    m.def("loadings", &loadings, py::arg("model"), py::arg("data"), py::arg("pair_index"));
    m.def("grid_search_max_correlation", &grid_search_max_correlation, py::arg("x"), py::arg("y"),
          py::arg("grid_size") = 2000);

    py::class_<ShutdownPolicy>(m, "ShutdownPolicy")
        .def(py::init<>())
        .def_readwrite("dl_prb_threshold", &ShutdownPolicy::dl_prb_threshold)
        .def_readwrite("ul_prb_threshold", &ShutdownPolicy::ul_prb_threshold)
        .def_readwrite("user_threshold", &ShutdownPolicy::user_threshold);

    py::class_<DiurnalShape>(m, "DiurnalShape")
        .def(py::init<>())
        .def(py::init([](double peak, double trough) { return DiurnalShape{peak, trough}; }),
             py::arg("peak"), py::arg("trough"))
        .def_readwrite("peak", &DiurnalShape::peak)
        .def_readwrite("trough", &DiurnalShape::trough);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("hours", &SimConfig::hours)
        .def_readwrite("cov_dl", &SimConfig::cov_dl)
        .def_readwrite("cov_ul", &SimConfig::cov_ul)
        .def_readwrite("cap_dl", &SimConfig::cap_dl)
        .def_readwrite("cap_ul", &SimConfig::cap_ul)
        .def_readwrite("noise_stddev", &SimConfig::noise_stddev)
        .def_readwrite("users_per_prb", &SimConfig::users_per_prb)
        .def_readwrite("tx_power_active_w", &SimConfig::tx_power_active_w)
        .def_readwrite("tx_power_shutdown_w", &SimConfig::tx_power_shutdown_w)
        .def_readwrite("throughput_offset_mbps", &SimConfig::throughput_offset_mbps)
        .def_readwrite("throughput_per_prb_mbps", &SimConfig::throughput_per_prb_mbps)
        .def_readwrite("throughput_noise_stddev_mbps", &SimConfig::throughput_noise_stddev_mbps)
        .def_readwrite("policy", &SimConfig::policy)
        .def("validate", &SimConfig::validate);

    py::class_<OfferedLoad>(m, "OfferedLoad")
        .def_readonly("cov_dl", &OfferedLoad::cov_dl)
        .def_readonly("cov_ul", &OfferedLoad::cov_ul)
        .def_readonly("cap_dl", &OfferedLoad::cap_dl)
        .def_readonly("cap_ul", &OfferedLoad::cap_ul);

    py::class_<SectorTrace>(m, "SectorTrace")
        .def_readonly("coverage", &SectorTrace::coverage)
        .def_readonly("capacity", &SectorTrace::capacity)
        .def_readonly("shutdown_mask", &SectorTrace::shutdown_mask)
        .def_readonly("offered", &SectorTrace::offered);

    m.def("simulate", &simulate, py::arg("config"));
    m.def("derive_shutdown_mask", &derive_shutdown_mask, py::arg("config"), py::arg("offered"));
    m.def("export_trace", &export_trace, py::arg("trace"), py::arg("dir"));
    m.def("load_sim_config", &load_sim_config, py::arg("path"));
    m.def("render_sim_config", &render_sim_config, py::arg("config"));

    py::class_<CorrelationTable>(m, "CorrelationTable")
        .def_readonly("labels", &CorrelationTable::labels)
        .def_readonly("values", &CorrelationTable::values);

    py::class_<LoadingsReport>(m, "LoadingsReport")
        .def_readonly("rho1", &LoadingsReport::rho1)
        .def_readonly("canonical_correlations", &LoadingsReport::canonical_correlations)
        .def_readonly("x_within", &LoadingsReport::x_within)
        .def_readonly("y_within", &LoadingsReport::y_within)
        .def_readonly("y_cross", &LoadingsReport::y_cross)
        .def_readonly("x_cross", &LoadingsReport::x_cross)
        .def_readonly("discarded_pairs", &LoadingsReport::discarded_pairs);

    m.def("build_report", &build_report, py::arg("model"), py::arg("data"));
    m.def("render_json", &render_json, py::arg("report"));
    m.def("parse_report_json", &parse_report_json, py::arg("text"));
    m.def("render_table_csv", &render_table_csv, py::arg("report"), py::arg("table"));
    m.def("render_table_text", &render_table_text, py::arg("report"), py::arg("table"));
    m.def("render_text", &render_text, py::arg("report"));

    py::class_<PlotSeries>(m, "PlotSeries")
        .def_readonly("name", &PlotSeries::name)
        .def_readonly("role", &PlotSeries::role)
        .def_readonly("timestamps", &PlotSeries::timestamps)
        .def_readonly("values", &PlotSeries::values);

    m.def("export_plot_series", &export_plot_series, py::arg("trace"), py::arg("kpis"));
    m.def("plot_series_csv", &plot_series_csv, py::arg("series"));

    m.def("sha256_file", &sha256_file, py::arg("path"));
    m.def("utc_timestamp", &utc_timestamp);
}
