#include "rancca/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rancca {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::int64_t parse_timestamp(const std::string& field, std::size_t line_no) {
    std::int64_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": timestamp '" + field + "' is not an integer epoch-hour");
    }
    return value;
}

double parse_value(const std::string& field, std::size_t line_no, std::size_t column_no) {
    if (field.empty()) {
        throw ParseError("line " + std::to_string(line_no) + ", column " +
                         std::to_string(column_no + 1) + ": empty cell (missing values are not imputed)");
    }
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw ParseError("line " + std::to_string(line_no) + ", column " +
                         std::to_string(column_no + 1) + ": '" + field + "' is not a finite number");
    }
    return value;
}

} // namespace

KpiFrame load_csv(const std::filesystem::path& path, const std::string& cell_id) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto pos = text.find('\n', start);
        if (pos == std::string::npos) pos = text.size();
        std::string line = text.substr(start, pos - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = pos + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();

    if (lines.empty()) {
        throw ParseError("'" + path.string() + "' is empty");
    }

    const auto header = split_fields(lines[0]);
    if (header.size() < 2 || header[0] != "timestamp") {
        throw ParseError("line 1: header must be 'timestamp,<kpi_name>,...'");
    }
    const std::size_t kpis = header.size() - 1;

    std::vector<KpiColumn> columns(kpis);
    for (std::size_t j = 0; j < kpis; ++j) columns[j].name = header[j + 1];

    // Optional metadata rows directly after the header.
    std::size_t row = 1;
    for (; row < lines.size() && !lines[row].empty() && lines[row][0] == '#'; ++row) {
        const auto fields = split_fields(lines[row]);
        if (fields.size() != header.size()) {
            throw ParseError("line " + std::to_string(row + 1) +
                             ": metadata row has " + std::to_string(fields.size()) +
                             " fields, header has " + std::to_string(header.size()));
        }
        if (fields[0] == "#category") {
            for (std::size_t j = 0; j < kpis; ++j) {
                columns[j].category = category_from_string(fields[j + 1]);
            }
        } else if (fields[0] == "#unit") {
            for (std::size_t j = 0; j < kpis; ++j) columns[j].unit = fields[j + 1];
        } else {
            throw ParseError("line " + std::to_string(row + 1) +
                             ": unknown metadata row '" + fields[0] + "'");
        }
    }

    std::vector<std::int64_t> timestamps;
    for (; row < lines.size(); ++row) {
        const std::size_t line_no = row + 1;
        const auto fields = split_fields(lines[row]);
        if (fields.size() != header.size()) {
            throw ParseError("line " + std::to_string(line_no) + ": " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(header.size()));
        }
        timestamps.push_back(parse_timestamp(fields[0], line_no));
        for (std::size_t j = 0; j < kpis; ++j) {
            columns[j].values.push_back(parse_value(fields[j + 1], line_no, j + 1));
        }
    }

    return KpiFrame(cell_id, std::move(timestamps), std::move(columns));
}

void save_csv(const KpiFrame& frame, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "timestamp";
    for (const auto& col : frame.columns()) out << ',' << col.name;
    out << '\n';

    if (!frame.columns().empty()) {
        out << "#category";
        for (const auto& col : frame.columns()) out << ',' << to_string(col.category);
        out << '\n';

        const bool any_unit = std::any_of(frame.columns().begin(), frame.columns().end(),
                                          [](const KpiColumn& c) { return !c.unit.empty(); });
        if (any_unit) {
            out << "#unit";
            for (const auto& col : frame.columns()) out << ',' << col.unit;
            out << '\n';
        }
    }

    char buf[64];
    for (std::size_t i = 0; i < frame.rows(); ++i) {
        out << frame.timestamps()[i];
        for (const auto& col : frame.columns()) {
            // 17 significant digits round-trip any double exactly.
            std::snprintf(buf, sizeof(buf), "%.17g", col.values[i]);
            out << ',' << buf;
        }
        out << '\n';
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    file << out.str();
    if (!file) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

} // namespace rancca
