#include "twcv/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace twcv {
namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    cells.push_back(cell);
    return cells;
}

bool is_na_token(const std::string& s) {
    return s.empty() || s == "NA" || s == "na" || s == "NaN" || s == "nan" || s == "NAN";
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::runtime_error("missing column: " + name);
    return static_cast<std::size_t>(it - header.begin());
}

Table read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    Table table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
    table.header = split_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_line(line);
        if (cells.size() != table.header.size()) {
            throw std::runtime_error(path + ": row " + std::to_string(table.rows.size() + 1) +
                                     " has " + std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(cells));
    }
    return table;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::optional<double> parse_double(const std::string& cell) {
    if (is_na_token(cell)) return std::nullopt;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end != begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
    double value = 0.0;
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
    return value;
}

namespace {

struct ColumnSelection {
    std::size_t x, y;
    std::size_t response = 0;
    bool has_response = false;
    std::vector<std::size_t> covariates;
};

/// Parses the selected columns of each row; bad rows are either skipped or,
/// by default, reported as a single error listing their row numbers.
template <typename RowFn>
void parse_selected(const Table& table, const std::vector<std::size_t>& selected,
                    const IngestOptions& options, IngestReport* report, RowFn&& on_row) {
    std::vector<std::size_t> bad_rows;
    std::vector<double> values(selected.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        bool ok = true;
        for (std::size_t k = 0; k < selected.size(); ++k) {
            const auto parsed = parse_double(table.rows[r][selected[k]]);
            if (!parsed || !std::isfinite(*parsed)) {
                ok = false;
                break;
            }
            values[k] = *parsed;
        }
        if (!ok) {
            bad_rows.push_back(r + 1);  // 1-based data rows
            continue;
        }
        on_row(values);
    }
    if (!bad_rows.empty()) {
        if (!options.drop_bad_rows) {
            std::ostringstream msg;
            msg << "non-finite values in selected columns at data row(s):";
            for (std::size_t r : bad_rows) msg << ' ' << r;
            throw std::runtime_error(msg.str());
        }
        if (report) report->rejected_rows = bad_rows;
    }
}

}  // namespace

Dataset ingest_dataset(const std::string& path, const std::string& x_column,
                       const std::string& y_column, const std::string& response_column,
                       const std::vector<std::string>& covariate_columns,
                       const IngestOptions& options, IngestReport* report) {
    const Table table = read_csv(path);
    std::vector<std::size_t> selected;
    selected.push_back(table.column(x_column));
    selected.push_back(table.column(y_column));
    selected.push_back(table.column(response_column));
    for (const auto& name : covariate_columns) selected.push_back(table.column(name));

    Dataset data;
    data.covariate_names = covariate_columns;
    parse_selected(table, selected, options, report, [&](const std::vector<double>& v) {
        data.locations.push_back({v[0], v[1]});
        data.response.push_back(v[2]);
        data.covariates.emplace_back(v.begin() + 3, v.end());
    });
    if (data.n() < 2) {
        throw std::runtime_error(path + ": fewer than 2 usable rows");
    }
    data.validate();
    return data;
}

GridData ingest_grid(const std::string& path, const std::string& x_column,
                     const std::string& y_column,
                     const std::vector<std::string>& covariate_columns,
                     const IngestOptions& options, IngestReport* report) {
    const Table table = read_csv(path);
    std::vector<std::size_t> selected;
    selected.push_back(table.column(x_column));
    selected.push_back(table.column(y_column));
    for (const auto& name : covariate_columns) selected.push_back(table.column(name));

    GridData grid;
    grid.covariate_names = covariate_columns;
    parse_selected(table, selected, options, report, [&](const std::vector<double>& v) {
        grid.locations.push_back({v[0], v[1]});
        grid.covariates.emplace_back(v.begin() + 2, v.end());
    });
    if (grid.locations.empty()) throw std::runtime_error(path + ": no usable rows");
    return grid;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j) out << ',';
        out << header[j];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            out << row[j];
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_dataset_csv(const std::string& path, const Dataset& data, const std::string& x_column,
                       const std::string& y_column, const std::string& response_column) {
    std::vector<std::string> header = {x_column, y_column, response_column};
    header.insert(header.end(), data.covariate_names.begin(), data.covariate_names.end());
    std::vector<std::vector<std::string>> rows;
    rows.reserve(data.n());
    for (std::size_t i = 0; i < data.n(); ++i) {
        std::vector<std::string> row;
        row.reserve(3 + data.p());
        row.push_back(format_double(data.locations[i].x));
        row.push_back(format_double(data.locations[i].y));
        row.push_back(format_double(data.response[i]));
        for (double v : data.covariates[i]) row.push_back(format_double(v));
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

}  // namespace twcv
