#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twcv/types.hpp"

namespace twcv {

/// A parsed delimited text file: header row plus string cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;  // throws if absent
};

Table read_csv(const std::string& path);

/// Shortest round-trip decimal representation of a double ("." decimal,
/// locale-independent); "inf"/"nan" spelled out.
std::string format_double(double v);

/// Parses a decimal cell. Empty, "NA", "NaN", "nan" and unparseable cells
/// yield nullopt; +-inf parses but is reported as non-finite by callers.
std::optional<double> parse_double(const std::string& cell);

struct IngestOptions {
    /// When false (default), rows with non-finite values in the selected
    /// columns abort ingestion with an error listing the offending rows.
    /// When true, such rows are skipped and collected in `rejected_rows`.
    bool drop_bad_rows = false;
};

struct IngestReport {
    std::vector<std::size_t> rejected_rows;  // 1-based data-row numbers
};

/// Reads a dataset from a delimited text file (comma separator, header row).
/// Throws std::runtime_error naming any missing column, on unreadable files,
/// and when fewer than 2 valid rows remain.
Dataset ingest_dataset(const std::string& path,
                       const std::string& x_column,
                       const std::string& y_column,
                       const std::string& response_column,
                       const std::vector<std::string>& covariate_columns,
                       const IngestOptions& options = {},
                       IngestReport* report = nullptr);

/// Grid-file variant: coordinates + covariates, no response column.
/// Returns locations and the covariate matrix in column order given.
struct GridData {
    std::vector<Location> locations;
    std::vector<std::vector<double>> covariates;
    std::vector<std::string> covariate_names;
};

GridData ingest_grid(const std::string& path,
                     const std::string& x_column,
                     const std::string& y_column,
                     const std::vector<std::string>& covariate_columns,
                     const IngestOptions& options = {},
                     IngestReport* report = nullptr);

/// Writes a dataset in the schema ingest_dataset reads (x,y,response,covariates).
void write_dataset_csv(const std::string& path, const Dataset& data,
                       const std::string& x_column = "x",
                       const std::string& y_column = "y",
                       const std::string& response_column = "z");

/// Minimal CSV writer used by the CLI: header + rows of preformatted cells.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace twcv
