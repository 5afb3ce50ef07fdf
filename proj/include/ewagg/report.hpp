#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ewagg/experiment.hpp"
#include "ewagg/signals.hpp"

namespace ewagg {

inline constexpr const char* kReportSchema = "ewagg.experiment-report";
inline constexpr int kReportSchemaVersion = 1;

nlohmann::json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);

void write_report(const ExperimentReport& report, const std::filesystem::path& path);
ExperimentReport read_report(const std::filesystem::path& path);
/// "<signal>[-smooth]-n<n>.json"
std::string report_file_name(const ExperimentConfig& config);

enum class TableFormat { Markdown, Csv };
TableFormat parse_table_format(std::string_view s);

/// One row per report, one column per method of the first report.
/// Markdown cells read "mean (sd)" with 3 and 2 decimals; csv keeps full precision.
std::string emit_table(const std::vector<ExperimentReport>& reports, TableFormat format);
std::string emit_table(const ExperimentReport& report, TableFormat format);

struct TableRow {
    std::string signal;
    bool smooth = false;
    int n = 0;
    std::vector<std::string> methods;
    std::vector<double> means;
    std::vector<double> sds;
};
/// Inverse of the csv table layout.
std::vector<TableRow> parse_csv_table(const std::string& csv);

/// "x,y" rows with x_i = i/n, in increasing x.
std::string signal_csv(const Signal& signal);
/// "bin_lo,bin_hi,count" rows over equal-width bins spanning the values.
std::string histogram_csv(const std::vector<double>& values, int bins);
std::vector<std::size_t> histogram_counts(const std::vector<double>& values, int bins);

}  // namespace ewagg
