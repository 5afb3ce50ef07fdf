#include "ewagg/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ewagg {
namespace {

using nlohmann::json;

std::string full(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& s) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
    return v;
}

std::string row_label(const ExperimentConfig& c) {
    return std::string(to_string(c.signal)) + (c.smooth ? " (smooth)" : "");
}

}  // namespace

json report_to_json(const ExperimentReport& report) {
    const auto& c = report.config;
    json methods = json::array();
    for (const auto& m : report.methods)
        methods.push_back({{"method", method_label(m.method)}, {"mean", m.mean}, {"sd", m.sd}, {"raw", m.raw}});
    std::vector<std::string> method_names;
    for (Method m : c.methods) method_names.emplace_back(method_label(m));
    return {
        {"schema", kReportSchema},
        {"schema_version", kReportSchemaVersion},
        {"code_version", report.code_version},
        {"config",
         {{"signal", to_string(c.signal)},
          {"smooth", c.smooth},
          {"n", c.n},
          {"sigma", c.sigma},
          {"replications", c.replications},
          {"seed", c.seed},
          {"methods", method_names},
          {"grid_alpha", c.grid_alpha},
          {"grid_w", c.grid_w},
          {"alpha_min", c.alpha_min},
          {"alpha_max", c.alpha_max},
          {"beta_factor", c.beta_factor},
          {"threads", c.threads}}},
        {"oracle_mse_mean", report.oracle_mse_mean},
        {"oracle_self_check", report.oracle_self_check},
        {"methods", methods},
    };
}

ExperimentReport report_from_json(const json& j) {
    if (j.value("schema", std::string()) != kReportSchema) throw std::invalid_argument("not an experiment report");
    if (j.at("schema_version").get<int>() != kReportSchemaVersion)
        throw std::invalid_argument("unsupported report schema version");
    ExperimentReport r;
    const json& c = j.at("config");
    r.config.signal = parse_signal_name(c.at("signal").get<std::string>());
    r.config.smooth = c.at("smooth").get<bool>();
    r.config.n = c.at("n").get<int>();
    r.config.sigma = c.at("sigma").get<double>();
    r.config.replications = c.at("replications").get<int>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.methods.clear();
    for (const auto& m : c.at("methods")) r.config.methods.push_back(parse_method(m.get<std::string>()));
    r.config.grid_alpha = c.at("grid_alpha").get<int>();
    r.config.grid_w = c.at("grid_w").get<int>();
    r.config.alpha_min = c.at("alpha_min").get<double>();
    r.config.alpha_max = c.at("alpha_max").get<double>();
    r.config.beta_factor = c.at("beta_factor").get<double>();
    r.config.threads = c.value("threads", 0);
    r.code_version = j.value("code_version", std::string());
    r.oracle_mse_mean = j.at("oracle_mse_mean").get<double>();
    r.oracle_self_check = j.at("oracle_self_check").get<double>();
    for (const auto& m : j.at("methods")) {
        MethodStatistics s;
        s.method = parse_method(m.at("method").get<std::string>());
        s.mean = m.at("mean").get<double>();
        s.sd = m.at("sd").get<double>();
        s.raw = m.at("raw").get<std::vector<double>>();
        r.methods.push_back(std::move(s));
    }
    return r;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << report_to_json(report).dump(2) << '\n';
}

ExperimentReport read_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    try {
        return report_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

std::string report_file_name(const ExperimentConfig& config) {
    std::string name(to_string(config.signal));
    if (config.smooth) name += "-smooth";
    return name + "-n" + std::to_string(config.n) + ".json";
}

TableFormat parse_table_format(std::string_view s) {
    if (s == "md" || s == "markdown") return TableFormat::Markdown;
    if (s == "csv") return TableFormat::Csv;
    throw std::invalid_argument("unknown table format '" + std::string(s) + "'");
}

std::string emit_table(const std::vector<ExperimentReport>& reports, TableFormat format) {
    if (reports.empty()) throw std::invalid_argument("emit_table needs at least one report");
    std::vector<Method> columns;
    for (const auto& m : reports.front().methods) columns.push_back(m.method);
    std::ostringstream out;
    if (format == TableFormat::Markdown) {
        out << "| signal | n |";
        for (Method m : columns) out << ' ' << method_label(m) << " |";
        out << "\n|---|---|";
        for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
        out << '\n';
        for (const auto& r : reports) {
            out << "| " << row_label(r.config) << " | " << r.config.n << " |";
            for (Method m : columns) {
                const MethodStatistics* s = r.find(m);
                out << ' ' << (s ? fixed(s->mean, 3) + " (" + fixed(s->sd, 2) + ")" : "n/a") << " |";
            }
            out << '\n';
        }
    } else {
        out << "signal,smooth,n";
        for (Method m : columns) out << ',' << method_label(m) << "_mean," << method_label(m) << "_sd";
        out << '\n';
        for (const auto& r : reports) {
            out << to_string(r.config.signal) << ',' << (r.config.smooth ? 1 : 0) << ',' << r.config.n;
            for (Method m : columns) {
                const MethodStatistics* s = r.find(m);
                out << ',' << (s ? full(s->mean) : "") << ',' << (s ? full(s->sd) : "");
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string emit_table(const ExperimentReport& report, TableFormat format) {
    return emit_table(std::vector<ExperimentReport>{report}, format);
}

std::vector<TableRow> parse_csv_table(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty csv table");
    const auto header = split(line, ',');
    if (header.size() < 3 || header[0] != "signal" || header[1] != "smooth" || header[2] != "n" ||
        (header.size() - 3) % 2 != 0)
        throw std::invalid_argument("unexpected csv table header");
    std::vector<std::string> methods;
    for (std::size_t i = 3; i < header.size(); i += 2) {
        const std::string& h = header[i];
        const auto cut = h.rfind("_mean");
        if (cut == std::string::npos || header[i + 1] != h.substr(0, cut) + "_sd")
            throw std::invalid_argument("unexpected csv column '" + h + "'");
        methods.push_back(h.substr(0, cut));
    }
    std::vector<TableRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) throw std::invalid_argument("csv row has the wrong number of cells");
        TableRow row;
        row.signal = cells[0];
        row.smooth = cells[1] == "1";
        row.n = std::stoi(cells[2]);
        row.methods = methods;
        for (std::size_t i = 3; i < cells.size(); i += 2) {
            row.means.push_back(parse_double(cells[i]));
            row.sds.push_back(parse_double(cells[i + 1]));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string signal_csv(const Signal& signal) {
    std::ostringstream out;
    out << "x,y\n";
    const Index n = signal.size();
    for (Index i = 0; i < n; ++i)
        out << full(static_cast<double>(i + 1) / static_cast<double>(n)) << ',' << full(signal.values[i]) << '\n';
    return out.str();
}

std::vector<std::size_t> histogram_counts(const std::vector<double>& values, int bins) {
    if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    if (values.empty()) return counts;
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    double lo = *lo_it, hi = *hi_it;
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * bins);
        counts[std::min(b, counts.size() - 1)]++;
    }
    return counts;
}

std::string histogram_csv(const std::vector<double>& values, int bins) {
    const auto counts = histogram_counts(values, bins);
    double lo = 0.0, hi = 1.0;
    if (!values.empty()) {
        const auto [a, b] = std::minmax_element(values.begin(), values.end());
        lo = *a;
        hi = *b;
    }
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    std::ostringstream out;
    out << "bin_lo,bin_hi,count\n";
    const double width = (hi - lo) / bins;
    for (int i = 0; i < bins; ++i)
        out << full(lo + i * width) << ',' << full(i + 1 == bins ? hi : lo + (i + 1) * width) << ','
            << counts[static_cast<std::size_t>(i)] << '\n';
    return out.str();
}

}  // namespace ewagg
