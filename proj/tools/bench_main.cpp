#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ewagg/config.hpp"
#include "ewagg/estimators.hpp"
#include "ewagg/experiment.hpp"
#include "ewagg/noise.hpp"
#include "ewagg/report.hpp"
#include "ewagg/signals.hpp"
#include "ewagg/validators.hpp"

namespace fs = std::filesystem;
using namespace ewagg;

namespace {

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void print_validation(const ValidationReport& r) {
    std::cout << r.name << ": " << (r.passed ? "PASS" : "FAIL") << '\n'
              << "  members checked:        " << r.members.size() << '\n'
              << "  max asymmetry:          " << r.max_asymmetry << '\n'
              << "  max commutator:         " << r.max_commutator << '\n'
              << "  min eigenvalue:         " << r.min_eigenvalue << '\n'
              << "  max offset violation:   " << r.max_offset_violation << '\n';
    std::size_t failing = 0;
    for (const auto& m : r.members)
        if (!m.passed && failing++ < 10) std::cout << "  member " << m.index << " violation " << m.violation << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo benchmark for exponentially weighted aggregation of affine estimators"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(EWAGG_VERSION));

    auto* run = app.add_subcommand("run", "run one experiment and write its report");
    std::string signal = "Blocks", methods = "ewa,ure,bjs,st", out_dir = ".", config_path;
    int n = 256, reps = 1000, grid_alpha = 30, grid_w = 30, threads = 0, hist_bins = 0;
    double sigma = 0.33, beta_factor = 8.0;
    std::uint64_t seed = 20120101;
    bool smooth = false, csv = false;
    run->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
    auto* o_signal = run->add_option("--signal", signal, "Blocks, Doppler, HeaviSine, Ramp, PieceRegular, PiecePolynomial");
    auto* o_n = run->add_option("--n", n, "sample size");
    auto* o_sigma = run->add_option("--sigma", sigma, "noise standard deviation");
    auto* o_reps = run->add_option("--reps", reps, "replications");
    auto* o_seed = run->add_option("--seed", seed, "base seed");
    auto* o_smooth = run->add_flag("--smooth", smooth, "use the smoothed (integrated) signal");
    auto* o_methods = run->add_option("--methods", methods, "comma separated: ewa,sewa,ure,bjs,st,oracle");
    auto* o_ga = run->add_option("--grid-alpha", grid_alpha, "Pinsker alpha grid size");
    auto* o_gw = run->add_option("--grid-w", grid_w, "Pinsker w grid size");
    auto* o_beta = run->add_option("--beta-factor", beta_factor, "temperature beta = factor * sigma^2");
    auto* o_threads = run->add_option("--threads", threads, "worker threads, 0 = all cores");
    auto* o_out = run->add_option("--out", out_dir, "output directory");
    run->add_flag("--csv", csv, "also write the table as csv");
    run->add_option("--hist-bins", hist_bins, "also write per-method histograms of the statistic")->check(CLI::NonNegativeNumber);

    auto* table = app.add_subcommand("table", "render reports as a table");
    std::vector<std::string> report_paths;
    std::string format = "md";
    table->add_option("reports", report_paths, "report files")->required()->check(CLI::ExistingFile);
    table->add_option("--format", format, "md or csv");

    auto* signals = app.add_subcommand("signals", "write the test signals as x,y csv files");
    std::string signals_out = ".";
    int signals_n = 1024;
    signals->add_option("--out", signals_out, "output directory");
    signals->add_option("--n", signals_n, "sample size");

    auto* validate = app.add_subcommand("validate", "check an estimator family against the aggregation hypotheses");
    std::string family_name = "pinsker";
    int setting = 1, validate_n = 256;
    double validate_sigma = 0.33;
    validate->add_option("--family", family_name, "pinsker")->check(CLI::IsMember({"pinsker"}));
    validate->add_option("--setting", setting, "1 or 2")->check(CLI::IsMember({1, 2}));
    validate->add_option("--n", validate_n, "sample size");
    validate->add_option("--sigma", validate_sigma, "noise standard deviation");
    validate->add_option("--grid-alpha", grid_alpha, "Pinsker alpha grid size");
    validate->add_option("--grid-w", grid_w, "Pinsker w grid size");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
            if (o_signal->count()) cfg.signal = parse_signal_name(signal);
            if (o_n->count()) cfg.n = n;
            if (o_sigma->count()) cfg.sigma = sigma;
            if (o_reps->count()) cfg.replications = reps;
            if (o_seed->count()) cfg.seed = seed;
            if (o_smooth->count()) cfg.smooth = smooth;
            if (o_methods->count()) cfg.methods = parse_method_list(methods);
            if (o_ga->count()) cfg.grid_alpha = grid_alpha;
            if (o_gw->count()) cfg.grid_w = grid_w;
            if (o_beta->count()) cfg.beta_factor = beta_factor;
            if (o_threads->count()) cfg.threads = threads;
            if (o_out->count() || cfg.out_dir.empty()) cfg.out_dir = out_dir;

            const ExperimentReport report = run_experiment(cfg);
            const fs::path path = fs::path(cfg.out_dir) / report_file_name(cfg);
            write_report(report, path);
            if (csv) write_text(path.parent_path() / (path.stem().string() + ".csv"), emit_table(report, TableFormat::Csv));
            if (hist_bins > 0)
                for (const auto& m : report.methods)
                    write_text(path.parent_path() / (path.stem().string() + "-" + std::string(method_label(m.method)) + "-hist.csv"),
                               histogram_csv(m.raw, hist_bins));
            std::cout << emit_table(report, TableFormat::Markdown);
            std::cerr << "report written to " << path.string() << '\n';
        } else if (*table) {
            std::vector<ExperimentReport> reports;
            for (const auto& p : report_paths) reports.push_back(read_report(p));
            std::cout << emit_table(reports, parse_table_format(format));
        } else if (*signals) {
            for (SignalName name : all_signal_names())
                for (bool s : {false, true}) {
                    const Signal sig = make_test_signal(name, signals_n, s);
                    write_text(fs::path(signals_out) / (sig.name + ".csv"), signal_csv(sig));
                }
            std::cerr << "signals written to " << signals_out << '\n';
        } else if (*validate) {
            const auto alpha = geometric_grid(0.1, 100.0, grid_alpha);
            const auto w = geometric_grid(1.0, validate_n, grid_w);
            const EstimatorFamily family = pinsker_family(validate_n, alpha, w);
            const NoiseModel noise = NoiseModel::homoscedastic(validate_n, validate_sigma);
            const ValidationReport r =
                setting == 1 ? validate_setting1(family, noise.covariance) : validate_setting2(family);
            print_validation(r);
            return r.passed ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
