#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ewagg/signals.hpp"

namespace ewagg {

enum class Method { Ewa, Sewa, Ure, Bjs, St, Oracle };

Method parse_method(std::string_view name);
/// Column label: "EWA", "SEWA", "URE", "BJS", "ST", "ORACLE".
std::string_view method_label(Method m);
std::vector<Method> parse_method_list(std::string_view comma_separated);

struct ExperimentConfig {
    SignalName signal = SignalName::Blocks;
    bool smooth = false;
    int n = 256;
    double sigma = 0.33;
    int replications = 1000;
    std::uint64_t seed = 20120101;
    std::vector<Method> methods{Method::Ewa, Method::Ure, Method::Bjs, Method::St};
    int grid_alpha = 30;
    int grid_w = 30;
    double alpha_min = 0.1;
    double alpha_max = 100.0;
    /// beta = beta_factor * sigma^2
    double beta_factor = 8.0;
    /// 0 picks std::thread::hardware_concurrency().
    int threads = 0;
    std::string out_dir;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

struct MethodStatistics {
    Method method = Method::Ewa;
    double mean = 0.0;
    double sd = 0.0;
    /// n (MSE_method - MSE_oracle), indexed by replication.
    std::vector<double> raw;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<MethodStatistics> methods;
    /// Mean oracle MSE and the largest |statistic| of the oracle against
    /// itself (must be exactly 0).
    double oracle_mse_mean = 0.0;
    double oracle_self_check = 0.0;
    std::string code_version;

    const MethodStatistics* find(Method m) const;
};

/// Sample mean and standard deviation (n - 1 denominator).
std::pair<double, double> mean_and_sd(const std::vector<double>& values);

/// Deterministic given the config: replication r uses replication_seed(seed, r)
/// regardless of the thread count.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace ewagg
