#include "ewagg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ewagg/aggregate.hpp"
#include "ewagg/baselines.hpp"
#include "ewagg/estimators.hpp"
#include "ewagg/noise.hpp"
#include "ewagg/prior.hpp"

namespace ewagg {
namespace {

std::string upper(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    return out;
}

}  // namespace

Method parse_method(std::string_view name) {
    const std::string u = upper(name);
    if (u == "EWA") return Method::Ewa;
    if (u == "SEWA") return Method::Sewa;
    if (u == "URE") return Method::Ure;
    if (u == "BJS") return Method::Bjs;
    if (u == "ST") return Method::St;
    if (u == "ORACLE") return Method::Oracle;
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::string_view method_label(Method m) {
    switch (m) {
        case Method::Ewa: return "EWA";
        case Method::Sewa: return "SEWA";
        case Method::Ure: return "URE";
        case Method::Bjs: return "BJS";
        case Method::St: return "ST";
        case Method::Oracle: return "ORACLE";
    }
    return "?";
}

std::vector<Method> parse_method_list(std::string_view text) {
    std::vector<Method> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (upper(item).empty()) throw std::invalid_argument("empty entry in method list");
        const Method m = parse_method(item);
        if (std::find(out.begin(), out.end(), m) != out.end())
            throw std::invalid_argument("method listed twice: " + std::string(method_label(m)));
        out.push_back(m);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (n < 8) throw std::invalid_argument("n must be at least 8");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be positive");
    if (replications < 1) throw std::invalid_argument("replications must be at least 1");
    if (methods.empty()) throw std::invalid_argument("at least one method is required");
    if (grid_alpha < 1 || grid_w < 1) throw std::invalid_argument("grid sizes must be positive");
    if (!(alpha_min > 0.0) || !(alpha_max >= alpha_min)) throw std::invalid_argument("need 0 < alpha_min <= alpha_max");
    if (!(beta_factor > 0.0)) throw std::invalid_argument("beta_factor must be positive");
    if (threads < 0) throw std::invalid_argument("threads must be nonnegative");
}

const MethodStatistics* ExperimentReport::find(Method m) const {
    for (const auto& s : methods)
        if (s.method == m) return &s;
    return nullptr;
}

std::pair<double, double> mean_and_sd(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("mean_and_sd of an empty sample");
    const double count = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= count;
    if (values.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (count - 1.0))};
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    const Index n = config.n;
    const Signal signal = make_test_signal(config.signal, config.n, config.smooth);
    const Vector& f = signal.values;
    const auto alpha = geometric_grid(config.alpha_min, config.alpha_max, config.grid_alpha);
    const auto w = geometric_grid(1.0, static_cast<double>(n), config.grid_w);
    const EstimatorFamily family = pinsker_family(n, alpha, w);
    const Prior prior = Prior::uniform(family.size());
    const NoiseModel noise = NoiseModel::homoscedastic(n, config.sigma);
    const Covariance& sigma_hat = noise.covariance;
    const double beta = config.beta_factor * config.sigma * config.sigma;
    const auto reps = static_cast<std::size_t>(config.replications);
    const std::size_t methods = config.methods.size();

    std::vector<std::vector<double>> raw(methods, std::vector<double>(reps));
    std::vector<double> oracle_mse(reps), self_check(reps);

    auto replicate = [&](std::size_t r) {
        const Vector y = sample_observation(f, noise, replication_seed(config.seed, r));
        const MethodResult oracle = oracle_select(family, y, f);
        const double base = empirical_norm_sq(oracle.estimate - f);
        oracle_mse[r] = base;
        self_check[r] = static_cast<double>(n) * (empirical_norm_sq(oracle.estimate - f) - base);
        for (std::size_t k = 0; k < methods; ++k) {
            Vector est;
            switch (config.methods[k]) {
                case Method::Ewa:
                    est = ewa_aggregate(family, y, beta, prior, RiskKind::Unbiased, sigma_hat).estimate;
                    break;
                case Method::Sewa: est = sewa_aggregate(family, y, beta, prior, sigma_hat).estimate; break;
                case Method::Ure: est = ure_select(family, y, sigma_hat).estimate; break;
                case Method::Bjs: est = block_james_stein(y, config.sigma).estimate; break;
                case Method::St: est = soft_threshold_sure(y, config.sigma).estimate; break;
                case Method::Oracle: est = oracle.estimate; break;
            }
            raw[k][r] = static_cast<double>(n) * (empirical_norm_sq(est - f) - base);
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers =
        std::min<std::size_t>(reps, config.threads > 0 ? static_cast<std::size_t>(config.threads) : hw);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t r = next++; r < reps; r = next++) {
            try {
                replicate(r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = reps;
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    ExperimentReport report;
    report.config = config;
    report.code_version = EWAGG_VERSION;
    for (std::size_t k = 0; k < methods; ++k) {
        MethodStatistics s;
        s.method = config.methods[k];
        std::tie(s.mean, s.sd) = mean_and_sd(raw[k]);
        s.raw = std::move(raw[k]);
        report.methods.push_back(std::move(s));
    }
    report.oracle_mse_mean = mean_and_sd(oracle_mse).first;
    for (double v : self_check) report.oracle_self_check = std::max(report.oracle_self_check, std::abs(v));
    return report;
}

}  // namespace ewagg
