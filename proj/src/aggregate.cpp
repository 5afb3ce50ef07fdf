#include "ewagg/aggregate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <spdlog/spdlog.h>

#include "ewagg/signals.hpp"
#include "ewagg/validators.hpp"

namespace ewagg {
namespace {

constexpr double kBlockTolerance = 1e-10;

void warn_limited(const std::string& message) {
    static std::atomic<int> emitted{0};
    constexpr int kMaxWarnings = 8;
    const int k = emitted.fetch_add(1);
    if (k < kMaxWarnings) spdlog::warn("{}", message);
    if (k == kMaxWarnings) spdlog::warn("further aggregation warnings suppressed");
}

void check_temperature(double beta, const Covariance& sigma_hat, Setting setting, const char* who) {
    const double floor = min_temperature(sigma_hat, setting);
    if (beta < floor)
        warn_limited(std::string(who) + ": beta = " + std::to_string(beta) + " is below the guaranteed range beta >= " +
                     std::to_string(floor));
}

// Risk estimates for every member, computed on the working coordinates of `view`.
Vector member_risks(const EstimatorFamily& family, const FamilyView& view, const Vector& y, RiskKind kind,
                    const Covariance& sigma_hat) {
    const double n = static_cast<double>(family.dimension());
    const double trace_s = sigma_hat.trace();
    Vector risks(static_cast<Index>(family.size()));
    const Vector& c = view.data();
    for (std::size_t m = 0; m < family.size(); ++m) {
        const AffineEstimator& est = family[m];
        const Vector fit = view.estimate(m);
        double r = (c - fit).squaredNorm() / n + 2.0 * trace_product(sigma_hat, est) / n - trace_s / n;
        if (kind == RiskKind::Adjusted) {
            if (view.uses_fast_path()) {
                const auto& w = est.diagonal_form()->weights;
                r += (w.array() - w.array().square()).matrix().dot(c.cwiseAbs2()) / n;
            } else {
                r = adjusted_risk(est, y, sigma_hat);
            }
        } else if (kind == RiskKind::Exact) {
            throw std::invalid_argument("aggregation weights need an estimated risk (unbiased or adjusted)");
        }
        risks[static_cast<Index>(m)] = r;
    }
    return risks;
}

Vector posterior_mean(const EstimatorFamily& family, const FamilyView& view, const PosteriorWeights& post) {
    Vector acc = Vector::Zero(family.dimension());
    for (std::size_t m = 0; m < family.size(); ++m) {
        const double w = post[m];
        if (w != 0.0) acc += w * view.estimate(m);
    }
    return view.from_working(acc);
}

void require_family_inputs(const EstimatorFamily& family, const Vector& y, const Prior& prior,
                           const Covariance& sigma_hat) {
    if (y.size() != family.dimension()) throw std::invalid_argument("data length differs from family dimension");
    if (prior.size() != family.size()) throw std::invalid_argument("prior size differs from family size");
    if (sigma_hat.size() != family.dimension())
        throw std::invalid_argument("covariance dimension differs from family dimension");
}

AggregateResult ewa_impl(const EstimatorFamily& family, const Vector& y, double beta, const Prior& prior,
                         RiskKind risk_kind, const Covariance& sigma_hat, bool warn) {
    require_family_inputs(family, y, prior, sigma_hat);
    if (warn)
        check_temperature(beta, sigma_hat, risk_kind == RiskKind::Adjusted ? Setting::Two : Setting::One,
                          "ewa_aggregate");
    const FamilyView view(family, y);
    AggregateResult result;
    result.risks = member_risks(family, view, y, risk_kind, sigma_hat);
    result.posterior = ewa_weights(result.risks, beta, prior, family.dimension());
    result.estimate = posterior_mean(family, view, result.posterior);
    return result;
}

// Returns the first block whose off-diagonal-block part is nonzero, if any.
std::optional<std::size_t> offending_block(const Matrix& a, const BlockPartition& p) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    for (std::size_t j = 0; j < p.block_count(); ++j) {
        const Index b = p.block_begin(j), len = p.block_size(j);
        const Index n = a.rows();
        // rows of block j outside the block's columns
        const double left = b > 0 ? a.block(b, 0, len, b).cwiseAbs().maxCoeff() : 0.0;
        const double right = b + len < n ? a.block(b, b + len, len, n - b - len).cwiseAbs().maxCoeff() : 0.0;
        if (std::max(left, right) > kBlockTolerance * scale) return j;
    }
    return std::nullopt;
}

void require_block_diagonal(const EstimatorFamily& family, const BlockPartition& p, const Covariance& sigma_hat) {
    if (p.block_count() <= 1) return;
    for (std::size_t m = 0; m < family.size(); ++m) {
        const auto* d = family[m].diagonal_form();
        if (d && d->basis == Basis::Identity) continue;
        if (auto j = offending_block(family[m].matrix(), p))
            throw std::invalid_argument("gewa_aggregate: member " + std::to_string(m) + " (" + family[m].label() +
                                        ") is not block diagonal; offending block " + std::to_string(*j));
    }
    if (!sigma_hat.is_diagonal())
        if (auto j = offending_block(sigma_hat.to_dense(), p))
            throw std::invalid_argument("gewa_aggregate: covariance estimate is not block diagonal; offending block " +
                                        std::to_string(*j));
}

}  // namespace

double min_temperature(const Covariance& sigma, Setting setting) {
    return (setting == Setting::One ? 8.0 : 4.0) * sigma.spectral_norm();
}

PosteriorWeights ewa_weights(const Vector& risks, double beta, const Prior& prior, Index n) {
    if (!(beta > 0.0)) throw std::invalid_argument("ewa_weights needs beta > 0");
    if (static_cast<std::size_t>(risks.size()) != prior.size())
        throw std::invalid_argument("ewa_weights: risks and prior differ in size");
    const double inf = std::numeric_limits<double>::infinity();
    Vector logw = Vector::Constant(risks.size(), -inf);
    double top = -inf;
    for (Index k = 0; k < risks.size(); ++k) {
        const double r = risks[k];
        if (std::isnan(r) || r == -inf) throw std::invalid_argument("ewa_weights: risk " + std::to_string(k) + " is not finite");
        const double p = prior.weights()[k];
        if (p <= 0.0 || r == inf) continue;
        logw[k] = std::log(p) - static_cast<double>(n) * r / beta;
        top = std::max(top, logw[k]);
    }
    if (top == -inf) throw DegeneratePosteriorError("every prior-charged member has infinite risk");
    Vector w(risks.size());
    for (Index k = 0; k < risks.size(); ++k) w[k] = logw[k] == -inf ? 0.0 : std::exp(logw[k] - top);
    w /= w.sum();
    return PosteriorWeights{std::move(w)};
}

AggregateResult ewa_aggregate(const EstimatorFamily& family, const Vector& y, double beta, const Prior& prior,
                              RiskKind risk_kind, const Covariance& sigma_hat) {
    return ewa_impl(family, y, beta, prior, risk_kind, sigma_hat, true);
}

AggregateResult sewa_aggregate(const EstimatorFamily& family, const Vector& y, double beta, const Prior& prior,
                               const Covariance& sigma_hat, SewaRisk risk_source) {
    require_family_inputs(family, y, prior, sigma_hat);
    check_temperature(beta, sigma_hat, Setting::Two, "sewa_aggregate");
    if (const auto r = check_offset_orthogonality(family); !r.passed)
        warn_limited("sewa_aggregate: A b = A^T b = 0 violated (max " + std::to_string(r.max_offset_violation) + ")");
    if (const auto r = check_condition_C(family, sigma_hat); !r.passed)
        warn_limited("sewa_aggregate: condition (C) violated (max gap " + std::to_string(r.max_trace_gap) + ")");

    const EstimatorFamily sym = symmetrize(family);
    const FamilyView sym_view(sym, y);
    AggregateResult result;
    if (risk_source == SewaRisk::Symmetrized) {
        result.risks = member_risks(sym, sym_view, y, RiskKind::Unbiased, sigma_hat);
    } else {
        const FamilyView view(family, y);
        result.risks = member_risks(family, view, y, RiskKind::Unbiased, sigma_hat);
    }
    result.posterior = ewa_weights(result.risks, beta, prior, family.dimension());
    result.estimate = posterior_mean(sym, sym_view, result.posterior);
    return result;
}

GroupedResult gewa_aggregate(const EstimatorFamily& family, const Vector& y, const BlockPartition& partition,
                             std::span<const double> beta, const Prior& prior, Setting setting,
                             const Covariance& sigma_hat, SewaRisk risk_source) {
    require_family_inputs(family, y, prior, sigma_hat);
    if (partition.dimension() != family.dimension())
        throw std::invalid_argument("partition dimension differs from family dimension");
    if (beta.size() != partition.block_count())
        throw std::invalid_argument("gewa_aggregate needs one temperature per block");
    require_block_diagonal(family, partition, sigma_hat);

    const std::size_t blocks = partition.block_count();
    for (std::size_t j = 0; j < blocks; ++j)
        check_temperature(beta[j], sigma_hat.block(partition.block_begin(j), partition.block_size(j)), setting,
                          "gewa_aggregate");

    const EstimatorFamily aggregated = setting == Setting::Two ? symmetrize(family) : family;
    const EstimatorFamily& scored =
        (setting == Setting::Two && risk_source == SewaRisk::Symmetrized) ? aggregated : family;
    const double n = static_cast<double>(family.dimension());
    const Vector s_diag = sigma_hat.diagonal_entries();

    // risks(m, j) = per-block unbiased risk of member m
    Matrix risks(static_cast<Index>(family.size()), static_cast<Index>(blocks));
    for (std::size_t m = 0; m < family.size(); ++m) {
        const Vector residual = y - scored[m].apply(y);
        const Vector contrib = trace_contributions(sigma_hat, scored[m]);
        for (std::size_t j = 0; j < blocks; ++j) {
            const Index b = partition.block_begin(j), len = partition.block_size(j);
            risks(static_cast<Index>(m), static_cast<Index>(j)) = residual.segment(b, len).squaredNorm() / n +
                                                                  2.0 * contrib.segment(b, len).sum() / n -
                                                                  s_diag.segment(b, len).sum() / n;
        }
    }

    GroupedResult result;
    result.estimate = Vector::Zero(family.dimension());
    result.posteriors.reserve(blocks);
    for (std::size_t j = 0; j < blocks; ++j)
        result.posteriors.push_back(ewa_weights(risks.col(static_cast<Index>(j)), beta[j], prior, family.dimension()));
    for (std::size_t m = 0; m < family.size(); ++m) {
        const Vector est = aggregated[m].apply(y);
        for (std::size_t j = 0; j < blocks; ++j) {
            const double w = result.posteriors[j][m];
            if (w == 0.0) continue;
            const Index b = partition.block_begin(j), len = partition.block_size(j);
            result.estimate.segment(b, len) += w * est.segment(b, len);
        }
    }
    return result;
}

std::vector<double> block_temperatures(const Covariance& sigma, const BlockPartition& partition, Setting setting) {
    std::vector<double> beta;
    for (std::size_t j = 0; j < partition.block_count(); ++j)
        beta.push_back(min_temperature(sigma.block(partition.block_begin(j), partition.block_size(j)), setting));
    return beta;
}

double kl_divergence(const Vector& p, const Vector& q) {
    if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: supports differ in size");
    double kl = 0.0;
    for (Index k = 0; k < p.size(); ++k) {
        if (p[k] <= 0.0) continue;
        if (q[k] <= 0.0) return std::numeric_limits<double>::infinity();
        kl += p[k] * std::log(p[k] / q[k]);
    }
    return kl;
}

OracleBoundReport oracle_bound_check(const EstimatorFamily& family, const Vector& f, const NoiseModel& noise,
                                     double beta, const Prior& prior, std::size_t replications, std::uint64_t seed,
                                     Setting setting) {
    if (replications < 2) throw std::invalid_argument("oracle_bound_check needs at least two replications");
    const Covariance& sigma = noise.covariance;
    const double n = static_cast<double>(f.size());

    OracleBoundReport report;
    report.replications = replications;
    report.setting = setting;
    const bool valid = setting == Setting::One ? validate_setting1(family, sigma).passed
                                               : validate_setting2(family).passed;
    report.verified_regime = valid && beta >= min_temperature(sigma, setting);

    report.rhs = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < family.size(); ++l) {
        if (prior[l] <= 0.0) continue;
        const double bound = exact_risk(family[l], f, sigma) + beta * std::log(1.0 / prior[l]) / n;
        if (bound < report.rhs) {
            report.rhs = bound;
            report.rhs_argmin = l;
        }
    }

    const RiskKind kind = setting == Setting::One ? RiskKind::Unbiased : RiskKind::Adjusted;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t r = 0; r < replications; ++r) {
        const Vector y = sample_observation(f, noise, replication_seed(seed, r));
        const AggregateResult agg = ewa_impl(family, y, beta, prior, kind, sigma, false);
        const double loss = empirical_norm_sq(agg.estimate - f);
        sum += loss;
        sum_sq += loss * loss;
    }
    const double count = static_cast<double>(replications);
    report.lhs_mean = sum / count;
    const double var = std::max(0.0, (sum_sq - count * report.lhs_mean * report.lhs_mean) / (count - 1.0));
    report.lhs_standard_error = std::sqrt(var / count);
    report.margin = report.rhs - report.lhs_mean;
    report.holds_within_3se = report.lhs_mean <= report.rhs + 3.0 * report.lhs_standard_error;
    return report;
}

}  // namespace ewagg
