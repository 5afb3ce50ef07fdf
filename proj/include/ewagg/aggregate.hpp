#pragma once

#include <span>
#include <vector>

#include "ewagg/estimators.hpp"
#include "ewagg/noise.hpp"
#include "ewagg/partition.hpp"
#include "ewagg/prior.hpp"
#include "ewagg/risk.hpp"

namespace ewagg {

struct PosteriorWeights {
    Vector weights;

    std::size_t size() const { return static_cast<std::size_t>(weights.size()); }
    double operator[](std::size_t i) const { return weights[static_cast<Index>(i)]; }
};

/// Setting 1: commuting symmetric members with unbiased risk (beta >= 8|||Sigma|||).
/// Setting 2: contractions or symmetrized members (beta >= 4|||Sigma|||).
enum class Setting { One = 1, Two = 2 };

/// 8 |||Sigma||| for setting 1, 4 |||Sigma||| for setting 2.
double min_temperature(const Covariance& sigma, Setting setting);

/// theta_k proportional to pi_k exp(-n r_k / beta), computed with a
/// max-shift. `n` is the regression sample size. Members with +inf risk get
/// zero weight; throws DegeneratePosteriorError if every prior-charged
/// member has infinite risk, std::invalid_argument on NaN risks or beta <= 0.
PosteriorWeights ewa_weights(const Vector& risks, double beta, const Prior& prior, Index n);

struct AggregateResult {
    Vector estimate;
    PosteriorWeights posterior;
    Vector risks;  // risk estimates used for the weights
};

/// Posterior mean of the member estimates. Logs a warning (does not throw)
/// when beta is below the temperature the theory asks for.
AggregateResult ewa_aggregate(const EstimatorFamily& family, const Vector& y, double beta,
                              const Prior& prior, RiskKind risk_kind, const Covariance& sigma_hat);

/// Which estimator the SEWA weights are computed from.
enum class SewaRisk { Symmetrized, Original };

/// Aggregate of the symmetrized members A + A^T - A^T A with unbiased-risk weights.
AggregateResult sewa_aggregate(const EstimatorFamily& family, const Vector& y, double beta,
                               const Prior& prior, const Covariance& sigma_hat,
                               SewaRisk risk_source = SewaRisk::Symmetrized);

struct GroupedResult {
    Vector estimate;
    std::vector<PosteriorWeights> posteriors;  // one per block
};

/// Grouped aggregate: independent exponential weights per block with
/// per-block unbiased risks (1/n normalization) and temperatures beta[j].
/// Setting 2 aggregates the symmetrized members. Throws
/// std::invalid_argument if a member or Sigma_hat is not block diagonal.
GroupedResult gewa_aggregate(const EstimatorFamily& family, const Vector& y,
                             const BlockPartition& partition, std::span<const double> beta,
                             const Prior& prior, Setting setting, const Covariance& sigma_hat,
                             SewaRisk risk_source = SewaRisk::Symmetrized);

/// beta_j = min_temperature(Sigma^j, setting) for every block.
std::vector<double> block_temperatures(const Covariance& sigma, const BlockPartition& partition,
                                       Setting setting);

/// sum p_k log(p_k / q_k), 0 log 0 = 0, +inf if p charges a q-null atom.
double kl_divergence(const Vector& p, const Vector& q);
inline double kl_divergence(const PosteriorWeights& p, const Prior& q) {
    return kl_divergence(p.weights, q.weights());
}

struct OracleBoundReport {
    std::size_t replications = 0;
    double lhs_mean = 0.0;            // Monte Carlo E||f_EWA - f||_n^2
    double lhs_standard_error = 0.0;
    double rhs = 0.0;                 // min over prior-charged members of r_l + beta log(1/pi_l)/n
    std::size_t rhs_argmin = 0;
    double margin = 0.0;              // rhs - lhs_mean
    bool holds_within_3se = false;    // lhs_mean <= rhs + 3 SE
    bool verified_regime = true;      // beta >= min_temperature and family passes validation
    Setting setting = Setting::One;
};

/// Checks the discrete oracle inequality by Monte Carlo. Setting 1 uses
/// unbiased risks, setting 2 adjusted risks.
OracleBoundReport oracle_bound_check(const EstimatorFamily& family, const Vector& f,
                                     const NoiseModel& noise, double beta, const Prior& prior,
                                     std::size_t replications, std::uint64_t seed,
                                     Setting setting = Setting::One);

}  // namespace ewagg
