#pragma once

#include "ewagg/estimators.hpp"
#include "ewagg/noise.hpp"

namespace ewagg {

enum class RiskKind { Exact, Unbiased, Adjusted };

struct RiskEstimate {
    RiskKind kind = RiskKind::Exact;
    double value = 0.0;
};

/// Tr(S A). Uses sum_k S_kk a_k when S and A are simultaneously diagonal
/// (S scalar, or S diagonal and A an identity-basis filter); dense otherwise.
double trace_product(const Covariance& s, const AffineEstimator& est);
/// Diagonal of S A; sums over a block of indices give Tr(S^j A^j) for
/// block-diagonal S and A.
Vector trace_contributions(const Covariance& s, const AffineEstimator& est);
/// Tr(A S A^T)
double trace_sandwich(const AffineEstimator& est, const Covariance& s);

/// ||(A - I) f + b||_n^2 + Tr(A Sigma A^T) / n
double exact_risk(const AffineEstimator& est, const Vector& f, const Covariance& sigma);
/// ||Y - f_hat||_n^2 + (2/n) Tr(S A) - (1/n) Tr(S)
double unbiased_risk(const AffineEstimator& est, const Vector& y, const Covariance& sigma_hat);
/// unbiased_risk + (1/n) Y^T (A - A^2) Y
double adjusted_risk(const AffineEstimator& est, const Vector& y, const Covariance& sigma_hat);

RiskEstimate estimate_risk(RiskKind kind, const AffineEstimator& est, const Vector& y,
                           const Covariance& sigma_hat);

}  // namespace ewagg
