#include "ewagg/risk.hpp"

#include <stdexcept>

#include "ewagg/signals.hpp"

namespace ewagg {
namespace {

void require_same_size(const AffineEstimator& est, Index n, const char* what) {
    if (est.size() != n) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

const Vector* shared_diagonal(const Covariance& s, const AffineEstimator& est, Vector& storage) {
    const auto* d = est.diagonal_form();
    if (d == nullptr) return nullptr;
    if (s.is_scalar() || (s.is_diagonal() && d->basis == Basis::Identity)) {
        storage = s.diagonal_entries();
        return &storage;
    }
    return nullptr;
}

}  // namespace

double trace_product(const Covariance& s, const AffineEstimator& est) {
    require_same_size(est, s.size(), "trace_product");
    Vector diag;
    if (const Vector* sd = shared_diagonal(s, est, diag)) return sd->dot(est.diagonal_form()->weights);
    if (const auto* dense = est.dense_form()) {
        if (s.is_diagonal()) return s.diagonal_entries().dot(dense->matrix.diagonal());
        return s.to_dense().cwiseProduct(dense->matrix.transpose()).sum();
    }
    return s.to_dense().cwiseProduct(est.matrix().transpose()).sum();
}

Vector trace_contributions(const Covariance& s, const AffineEstimator& est) {
    require_same_size(est, s.size(), "trace_contributions");
    const auto* d = est.diagonal_form();
    if (d && d->basis == Basis::Identity && s.is_diagonal()) return s.diagonal_entries().cwiseProduct(d->weights);
    const Matrix a = est.matrix();
    if (s.is_diagonal()) return s.diagonal_entries().cwiseProduct(a.diagonal());
    return (s.to_dense() * a).diagonal();
}

double trace_sandwich(const AffineEstimator& est, const Covariance& s) {
    require_same_size(est, s.size(), "trace_sandwich");
    Vector diag;
    if (const Vector* sd = shared_diagonal(s, est, diag)) return sd->dot(est.diagonal_form()->weights.cwiseAbs2());
    const Matrix a = est.matrix();
    if (s.is_diagonal()) return (a.cwiseAbs2() * s.diagonal_entries()).sum();
    return (a * s.to_dense() * a.transpose()).trace();
}

double exact_risk(const AffineEstimator& est, const Vector& f, const Covariance& sigma) {
    require_same_size(est, f.size(), "exact_risk");
    const Vector bias = est.apply(f) - f;
    return empirical_norm_sq(bias) + trace_sandwich(est, sigma) / static_cast<double>(f.size());
}

double unbiased_risk(const AffineEstimator& est, const Vector& y, const Covariance& sigma_hat) {
    require_same_size(est, y.size(), "unbiased_risk");
    const double n = static_cast<double>(y.size());
    return empirical_norm_sq(y - est.apply(y)) + 2.0 * trace_product(sigma_hat, est) / n - sigma_hat.trace() / n;
}

double adjusted_risk(const AffineEstimator& est, const Vector& y, const Covariance& sigma_hat) {
    const double n = static_cast<double>(y.size());
    double quad = 0.0;
    if (const auto* d = est.diagonal_form()) {
        const Vector c = analyze(d->basis, y);
        quad = (d->weights.array() - d->weights.array().square()).matrix().dot(c.cwiseAbs2());
    } else {
        const Matrix& a = est.dense_form()->matrix;
        const Vector ay = a * y;
        quad = y.dot(ay) - (a.transpose() * y).dot(ay);
    }
    return unbiased_risk(est, y, sigma_hat) + quad / n;
}

RiskEstimate estimate_risk(RiskKind kind, const AffineEstimator& est, const Vector& y, const Covariance& sigma_hat) {
    switch (kind) {
        case RiskKind::Unbiased: return {kind, unbiased_risk(est, y, sigma_hat)};
        case RiskKind::Adjusted: return {kind, adjusted_risk(est, y, sigma_hat)};
        case RiskKind::Exact: break;
    }
    throw std::invalid_argument("estimate_risk: exact risk needs the true signal; use exact_risk");
}

}  // namespace ewagg
