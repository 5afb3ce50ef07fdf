#include "ewagg/validators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace ewagg {
namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

double min_symmetric_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
}

// Sigma restricted to the eigenbasis of a diagonal filter is diagonal with
// these entries when both are simultaneously diagonal.
std::optional<Vector> shared_diagonal(const Covariance& s, const DiagonalForm& d) {
    if (s.is_scalar()) return s.diagonal_entries();
    if (s.is_diagonal() && d.basis == Basis::Identity) return s.diagonal_entries();
    return std::nullopt;
}

void record(ValidationReport& report, std::size_t index, double violation) {
    const bool ok = violation <= kValidationTolerance;
    report.members.push_back(MemberCheck{index, ok, std::max(violation, 0.0)});
    report.passed = report.passed && ok;
}

}  // namespace

ValidationReport validate_setting1(const EstimatorFamily& family, const Covariance& sigma) {
    ValidationReport report;
    report.name = "setting 1 (commuting, A Sigma + Sigma A >= 0, b = 0)";
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    const bool diagonal_family = family.common_diagonal_basis().has_value();

    std::vector<Matrix> dense;
    if (!diagonal_family) {
        dense.reserve(family.size());
        for (const auto& m : family.members()) dense.push_back(m.matrix());
    }
    const Matrix sigma_dense = diagonal_family ? Matrix() : sigma.to_dense();

    for (std::size_t i = 0; i < family.size(); ++i) {
        const AffineEstimator& est = family[i];
        double violation = 0.0;
        double min_eig = 0.0;
        double asym = 0.0;
        const auto* d = est.diagonal_form();
        std::optional<Vector> shared = d ? shared_diagonal(sigma, *d) : std::nullopt;
        if (d && shared) {
            min_eig = (2.0 * d->weights.cwiseProduct(*shared)).minCoeff();
        } else {
            const Matrix a = diagonal_family ? est.matrix() : dense[i];
            const Matrix sd = sigma_dense.size() ? sigma_dense : sigma.to_dense();
            asym = d ? 0.0 : max_abs(Matrix(a - a.transpose()));
            min_eig = min_symmetric_eigenvalue(a * sd + sd * a);
        }
        const double offset = max_abs(est.offset());
        report.max_asymmetry = std::max(report.max_asymmetry, asym);
        report.min_eigenvalue = std::min(report.min_eigenvalue, min_eig);
        report.max_offset_violation = std::max(report.max_offset_violation, offset);
        violation = std::max({asym, -min_eig, offset});
        record(report, i, violation);
    }

    if (!diagonal_family) {
        for (std::size_t i = 0; i < family.size(); ++i)
            for (std::size_t j = i + 1; j < family.size(); ++j) {
                const double c = max_abs(Matrix(dense[i] * dense[j] - dense[j] * dense[i]));
                if (!report.worst_pair || c > report.max_commutator) {
                    report.max_commutator = c;
                    report.worst_pair = std::make_pair(i, j);
                }
                if (c > kValidationTolerance) {
                    report.passed = false;
                    report.members[i].passed = report.members[j].passed = false;
                    report.members[i].violation = std::max(report.members[i].violation, c);
                    report.members[j].violation = std::max(report.members[j].violation, c);
                }
            }
    }
    return report;
}

ValidationReport validate_setting2(const EstimatorFamily& family) {
    ValidationReport report;
    report.name = "setting 2 (A <= I, A b = 0)";
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < family.size(); ++i) {
        const AffineEstimator& est = family[i];
        double asym = 0.0;
        double min_eig = 0.0;
        Vector ab;
        if (const auto* d = est.diagonal_form()) {
            min_eig = (1.0 - d->weights.array()).minCoeff();
            const Vector b = analyze(d->basis, d->offset);
            ab = d->weights.cwiseProduct(b);
        } else {
            const Matrix& a = est.dense_form()->matrix;
            asym = max_abs(Matrix(a - a.transpose()));
            min_eig = min_symmetric_eigenvalue(Matrix::Identity(a.rows(), a.cols()) - a);
            ab = a * est.offset();
        }
        const double offset = max_abs(ab);
        report.max_asymmetry = std::max(report.max_asymmetry, asym);
        report.min_eigenvalue = std::min(report.min_eigenvalue, min_eig);
        report.max_offset_violation = std::max(report.max_offset_violation, offset);
        record(report, i, std::max({asym, -min_eig, offset}));
    }
    return report;
}

ValidationReport check_condition_C(const EstimatorFamily& family, const Covariance& sigma_hat) {
    ValidationReport report;
    report.name = "condition (C): Tr(S A) <= Tr(S A^T A)";
    report.max_trace_gap = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < family.size(); ++i) {
        const AffineEstimator& est = family[i];
        double gap = 0.0;
        double defect = 0.0;
        const auto* d = est.diagonal_form();
        std::optional<Vector> shared = d ? shared_diagonal(sigma_hat, *d) : std::nullopt;
        if (d && shared) {
            const Vector excess = (d->weights.array() - d->weights.array().square()).matrix();
            gap = shared->dot(excess);
            defect = excess.sum();
        } else {
            const Matrix a = est.matrix();
            const Matrix s = sigma_hat.to_dense();
            gap = (s * a).trace() - (s * a.transpose() * a).trace();
            defect = a.trace() - (a * a).trace();
        }
        report.max_trace_gap = std::max(report.max_trace_gap, gap);
        report.max_idempotency_defect = std::max(report.max_idempotency_defect, defect);
        record(report, i, gap);
    }
    return report;
}

ValidationReport check_offset_orthogonality(const EstimatorFamily& family) {
    ValidationReport report;
    report.name = "offset orthogonality (A b = A^T b = 0)";
    for (std::size_t i = 0; i < family.size(); ++i) {
        const AffineEstimator& est = family[i];
        double v = 0.0;
        if (!est.has_zero_offset()) {
            if (const auto* d = est.diagonal_form()) {
                v = max_abs(Vector(d->weights.cwiseProduct(analyze(d->basis, d->offset))));
            } else {
                const Matrix& a = est.dense_form()->matrix;
                v = std::max(max_abs(Vector(a * est.offset())), max_abs(Vector(a.transpose() * est.offset())));
            }
        }
        report.max_offset_violation = std::max(report.max_offset_violation, v);
        record(report, i, v);
    }
    return report;
}

}  // namespace ewagg
