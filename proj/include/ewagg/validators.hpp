#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ewagg/estimators.hpp"
#include "ewagg/noise.hpp"

namespace ewagg {

inline constexpr double kValidationTolerance = 1e-8;

struct MemberCheck {
    std::size_t index = 0;
    bool passed = true;
    /// Largest violation magnitude among the conditions checked for this
    /// member (0 when everything holds).
    double violation = 0.0;
};

/// Outcome of checking a family against the hypotheses of a risk bound.
/// Violations are reported with magnitudes, never thrown.
struct ValidationReport {
    std::string name;
    bool passed = true;
    std::vector<MemberCheck> members;

    double max_asymmetry = 0.0;        // max ||A - A^T||_max
    double max_commutator = 0.0;       // max ||A B - B A||_max over pairs
    std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
    double min_eigenvalue = 0.0;       // setting 1: min eig(A Sigma + Sigma A); setting 2: min eig(I - A)
    double max_offset_violation = 0.0; // setting 1: ||b||; setting 2 / SEWA: ||A b||, ||A^T b||
    double max_trace_gap = 0.0;        // condition (C): max Tr(S A) - Tr(S A^T A)
    double max_idempotency_defect = 0.0;  // max Tr(A - A^2)
};

/// Symmetric, pairwise commuting members with A Sigma + Sigma A >= 0, b = 0.
ValidationReport validate_setting1(const EstimatorFamily& family, const Covariance& sigma);
/// Symmetric members with A <= I and A b = 0.
ValidationReport validate_setting2(const EstimatorFamily& family);
/// Tr(S A) <= Tr(S A^T A) for every member.
ValidationReport check_condition_C(const EstimatorFamily& family, const Covariance& sigma_hat);
/// A b = A^T b = 0 for every member (hypothesis of the symmetrized aggregate).
ValidationReport check_offset_orthogonality(const EstimatorFamily& family);

}  // namespace ewagg
