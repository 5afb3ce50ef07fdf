#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "ewagg/estimators.hpp"
#include "ewagg/noise.hpp"

namespace ewagg {

struct MethodResult {
    Vector estimate;
    std::map<std::string, double> selected_params;
    std::string selected_label;
    double mse = std::numeric_limits<double>::quiet_NaN();
};

/// Threshold level of the universal shrinkage constant used by block James-Stein.
inline constexpr double kBlockJamesSteinLambda = 4.50524;

/// Soft thresholding of the DCT coefficients with the SURE-minimizing
/// threshold. Works on orthonormal coefficients (noise sd sigma); candidate
/// thresholds are 0 and |c_k| / sigma, ties broken toward the smaller one.
/// With `keep_constant` the k = 1 coefficient is passed through and SURE
/// runs over the remaining n - 1.
MethodResult soft_threshold_sure(const Vector& y, double sigma, bool keep_constant = true);

/// SURE(t) for soft thresholding orthonormal coefficients at level sigma t.
double soft_threshold_sure_objective(const Vector& coeffs, double sigma, double t);

/// floor(n / log n) contiguous blocks, sizes differing by at most one.
std::vector<Index> james_stein_block_sizes(Index n);

/// Blockwise positive-part James-Stein on the DCT coefficients.
MethodResult block_james_stein(const Vector& y, double sigma);

/// Member with the smallest unbiased risk estimate; ties go to the lowest index.
MethodResult ure_select(const EstimatorFamily& family, const Vector& y, const Covariance& sigma_hat);

/// Member with the smallest realized loss ||f_hat - f||_n^2 for this Y.
MethodResult oracle_select(const EstimatorFamily& family, const Vector& y, const Vector& f);

}  // namespace ewagg
