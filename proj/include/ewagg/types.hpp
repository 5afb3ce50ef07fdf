#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ewagg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Raised when a linear-algebra precondition fails at run time
/// (non-PSD covariance, singular system).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when exponential weights cannot be normalized because every
/// prior-charged member has an infinite risk estimate.
class DegeneratePosteriorError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace ewagg
