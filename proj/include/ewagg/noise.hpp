#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ewagg/signals.hpp"
#include "ewagg/types.hpp"

namespace ewagg {

/// Symmetric PSD covariance matrix with scalar (sigma^2 I) and diagonal
/// fast paths.
class Covariance {
public:
    enum class Structure { Scalar, Diagonal, Dense };

    static Covariance scalar(Index n, double variance);
    static Covariance diagonal(Vector variances);
    /// Throws std::invalid_argument if `m` is not square or not symmetric
    /// within 1e-12, NumericError if an eigenvalue is below -1e-10.
    static Covariance dense(Matrix m);

    Index size() const { return size_; }
    Structure structure() const { return structure_; }
    bool is_scalar() const { return structure_ == Structure::Scalar; }
    /// True for scalar and diagonal structures (diagonal in the identity basis).
    bool is_diagonal() const { return structure_ != Structure::Dense; }

    /// Only meaningful for Scalar.
    double scalar_variance() const { return scalar_; }
    /// Diagonal entries; valid for every structure.
    Vector diagonal_entries() const;
    Matrix to_dense() const;

    double trace() const;
    /// Largest eigenvalue |||Sigma|||.
    double spectral_norm() const;

    /// Principal sub-block [begin, begin + len).
    Covariance block(Index begin, Index len) const;

    /// Sigma^{1/2} z
    Vector apply_sqrt(const Vector& z) const;

private:
    Structure structure_ = Structure::Scalar;
    Index size_ = 0;
    double scalar_ = 0.0;
    Vector diag_;
    std::shared_ptr<const Matrix> dense_;
    std::shared_ptr<const Matrix> sqrt_;
    double spectral_norm_ = 0.0;
};

struct NoiseModel {
    Covariance covariance;
    double spectral_norm_bound = 0.0;

    static NoiseModel homoscedastic(Index n, double sigma);
    static NoiseModel from_covariance(Covariance cov);
};

enum class Provenance { Exact, ReplicateAveraged, Synthetic };

struct CovarianceEstimate {
    Covariance matrix;
    Provenance provenance = Provenance::Exact;

    /// Noise known: Sigma_hat = Sigma.
    static CovarianceEstimate known(const NoiseModel& noise);
};

/// N >= 2 i.i.d. recordings Z_1..Z_N of the same signal. The data vector is
/// their average and the covariance estimate is the unbiased sample
/// covariance divided by N.
struct ReplicateAverage {
    Vector observation;
    CovarianceEstimate covariance;
};
ReplicateAverage average_replicates(const std::vector<Vector>& recordings);

/// Y = f + Sigma^{1/2} z with z standard Gaussian drawn from `seed`.
Vector sample_observation(const Signal& f, const NoiseModel& noise, std::uint64_t seed);
Vector sample_observation(const Vector& f, const NoiseModel& noise, std::uint64_t seed);

/// Seed for replication `index` of an experiment seeded with `base`.
/// Independent of execution order.
std::uint64_t replication_seed(std::uint64_t base, std::uint64_t index);

/// n standard normal draws from a portable generator.
Vector standard_normal(Index n, std::uint64_t seed);

}  // namespace ewagg
