#include "ewagg/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <Eigen/Eigenvalues>

namespace ewagg {
namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-10;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

Covariance Covariance::scalar(Index n, double variance) {
    if (n < 1) throw std::invalid_argument("covariance dimension must be >= 1");
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw NumericError("scalar covariance needs a finite variance >= 0, got " + std::to_string(variance));
    Covariance c;
    c.structure_ = Structure::Scalar;
    c.size_ = n;
    c.scalar_ = variance;
    c.diag_ = Vector::Constant(n, variance);
    c.spectral_norm_ = variance;
    return c;
}

Covariance Covariance::diagonal(Vector variances) {
    if (variances.size() < 1) throw std::invalid_argument("covariance dimension must be >= 1");
    for (Index i = 0; i < variances.size(); ++i) {
        if (!std::isfinite(variances[i]) || variances[i] < -kPsdTolerance)
            throw NumericError("diagonal covariance entry " + std::to_string(i) + " is not >= 0");
        variances[i] = std::max(variances[i], 0.0);
    }
    Covariance c;
    c.structure_ = Structure::Diagonal;
    c.size_ = variances.size();
    c.spectral_norm_ = variances.maxCoeff();
    c.diag_ = std::move(variances);
    return c;
}

Covariance Covariance::dense(Matrix m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw std::invalid_argument("covariance must be a non-empty square matrix");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale)
        throw std::invalid_argument("covariance matrix is not symmetric");
    m = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
    if (eig.info() != Eigen::Success) throw NumericError("eigendecomposition of covariance failed");
    const Vector& values = eig.eigenvalues();
    if (values.minCoeff() < -kPsdTolerance)
        throw NumericError("covariance is not positive semi-definite (eigenvalue " +
                           std::to_string(values.minCoeff()) + ")");
    const Vector root = values.cwiseMax(0.0).cwiseSqrt();
    Covariance c;
    c.structure_ = Structure::Dense;
    c.size_ = m.rows();
    c.diag_ = m.diagonal();
    c.spectral_norm_ = std::max(values.maxCoeff(), 0.0);
    c.sqrt_ = std::make_shared<const Matrix>(eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose());
    c.dense_ = std::make_shared<const Matrix>(std::move(m));
    return c;
}

Vector Covariance::diagonal_entries() const { return diag_; }

Matrix Covariance::to_dense() const {
    if (structure_ == Structure::Dense) return *dense_;
    return diag_.asDiagonal();
}

double Covariance::trace() const { return diag_.sum(); }

double Covariance::spectral_norm() const { return spectral_norm_; }

Covariance Covariance::block(Index begin, Index len) const {
    if (begin < 0 || len < 1 || begin + len > size_) throw std::invalid_argument("covariance block out of range");
    switch (structure_) {
        case Structure::Scalar: return scalar(len, scalar_);
        case Structure::Diagonal: return diagonal(diag_.segment(begin, len));
        case Structure::Dense: return dense(dense_->block(begin, begin, len, len));
    }
    return *this;
}

Vector Covariance::apply_sqrt(const Vector& z) const {
    if (z.size() != size_) throw std::invalid_argument("dimension mismatch in Covariance::apply_sqrt");
    switch (structure_) {
        case Structure::Scalar: return std::sqrt(scalar_) * z;
        case Structure::Diagonal: return diag_.cwiseSqrt().cwiseProduct(z);
        case Structure::Dense: return (*sqrt_) * z;
    }
    return z;
}

NoiseModel NoiseModel::homoscedastic(Index n, double sigma) {
    return from_covariance(Covariance::scalar(n, sigma * sigma));
}

NoiseModel NoiseModel::from_covariance(Covariance cov) {
    const double bound = cov.spectral_norm();
    return NoiseModel{std::move(cov), bound};
}

CovarianceEstimate CovarianceEstimate::known(const NoiseModel& noise) {
    return CovarianceEstimate{noise.covariance, Provenance::Exact};
}

ReplicateAverage average_replicates(const std::vector<Vector>& recordings) {
    const std::size_t count = recordings.size();
    if (count < 2) throw std::invalid_argument("replicate averaging needs at least two recordings");
    const Index n = recordings.front().size();
    Vector mean = Vector::Zero(n);
    for (const auto& z : recordings) {
        if (z.size() != n) throw std::invalid_argument("replicate recordings differ in length");
        mean += z;
    }
    mean /= static_cast<double>(count);
    Matrix scatter = Matrix::Zero(n, n);
    for (const auto& z : recordings) scatter.noalias() += (z - mean) * (z - mean).transpose();
    // Sigma_Z estimate is scatter / (N - 1); the mean has covariance Sigma_Z / N.
    const Matrix sigma_y = scatter / (static_cast<double>(count - 1) * static_cast<double>(count));
    return ReplicateAverage{mean, CovarianceEstimate{Covariance::dense(0.5 * (sigma_y + sigma_y.transpose())),
                                                     Provenance::ReplicateAveraged}};
}

std::uint64_t replication_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(splitmix64(base) ^ (index + 0x632BE59BD9B4E019ULL));
}

Vector standard_normal(Index n, std::uint64_t seed) {
    boost::random::mt19937_64 engine(seed);
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    Vector z(n);
    for (Index i = 0; i < n; ++i) z[i] = normal(engine);
    return z;
}

Vector sample_observation(const Vector& f, const NoiseModel& noise, std::uint64_t seed) {
    if (f.size() != noise.covariance.size())
        throw std::invalid_argument("signal and noise covariance dimensions differ");
    return f + noise.covariance.apply_sqrt(standard_normal(f.size(), seed));
}

Vector sample_observation(const Signal& f, const NoiseModel& noise, std::uint64_t seed) {
    return sample_observation(f.values, noise, seed);
}

}  // namespace ewagg
