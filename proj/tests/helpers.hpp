#pragma once

#include "ewagg/noise.hpp"
#include "ewagg/types.hpp"

namespace test {

inline ewagg::Matrix gaussian_matrix(ewagg::Index rows, ewagg::Index cols, std::uint64_t seed) {
    const ewagg::Vector z = ewagg::standard_normal(rows * cols, seed);
    return Eigen::Map<const ewagg::Matrix>(z.data(), rows, cols);
}

inline ewagg::Matrix random_psd(ewagg::Index n, std::uint64_t seed) {
    const ewagg::Matrix g = gaussian_matrix(n, n, seed);
    return g * g.transpose();
}

/// Orthogonal projector onto the span of `rank` random directions.
inline ewagg::Matrix random_projector(ewagg::Index n, ewagg::Index rank, std::uint64_t seed) {
    const ewagg::Matrix g = gaussian_matrix(n, rank, seed);
    const Eigen::HouseholderQR<ewagg::Matrix> qr(g);
    const ewagg::Matrix q = qr.householderQ() * ewagg::Matrix::Identity(n, rank);
    return q * q.transpose();
}

inline double max_abs(const ewagg::Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double max_eigenvalue(const ewagg::Matrix& sym) {
    return Eigen::SelfAdjointEigenSolver<ewagg::Matrix>(0.5 * (sym + sym.transpose())).eigenvalues().maxCoeff();
}

}  // namespace test
