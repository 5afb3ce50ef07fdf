#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ewagg/transform.hpp"
#include "ewagg/types.hpp"

namespace ewagg {

struct DenseForm {
    Matrix matrix;
    Vector offset;
};

/// f_hat = Q^T diag(weights) Q Y + offset, Q the orthonormal basis matrix.
struct DiagonalForm {
    Basis basis = Basis::Dct;
    Vector weights;
    Vector offset;
};

/// Affine estimator f_hat = A Y + b with deterministic A and b.
class AffineEstimator {
public:
    static AffineEstimator dense(Matrix a, Vector b, std::string label = {});
    static AffineEstimator dense(Matrix a, std::string label = {});
    static AffineEstimator diagonal(Basis basis, Vector weights, Vector b, std::string label = {});
    static AffineEstimator diagonal(Basis basis, Vector weights, std::string label = {});

    Index size() const;
    const std::string& label() const { return label_; }

    bool is_diagonal() const { return std::holds_alternative<DiagonalForm>(form_); }
    const DiagonalForm* diagonal_form() const { return std::get_if<DiagonalForm>(&form_); }
    const DenseForm* dense_form() const { return std::get_if<DenseForm>(&form_); }

    const Vector& offset() const;
    bool has_zero_offset() const;

    /// Dense n x n expansion of A.
    Matrix matrix() const;

    Vector apply(const Vector& y) const;

private:
    std::variant<DenseForm, DiagonalForm> form_;
    std::string label_;
};

inline Vector apply(const AffineEstimator& est, const Vector& y) { return est.apply(y); }

/// Ordered, non-empty list of estimators sharing n, with the grid
/// coordinates of each member (e.g. (alpha, w) for Pinsker filters).
class EstimatorFamily {
public:
    EstimatorFamily(std::vector<AffineEstimator> members,
                    std::vector<std::string> coordinate_names = {},
                    std::vector<std::vector<double>> coordinates = {});

    std::size_t size() const { return members_.size(); }
    Index dimension() const { return members_.front().size(); }
    const AffineEstimator& operator[](std::size_t i) const { return members_[i]; }
    const std::vector<AffineEstimator>& members() const { return members_; }
    const std::vector<std::string>& coordinate_names() const { return coordinate_names_; }
    /// Empty when the family was built without grid coordinates.
    const std::vector<double>& coordinates(std::size_t i) const;

    /// Basis shared by every member if all are diagonal filters in one basis.
    std::optional<Basis> common_diagonal_basis() const;

private:
    std::vector<AffineEstimator> members_;
    std::vector<std::string> coordinate_names_;
    std::vector<std::vector<double>> coordinates_;
};

/// Member estimates expressed in a working orthonormal basis: the shared
/// diagonal basis when there is one (so each member costs O(n)), the
/// identity otherwise. Squared norms are basis-invariant, so losses and
/// residuals may be computed directly on these coordinates.
class FamilyView {
public:
    FamilyView(const EstimatorFamily& family, const Vector& y);

    Basis working_basis() const { return basis_; }
    bool uses_fast_path() const { return fast_; }
    const Vector& data() const { return coeffs_; }
    Vector to_working(const Vector& v) const;
    Vector from_working(const Vector& c) const;
    /// Estimate of member m in working coordinates.
    Vector estimate(std::size_t m) const;

private:
    const EstimatorFamily* family_;
    Basis basis_ = Basis::Identity;
    bool fast_ = false;
    Vector coeffs_;
};

/// Geometric grid of `count` points from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int count);

/// a_k = (1 - k^alpha / w)_+, k = 1..n
Vector pinsker_weights(Index n, double alpha, double w);
/// One member per (alpha, w) pair, alpha-major order.
EstimatorFamily pinsker_family(Index n, std::span<const double> alpha_grid,
                               std::span<const double> w_grid, Basis basis = Basis::Dct);

/// a_k = 1(k <= cutoff)
AffineEstimator spectral_cutoff(Index n, Index cutoff, Basis basis = Basis::Dct);

/// `boundaries` are 1-based frequencies w_1 < ... < w_m = n. The leading
/// block {1..w_1} is always kept; block {w_j+1 .. w_{j+1}} is kept when
/// bits[j-1] is set. bits.size() must be m - 1.
AffineEstimator block_projection(Index n, std::span<const Index> boundaries,
                                 std::span<const bool> bits, Basis basis = Basis::Dct);

/// a_k = 1 / (1 + (k/w)^alpha)
AffineEstimator tikhonov_philipps(Index n, double w, double alpha, Basis basis = Basis::Dct);

/// A = K (K + n lambda I)^{-1}
AffineEstimator kernel_ridge(const Matrix& kernel, double lambda);

/// A = (sum_m lambda_m K_m) (sum_m lambda_m K_m + n I)^{-1}
AffineEstimator multiple_kernel(std::span<const Matrix> kernels, std::span<const double> lambdas);

/// Row-stochastic averaging over neighbourhoods: a_ij = 1(j in V_i) / |V_i|.
AffineEstimator moving_average(const std::vector<std::vector<Index>>& neighborhoods);

/// Two-block shrinkage diag(a 1(i<=k) + b 1(i>k)), one member per (a, b, k).
EstimatorFamily two_block_family(Index n, std::span<const double> a_grid,
                                 std::span<const double> b_grid, std::span<const Index> k_grid,
                                 Basis basis = Basis::Identity);

/// A + A^T - A^T A with the same offset. Diagonal filters stay diagonal
/// with weights 2a - a^2.
AffineEstimator symmetrize(const AffineEstimator& est);
EstimatorFamily symmetrize(const EstimatorFamily& family);

}  // namespace ewagg
