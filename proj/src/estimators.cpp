#include "ewagg/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace ewagg {
namespace {

void require_vector_size(const Vector& v, Index n, const char* what) {
    if (v.size() != n)
        throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(n) + ", got " +
                                    std::to_string(v.size()));
}

std::string format_label(const char* prefix, std::initializer_list<std::pair<const char*, double>> params) {
    std::ostringstream os;
    os << prefix << '(';
    bool first = true;
    for (const auto& [name, value] : params) {
        if (!first) os << ',';
        os << name << '=' << value;
        first = false;
    }
    os << ')';
    return os.str();
}

void require_psd_kernel(const Matrix& k, const char* what) {
    if (k.rows() != k.cols() || k.rows() < 1) throw std::invalid_argument(std::string(what) + ": kernel must be square");
    const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
    if ((k - k.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument(std::string(what) + ": kernel is not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(k, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10 * scale)
        throw std::invalid_argument(std::string(what) + ": kernel is not positive semi-definite");
}

// S (S + c I)^{-1} = (S + c I)^{-1} S for symmetric S and c > 0.
Matrix shrink_towards_zero(const Matrix& s, double c, const char* what) {
    const Index n = s.rows();
    Matrix m = s + c * Matrix::Identity(n, n);
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) throw NumericError(std::string(what) + ": singular system");
    Matrix a = llt.solve(s);
    if (!a.allFinite()) throw NumericError(std::string(what) + ": singular system");
    return 0.5 * (a + a.transpose());
}

}  // namespace

AffineEstimator AffineEstimator::dense(Matrix a, Vector b, std::string label) {
    if (a.rows() != a.cols() || a.rows() < 1) throw std::invalid_argument("affine estimator matrix must be square");
    require_vector_size(b, a.rows(), "affine estimator offset");
    AffineEstimator e;
    e.form_ = DenseForm{std::move(a), std::move(b)};
    e.label_ = std::move(label);
    return e;
}

AffineEstimator AffineEstimator::dense(Matrix a, std::string label) {
    const Index n = a.rows();
    return dense(std::move(a), Vector::Zero(n), std::move(label));
}

AffineEstimator AffineEstimator::diagonal(Basis basis, Vector weights, Vector b, std::string label) {
    if (weights.size() < 1) throw std::invalid_argument("diagonal filter needs at least one weight");
    require_vector_size(b, weights.size(), "diagonal filter offset");
    AffineEstimator e;
    e.form_ = DiagonalForm{basis, std::move(weights), std::move(b)};
    e.label_ = std::move(label);
    return e;
}

AffineEstimator AffineEstimator::diagonal(Basis basis, Vector weights, std::string label) {
    const Index n = weights.size();
    return diagonal(basis, std::move(weights), Vector::Zero(n), std::move(label));
}

Index AffineEstimator::size() const { return offset().size(); }

const Vector& AffineEstimator::offset() const {
    return std::visit([](const auto& f) -> const Vector& { return f.offset; }, form_);
}

bool AffineEstimator::has_zero_offset() const { return offset().isZero(0.0); }

Matrix AffineEstimator::matrix() const {
    if (const auto* d = dense_form()) return d->matrix;
    const auto& diag = std::get<DiagonalForm>(form_);
    if (diag.basis == Basis::Identity) return diag.weights.asDiagonal();
    const Matrix q = basis_matrix(diag.basis, diag.weights.size());
    return q.transpose() * diag.weights.asDiagonal() * q;
}

Vector AffineEstimator::apply(const Vector& y) const {
    require_vector_size(y, size(), "apply");
    if (const auto* d = dense_form()) return d->matrix * y + d->offset;
    const auto& diag = std::get<DiagonalForm>(form_);
    return synthesize(diag.basis, diag.weights.cwiseProduct(analyze(diag.basis, y))) + diag.offset;
}

EstimatorFamily::EstimatorFamily(std::vector<AffineEstimator> members, std::vector<std::string> coordinate_names,
                                 std::vector<std::vector<double>> coordinates)
    : members_(std::move(members)),
      coordinate_names_(std::move(coordinate_names)),
      coordinates_(std::move(coordinates)) {
    if (members_.empty()) throw std::invalid_argument("estimator family must not be empty");
    const Index n = members_.front().size();
    for (const auto& m : members_)
        if (m.size() != n) throw std::invalid_argument("estimator family members differ in dimension");
    if (!coordinates_.empty() && coordinates_.size() != members_.size())
        throw std::invalid_argument("estimator family: one coordinate tuple per member required");
}

const std::vector<double>& EstimatorFamily::coordinates(std::size_t i) const {
    static const std::vector<double> empty;
    return coordinates_.empty() ? empty : coordinates_.at(i);
}

std::optional<Basis> EstimatorFamily::common_diagonal_basis() const {
    const auto* first = members_.front().diagonal_form();
    if (first == nullptr) return std::nullopt;
    for (const auto& m : members_) {
        const auto* d = m.diagonal_form();
        if (d == nullptr || d->basis != first->basis) return std::nullopt;
    }
    return first->basis;
}

FamilyView::FamilyView(const EstimatorFamily& family, const Vector& y) : family_(&family) {
    require_vector_size(y, family.dimension(), "family view data");
    if (auto basis = family.common_diagonal_basis()) {
        basis_ = *basis;
        fast_ = true;
    }
    coeffs_ = analyze(basis_, y);
}

Vector FamilyView::to_working(const Vector& v) const { return analyze(basis_, v); }
Vector FamilyView::from_working(const Vector& c) const { return synthesize(basis_, c); }

Vector FamilyView::estimate(std::size_t m) const {
    const AffineEstimator& est = (*family_)[m];
    if (!fast_) return est.apply(coeffs_);
    const auto* d = est.diagonal_form();
    Vector c = d->weights.cwiseProduct(coeffs_);
    if (!est.has_zero_offset()) c += analyze(basis_, d->offset);
    return c;
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
    if (count < 1) throw std::invalid_argument("grid needs at least one point");
    if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("geometric grid needs 0 < lo <= hi");
    std::vector<double> g(static_cast<std::size_t>(count));
    if (count == 1) {
        g[0] = lo;
        return g;
    }
    const double ratio = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i);
    g.back() = hi;
    return g;
}

Vector pinsker_weights(Index n, double alpha, double w) {
    if (!(alpha > 0.0) || !(w > 0.0)) throw std::invalid_argument("Pinsker filter needs alpha > 0 and w > 0");
    Vector a(n);
    for (Index k = 0; k < n; ++k) a[k] = std::max(0.0, 1.0 - std::pow(static_cast<double>(k + 1), alpha) / w);
    return a;
}

EstimatorFamily pinsker_family(Index n, std::span<const double> alpha_grid, std::span<const double> w_grid,
                               Basis basis) {
    if (alpha_grid.empty() || w_grid.empty()) throw std::invalid_argument("Pinsker grids must be non-empty");
    std::vector<AffineEstimator> members;
    std::vector<std::vector<double>> coords;
    members.reserve(alpha_grid.size() * w_grid.size());
    for (double alpha : alpha_grid)
        for (double w : w_grid) {
            members.push_back(AffineEstimator::diagonal(basis, pinsker_weights(n, alpha, w),
                                                        format_label("pinsker", {{"alpha", alpha}, {"w", w}})));
            coords.push_back({alpha, w});
        }
    return EstimatorFamily(std::move(members), {"alpha", "w"}, std::move(coords));
}

AffineEstimator spectral_cutoff(Index n, Index cutoff, Basis basis) {
    if (cutoff < 1 || cutoff > n)
        throw std::invalid_argument("spectral cutoff must lie in 1..n, got " + std::to_string(cutoff));
    Vector a = Vector::Zero(n);
    a.head(cutoff).setOnes();
    return AffineEstimator::diagonal(basis, std::move(a), format_label("cutoff", {{"k", double(cutoff)}}));
}

AffineEstimator block_projection(Index n, std::span<const Index> boundaries, std::span<const bool> bits,
                                 Basis basis) {
    if (boundaries.empty()) throw std::invalid_argument("block projection needs at least one boundary");
    if (bits.size() + 1 != boundaries.size())
        throw std::invalid_argument("block projection needs exactly one bit per block after the first");
    if (boundaries.front() < 1 || boundaries.back() != n)
        throw std::invalid_argument("block boundaries must start >= 1 and end at n");
    for (std::size_t j = 1; j < boundaries.size(); ++j)
        if (boundaries[j] <= boundaries[j - 1])
            throw std::invalid_argument("block boundaries must be strictly increasing");
    Vector a = Vector::Zero(n);
    a.head(boundaries.front()).setOnes();
    std::string label = "blocks(";
    for (std::size_t j = 0; j < bits.size(); ++j) {
        label += bits[j] ? '1' : '0';
        if (bits[j]) a.segment(boundaries[j], boundaries[j + 1] - boundaries[j]).setOnes();
    }
    label += ')';
    return AffineEstimator::diagonal(basis, std::move(a), std::move(label));
}

AffineEstimator tikhonov_philipps(Index n, double w, double alpha, Basis basis) {
    if (!(w > 0.0) || !(alpha > 0.0)) throw std::invalid_argument("Tikhonov-Philipps needs w > 0 and alpha > 0");
    Vector a(n);
    for (Index k = 0; k < n; ++k) a[k] = 1.0 / (1.0 + std::pow(static_cast<double>(k + 1) / w, alpha));
    return AffineEstimator::diagonal(basis, std::move(a), format_label("tikhonov", {{"w", w}, {"alpha", alpha}}));
}

AffineEstimator kernel_ridge(const Matrix& kernel, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("kernel ridge needs lambda > 0");
    require_psd_kernel(kernel, "kernel_ridge");
    const double n = static_cast<double>(kernel.rows());
    return AffineEstimator::dense(shrink_towards_zero(kernel, n * lambda, "kernel_ridge"),
                                  format_label("kernel_ridge", {{"lambda", lambda}}));
}

AffineEstimator multiple_kernel(std::span<const Matrix> kernels, std::span<const double> lambdas) {
    if (kernels.empty() || kernels.size() != lambdas.size())
        throw std::invalid_argument("multiple_kernel needs one weight per kernel");
    const Index n = kernels.front().rows();
    Matrix s = Matrix::Zero(n, n);
    for (std::size_t m = 0; m < kernels.size(); ++m) {
        if (kernels[m].rows() != n) throw std::invalid_argument("multiple_kernel: kernels differ in size");
        if (!(lambdas[m] >= 0.0)) throw std::invalid_argument("multiple_kernel: weights must be >= 0");
        require_psd_kernel(kernels[m], "multiple_kernel");
        s += lambdas[m] * kernels[m];
    }
    return AffineEstimator::dense(shrink_towards_zero(s, static_cast<double>(n), "multiple_kernel"), "multiple_kernel");
}

AffineEstimator moving_average(const std::vector<std::vector<Index>>& neighborhoods) {
    const Index n = static_cast<Index>(neighborhoods.size());
    if (n < 1) throw std::invalid_argument("moving average needs at least one node");
    Matrix a = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto& v = neighborhoods[static_cast<std::size_t>(i)];
        if (v.empty()) throw std::invalid_argument("moving average: empty neighbourhood at node " + std::to_string(i));
        for (Index j : v) {
            if (j < 0 || j >= n) throw std::invalid_argument("moving average: neighbour index out of range");
            a(i, j) = 1.0;
        }
        a.row(i) /= a.row(i).sum();
    }
    return AffineEstimator::dense(std::move(a), "moving_average");
}

EstimatorFamily two_block_family(Index n, std::span<const double> a_grid, std::span<const double> b_grid,
                                 std::span<const Index> k_grid, Basis basis) {
    if (a_grid.empty() || b_grid.empty() || k_grid.empty())
        throw std::invalid_argument("two-block family grids must be non-empty");
    std::vector<AffineEstimator> members;
    std::vector<std::vector<double>> coords;
    for (double a : a_grid)
        for (double b : b_grid)
            for (Index k : k_grid) {
                if (k < 1 || k > n) throw std::invalid_argument("two-block split must lie in 1..n");
                Vector w = Vector::Constant(n, b);
                w.head(k).setConstant(a);
                members.push_back(
                    AffineEstimator::diagonal(basis, std::move(w), format_label("two_block", {{"a", a}, {"b", b}, {"k", double(k)}})));
                coords.push_back({a, b, static_cast<double>(k)});
            }
    return EstimatorFamily(std::move(members), {"a", "b", "k"}, std::move(coords));
}

AffineEstimator symmetrize(const AffineEstimator& est) {
    const std::string label = "sym:" + est.label();
    if (const auto* d = est.diagonal_form()) {
        Vector w = (2.0 * d->weights.array() - d->weights.array().square()).matrix();
        return AffineEstimator::diagonal(d->basis, std::move(w), d->offset, label);
    }
    const Matrix& a = est.dense_form()->matrix;
    Matrix s = a + a.transpose() - a.transpose() * a;
    s = 0.5 * (s + s.transpose());
    return AffineEstimator::dense(std::move(s), est.offset(), label);
}

EstimatorFamily symmetrize(const EstimatorFamily& family) {
    std::vector<AffineEstimator> members;
    members.reserve(family.size());
    std::vector<std::vector<double>> coords;
    for (std::size_t i = 0; i < family.size(); ++i) {
        members.push_back(symmetrize(family[i]));
        if (!family.coordinates(i).empty()) coords.push_back(family.coordinates(i));
    }
    return EstimatorFamily(std::move(members), family.coordinate_names(), std::move(coords));
}

}  // namespace ewagg
