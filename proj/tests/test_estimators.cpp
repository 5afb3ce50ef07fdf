#include <doctest.h>

#include <stdexcept>

#include "ewagg/estimators.hpp"
#include "ewagg/noise.hpp"
#include "ewagg/validators.hpp"
#include "helpers.hpp"

using namespace ewagg;

TEST_CASE("trivial affine maps") {
    const Vector y = Vector::LinSpaced(6, -1.0, 4.0);
    CHECK(AffineEstimator::dense(Matrix::Identity(6, 6)).apply(y) == y);
    const Vector c = Vector::Constant(6, 3.0);
    CHECK(AffineEstimator::dense(Matrix::Zero(6, 6), c).apply(y) == c);
    CHECK((AffineEstimator::diagonal(Basis::Dct, Vector::Zero(6), c).apply(y) - c).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(AffineEstimator::dense(Matrix::Zero(3, 4)), std::invalid_argument);
    CHECK_THROWS_AS(AffineEstimator::dense(Matrix::Zero(3, 3), Vector::Zero(2)), std::invalid_argument);
}

TEST_CASE("Pinsker filter on the constant direction") {
    const Vector a = pinsker_weights(4, 1.0, 2.0);
    CHECK(a[0] == doctest::Approx(0.5));
    CHECK(a.tail(3).isZero(0.0));
    const AffineEstimator est = AffineEstimator::diagonal(Basis::Dct, a);
    const Vector y = dct_inverse(Vector::Unit(4, 0));
    CHECK((est.apply(y) - 0.5 * y).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((est.matrix() * y - 0.5 * y).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Pinsker weights and family layout") {
    const Vector a = pinsker_weights(4, 2.0, 100.0);
    CHECK(a[0] == doctest::Approx(0.99));
    CHECK(a[1] == doctest::Approx(0.96));
    CHECK(a[2] == doctest::Approx(0.91));
    CHECK(a[3] == doctest::Approx(0.84));

    const auto alpha = geometric_grid(0.1, 100.0, 30);
    const auto w = geometric_grid(1.0, 256.0, 30);
    CHECK(alpha.front() == doctest::Approx(0.1));
    CHECK(alpha.back() == doctest::Approx(100.0));
    CHECK(alpha[1] / alpha[0] == doctest::Approx(alpha[29] / alpha[28]));
    const EstimatorFamily fam = pinsker_family(256, alpha, w);
    REQUIRE(fam.size() == 900);
    CHECK(fam.coordinates(31) == std::vector<double>{alpha[1], w[1]});
    CHECK(fam.common_diagonal_basis() == Basis::Dct);
    for (std::size_t m = 0; m < fam.size(); ++m) {
        const Vector& wts = fam[m].diagonal_form()->weights;
        CHECK(wts.minCoeff() >= 0.0);
        CHECK(wts.maxCoeff() <= 1.0);
        bool nonincreasing = true;
        for (Index k = 1; k < wts.size(); ++k) nonincreasing &= wts[k] <= wts[k - 1];
        CHECK(nonincreasing);
        CHECK(fam[m].has_zero_offset());
    }
}

TEST_CASE("diagonal and dense forms agree") {
    const Index n = 24;
    const Vector y = standard_normal(n, 4);
    const Vector b = standard_normal(n, 5);
    for (Basis basis : {Basis::Dct, Basis::Identity}) {
        const AffineEstimator diag = AffineEstimator::diagonal(basis, pinsker_weights(n, 0.8, 3.0), b);
        const AffineEstimator dense = AffineEstimator::dense(diag.matrix(), b);
        CHECK((diag.apply(y) - dense.apply(y)).cwiseAbs().maxCoeff() < 1e-10);
        if (basis == Basis::Dct) {
            const Matrix q = basis_matrix(Basis::Dct, n);
            const Matrix expected = q.transpose() * diag.diagonal_form()->weights.asDiagonal() * q;
            CHECK(test::max_abs(diag.matrix() - expected) < 1e-12);
        }
        CHECK(test::max_eigenvalue(diag.matrix()) <= 1.0 + 1e-10);
    }
}

TEST_CASE("apply is linear when b = 0") {
    const Index n = 32;
    const AffineEstimator est = AffineEstimator::diagonal(Basis::Dct, pinsker_weights(n, 1.5, 20.0));
    const AffineEstimator dense = AffineEstimator::dense(test::gaussian_matrix(n, n, 8));
    const Vector y1 = standard_normal(n, 1), y2 = standard_normal(n, 2);
    const double a = 0.3;
    for (const auto* e : {&est, &dense})
        CHECK((e->apply(a * y1 + (1 - a) * y2) - (a * e->apply(y1) + (1 - a) * e->apply(y2))).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("spectral cutoff, Tikhonov-Philipps and block projections") {
    CHECK(spectral_cutoff(4, 2).diagonal_form()->weights == (Vector(4) << 1, 1, 0, 0).finished());
    CHECK_THROWS_AS(spectral_cutoff(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(spectral_cutoff(4, 5), std::invalid_argument);

    const Vector t = tikhonov_philipps(4, 2.0, 2.0).diagonal_form()->weights;
    CHECK(t[0] == doctest::Approx(0.8));
    CHECK(t[1] == doctest::Approx(0.5));
    CHECK(t[2] == doctest::Approx(1.0 / 3.25));
    CHECK(t[3] == doctest::Approx(0.2));

    const std::vector<Index> bounds = {2, 5, 8};
    const bool all[] = {true, true};
    CHECK(block_projection(8, bounds, all).diagonal_form()->weights == Vector::Ones(8));
    const bool some[] = {false, true};
    CHECK(block_projection(8, bounds, some).diagonal_form()->weights == (Vector(8) << 1, 1, 0, 0, 0, 1, 1, 1).finished());
    const std::vector<Index> bad = {3, 2, 8};
    CHECK_THROWS_AS(block_projection(8, bad, all), std::invalid_argument);
    const std::vector<Index> short_end = {2, 5};
    const bool one[] = {true};
    CHECK_THROWS_AS(block_projection(8, short_end, one), std::invalid_argument);
    CHECK_THROWS_AS(block_projection(8, bounds, one), std::invalid_argument);
}

TEST_CASE("kernel ridge") {
    const Index n = 7;
    const AffineEstimator a = kernel_ridge(Matrix::Identity(n, n), 1.0);
    CHECK(test::max_abs(a.matrix() - Matrix::Identity(n, n) / (1.0 + n)) < 1e-14);

    Matrix k = test::random_psd(8, 21);
    k *= 100.0 / Eigen::SelfAdjointEigenSolver<Matrix>(k).eigenvalues().maxCoeff();
    CHECK(test::max_eigenvalue(kernel_ridge(k, 1e6).matrix()) < 1e-3);

    const Vector eig = Eigen::SelfAdjointEigenSolver<Matrix>(kernel_ridge(test::random_psd(8, 22), 0.05).matrix()).eigenvalues();
    CHECK(eig.minCoeff() >= -1e-12);
    CHECK(eig.maxCoeff() < 1.0);

    CHECK_THROWS_AS(kernel_ridge(Matrix::Identity(3, 3), 0.0), std::invalid_argument);
    Matrix notpsd = Matrix::Identity(3, 3);
    notpsd(0, 0) = -1.0;
    CHECK_THROWS(kernel_ridge(notpsd, 1.0));

    const std::vector<Matrix> kernels = {Matrix::Identity(4, 4), 2.0 * Matrix::Identity(4, 4)};
    const std::vector<double> lambdas = {1.0, 0.5};
    CHECK(test::max_abs(multiple_kernel(kernels, lambdas).matrix() - Matrix::Identity(4, 4) * (2.0 / 6.0)) < 1e-14);
}

TEST_CASE("moving averages") {
    CHECK(moving_average({{0}, {1}, {2}}).matrix() == Matrix::Identity(3, 3));
    const AffineEstimator all = moving_average({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
    const Vector out = all.apply((Vector(3) << 3, 0, 0).finished());
    CHECK((out - Vector::Ones(3)).cwiseAbs().maxCoeff() < 1e-15);
    std::vector<std::vector<Index>> nbrs(10);
    for (Index i = 0; i < 10; ++i)
        for (Index j = 0; j < 10; ++j)
            if ((i * 7 + j * 3) % 4 == 0 || i == j) nbrs[static_cast<std::size_t>(i)].push_back(j);
    const Matrix m = moving_average(nbrs).matrix();
    CHECK((m.rowwise().sum() - Vector::Ones(10)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_THROWS_AS(moving_average({{0}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(moving_average({{0}, {5}}), std::invalid_argument);
}

TEST_CASE("symmetrization") {
    const Matrix p = test::random_projector(10, 4, 31);
    CHECK(test::max_abs(symmetrize(AffineEstimator::dense(p)).matrix() - p) < 1e-12);
    CHECK(symmetrize(AffineEstimator::dense(Matrix::Zero(5, 5))).matrix().isZero(0.0));
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Matrix a = test::gaussian_matrix(6, 6, seed);
        const Matrix s = symmetrize(AffineEstimator::dense(a)).matrix();
        CHECK(test::max_abs(s - s.transpose()) < 1e-12);
        CHECK(test::max_eigenvalue(s) <= 1.0 + 1e-10);
    }
    for (Index n = 2; n <= 12; n += 5) {
        const Matrix q = test::random_projector(n, n / 2, 40 + n);
        const Matrix once = symmetrize(AffineEstimator::dense(q)).matrix();
        CHECK(test::max_abs(symmetrize(AffineEstimator::dense(once)).matrix() - once) < 1e-10);
    }
    const AffineEstimator d = AffineEstimator::diagonal(Basis::Dct, pinsker_weights(16, 1.0, 5.0));
    const AffineEstimator sd = symmetrize(d);
    REQUIRE(sd.is_diagonal());
    const Matrix a = d.matrix();
    CHECK(test::max_abs(sd.matrix() - (a + a.transpose() - a.transpose() * a)) < 1e-12);
}

TEST_CASE("two-block family") {
    const double ag[] = {0.5, 1.0};
    const double bg[] = {0.0, 0.25};
    const Index kg[] = {1, 3};
    const EstimatorFamily fam = two_block_family(4, ag, bg, kg);
    CHECK(fam.size() == 8);
    bool found = false;
    for (std::size_t m = 0; m < fam.size(); ++m)
        if (fam.coordinates(m) == std::vector<double>{0.5, 0.25, 3.0}) {
            CHECK(fam[m].diagonal_form()->weights == (Vector(4) << 0.5, 0.5, 0.5, 0.25).finished());
            found = true;
        }
    CHECK(found);
}

TEST_CASE("validators") {
    const auto alpha = geometric_grid(0.1, 100.0, 6);
    const auto w = geometric_grid(1.0, 64.0, 6);
    const EstimatorFamily pinsker = pinsker_family(64, alpha, w);
    CHECK(validate_setting1(pinsker, Covariance::scalar(64, 0.1)).passed);
    CHECK(validate_setting2(pinsker).passed);

    Vector var(64);
    for (Index i = 0; i < 64; ++i) var[i] = 0.05 + 0.01 * (i % 5);
    const double id_alpha[] = {1.0};
    const EstimatorFamily id_pinsker = pinsker_family(64, id_alpha, w, Basis::Identity);
    CHECK(validate_setting1(id_pinsker, Covariance::diagonal(var)).passed);

    const AffineEstimator a = AffineEstimator::dense(symmetrize(AffineEstimator::dense(test::gaussian_matrix(6, 6, 1))).matrix());
    const AffineEstimator b = AffineEstimator::dense(symmetrize(AffineEstimator::dense(test::gaussian_matrix(6, 6, 2))).matrix());
    const ValidationReport bad = validate_setting1(EstimatorFamily({a, b}), Covariance::scalar(6, 1.0));
    CHECK_FALSE(bad.passed);
    CHECK(bad.max_commutator > 1e-3);
    REQUIRE(bad.worst_pair.has_value());
    CHECK(*bad.worst_pair == std::pair<std::size_t, std::size_t>{0, 1});

    const EstimatorFamily projectors({AffineEstimator::dense(test::random_projector(8, 3, 5)),
                                      AffineEstimator::dense(test::random_projector(8, 5, 6)), spectral_cutoff(8, 4)});
    const ValidationReport c = check_condition_C(projectors, Covariance::scalar(8, 0.3));
    CHECK(c.passed);
    CHECK(std::abs(c.max_trace_gap) < 1e-12);

    const ValidationReport notc = check_condition_C(pinsker, Covariance::scalar(64, 0.1));
    CHECK_FALSE(notc.passed);
    CHECK(notc.max_trace_gap > 0.0);

    const EstimatorFamily offset({AffineEstimator::diagonal(Basis::Dct, pinsker_weights(8, 1.0, 3.0), Vector::Ones(8))});
    CHECK_FALSE(validate_setting1(offset, Covariance::scalar(8, 1.0)).passed);
    CHECK_FALSE(validate_setting2(offset).passed);
    CHECK_FALSE(check_offset_orthogonality(offset).passed);
    const EstimatorFamily orth({AffineEstimator::diagonal(Basis::Dct, spectral_cutoff(8, 3).diagonal_form()->weights,
                                                          synthesize(Basis::Dct, Vector::Unit(8, 6)))});
    CHECK(validate_setting2(orth).passed);
    CHECK(check_offset_orthogonality(orth).passed);

    const EstimatorFamily expanding({AffineEstimator::dense(1.5 * Matrix::Identity(4, 4))});
    const ValidationReport exp = validate_setting2(expanding);
    CHECK_FALSE(exp.passed);
    CHECK(exp.min_eigenvalue == doctest::Approx(-0.5));
}

TEST_CASE("family view fast path matches direct application") {
    const auto alpha = geometric_grid(0.5, 4.0, 3);
    const auto w = geometric_grid(2.0, 32.0, 3);
    const EstimatorFamily fam = pinsker_family(32, alpha, w);
    const Vector y = standard_normal(32, 77);
    const FamilyView view(fam, y);
    CHECK(view.uses_fast_path());
    for (std::size_t m = 0; m < fam.size(); ++m)
        CHECK((view.from_working(view.estimate(m)) - fam[m].apply(y)).cwiseAbs().maxCoeff() < 1e-12);
    const EstimatorFamily mixed({fam[0], AffineEstimator::dense(fam[1].matrix())});
    const FamilyView slow(mixed, y);
    CHECK_FALSE(slow.uses_fast_path());
    CHECK((slow.estimate(1) - fam[1].apply(y)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(EstimatorFamily({}), std::invalid_argument);
    CHECK_THROWS_AS(EstimatorFamily({spectral_cutoff(4, 1), spectral_cutoff(5, 1)}), std::invalid_argument);
}
