#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ewagg/aggregate.hpp"
#include "ewagg/estimators.hpp"
#include "ewagg/experiment.hpp"
#include "ewagg/partition.hpp"
#include "ewagg/risk.hpp"
#include "ewagg/signals.hpp"
#include "ewagg/transform.hpp"
#include "ewagg/validators.hpp"

using namespace ewagg;

namespace {

struct Outcome {
    bool passed = true;
    std::vector<std::string> details;

    void check(bool ok, const std::string& what) {
        passed &= ok;
        details.push_back(std::string(ok ? "ok   " : "MISS ") + what);
    }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

ExperimentConfig table_config(SignalName s, int n, bool smooth) {
    ExperimentConfig c;
    c.signal = s;
    c.n = n;
    c.smooth = smooth;
    return c;
}

const MethodStatistics& stat(const ExperimentReport& r, Method m) { return *r.find(m); }

double se(const MethodStatistics& s) { return s.sd / std::sqrt(static_cast<double>(s.raw.size())); }

void within_abs(Outcome& o, const std::string& cell, double got, double ref, double tol) {
    o.check(std::abs(got - ref) <= tol, cell + fmt(": %.3f vs %.3f (tol +-%.2f)", got, ref, tol));
}

void within_rel(Outcome& o, const std::string& cell, double got, double ref, double rel) {
    o.check(std::abs(got - ref) <= rel * std::abs(ref),
            cell + fmt(": %.3f vs %.3f (%+.1f%%, tol +-%.0f%%)", got, ref, 100.0 * (got - ref) / ref, 100.0 * rel));
}

Outcome nonsmooth_reference() {
    struct Row {
        SignalName s;
        double ewa, ure, bjs, st;
    };
    const Row rows[] = {{SignalName::Blocks, 0.051, 0.245, 9.617, 4.846},
                        {SignalName::Doppler, 0.062, 0.212, 13.233, 6.036},
                        {SignalName::HeaviSine, -0.060, 0.247, 1.155, 3.966}};
    Outcome o;
    for (const Row& row : rows) {
        const ExperimentReport r = run_experiment(table_config(row.s, 256, false));
        const std::string name(to_string(row.s));
        within_abs(o, name + " EWA", stat(r, Method::Ewa).mean, row.ewa, 0.10);
        within_abs(o, name + " URE", stat(r, Method::Ure).mean, row.ure, 0.10);
        within_rel(o, name + " BJS", stat(r, Method::Bjs).mean, row.bjs, 0.15);
        within_rel(o, name + " ST", stat(r, Method::St).mean, row.st, 0.15);
    }
    return o;
}

Outcome smooth_reference() {
    Outcome o;
    const ExperimentReport r = run_experiment(table_config(SignalName::Blocks, 256, true));
    within_abs(o, "smooth Blocks EWA", stat(r, Method::Ewa).mean, 0.387, 0.15);
    within_rel(o, "smooth Blocks ST", stat(r, Method::St).mean, 2.278, 0.15);
    return o;
}

Outcome ordering() {
    Outcome o;
    for (int n : {256, 512})
        for (SignalName s : all_signal_names()) {
            const ExperimentReport r = run_experiment(table_config(s, n, false));
            const auto &ewa = stat(r, Method::Ewa), &ure = stat(r, Method::Ure), &bjs = stat(r, Method::Bjs),
                       &st = stat(r, Method::St);
            const auto& best = bjs.mean <= st.mean ? bjs : st;
            const double se1 = std::hypot(se(ewa), se(ure));
            const double se2 = std::hypot(se(ure), se(best));
            const std::string cell = std::string(to_string(s)) + " n=" + std::to_string(n);
            o.check(ewa.mean <= ure.mean + 3.0 * se1,
                    cell + fmt(": EWA %.3f <= URE %.3f + 3SE (%.3f)", ewa.mean, ure.mean, 3.0 * se1));
            o.check(ure.mean <= best.mean + 3.0 * se2,
                    cell + fmt(": URE %.3f <= min(BJS,ST) %.3f + 3SE (%.3f)", ure.mean, best.mean, 3.0 * se2));
        }
    return o;
}

Outcome stein() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const Index n = 64;
    const double sigma = 0.33;
    const NoiseModel noise = NoiseModel::homoscedastic(n, sigma);
    const Vector f = make_test_signal("HeaviSine", n, false).values;
    const std::pair<double, double> params[] = {{0.5, 2.0}, {1.0, 8.0}, {2.0, 30.0}, {4.0, 1e4}, {0.2, 1.5}};
    const int draws = 10000;
    for (const auto& [alpha, w] : params) {
        const AffineEstimator est = AffineEstimator::diagonal(Basis::Dct, pinsker_weights(n, alpha, w));
        double s = 0.0, ss = 0.0;
        for (int r = 0; r < draws; ++r) {
            const double v = unbiased_risk(est, sample_observation(f, noise, replication_seed(4, r)), noise.covariance);
            s += v;
            ss += v * v;
        }
        const double mean = s / draws;
        const double sem = std::sqrt((ss / draws - mean * mean) / (draws - 1));
        const double exact = exact_risk(est, f, noise.covariance);
        o.check(std::abs(mean - exact) <= 4.0 * sem,
                fmt("alpha=%g w=%g: mean %.6f exact %.6f", alpha, w, mean, exact) + fmt(" (|z| = %.2f)", std::abs(mean - exact) / sem));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < 30.0, fmt("runtime %.2f s < 30 s", secs));
    return o;
}

Outcome oracle_inequality() {
    Outcome o;
    const Index n = 128;
    const double sigma = 0.33;
    const auto alpha = geometric_grid(0.1, 100.0, 5);
    const auto w = geometric_grid(1.0, static_cast<double>(n), 5);
    const EstimatorFamily fam = pinsker_family(n, alpha, w);
    const NoiseModel noise = NoiseModel::homoscedastic(n, sigma);
    for (SignalName s : all_signal_names()) {
        const Vector f = make_test_signal(s, static_cast<int>(n), false).values;
        const OracleBoundReport r = oracle_bound_check(fam, f, noise, 8.0 * sigma * sigma, Prior::uniform(fam.size()), 2000, 11);
        o.check(r.holds_within_3se && r.verified_regime,
                std::string(to_string(s)) + fmt(": E loss %.5f (SE %.5f) <= bound %.5f", r.lhs_mean, r.lhs_standard_error, r.rhs));
    }
    return o;
}

Outcome projector_identity() {
    Outcome o;
    const Index n = 64;
    const Covariance s = Covariance::scalar(n, 0.1089);
    const Vector y = make_test_signal("Doppler", n, false).values + 0.33 * standard_normal(n, 5);
    std::vector<AffineEstimator> members;
    for (Index k : {1, 5, 17, 64}) members.push_back(spectral_cutoff(n, k));
    const std::vector<Index> bounds = {4, 10, 30, 64};
    const bool bits[] = {false, true, false};
    members.push_back(block_projection(n, bounds, bits));
    members.push_back(spectral_cutoff(n, 9, Basis::Identity));
    bool exact = true;
    for (const auto& m : members) exact &= adjusted_risk(m, y, s) == unbiased_risk(m, y, s);
    o.check(exact, "diagonal projections: adjusted == unbiased bit for bit");
    const Vector g = standard_normal(n * 10, 6);
    const Matrix basis = Eigen::HouseholderQR<Matrix>(Eigen::Map<const Matrix>(g.data(), n, 10)).householderQ() * Matrix::Identity(n, 10);
    const AffineEstimator dense = AffineEstimator::dense(basis * basis.transpose());
    const double gap = std::abs(adjusted_risk(dense, y, s) - unbiased_risk(dense, y, s));
    o.check(gap < 1e-12, fmt("dense orthogonal projector: |adjusted - unbiased| = %.1e", gap));
    const AffineEstimator shrink = AffineEstimator::diagonal(Basis::Dct, pinsker_weights(n, 1.0, 20.0));
    o.check(adjusted_risk(shrink, y, s) > unbiased_risk(shrink, y, s), "non-projection filter: adjusted > unbiased");
    return o;
}

Outcome partition() {
    Outcome o;
    const std::vector<long long> scripted = {0, 3, 5, 8, 13, 23, 40, 68, 117, 200};
    const auto got = partition_boundaries(3, 10);
    std::ostringstream s;
    for (auto v : got) s << v << ' ';
    o.check(got == scripted, "nu = 3 boundaries: " + s.str());
    o.check(strict_floor(2.0) == 1 && strict_floor(2.5) == 2, "strict floor of integers steps down");
    o.check(build_partition(4, 3).boundaries() == std::vector<Index>{0, 3, 4}, "n = 4 truncates to {1..3}, {4}");
    return o;
}

Outcome limits() {
    Outcome o;
    const Index n = 128;
    const auto alpha = geometric_grid(0.1, 100.0, 8);
    const auto w = geometric_grid(1.0, static_cast<double>(n), 8);
    const EstimatorFamily fam = pinsker_family(n, alpha, w);
    const Covariance s = Covariance::scalar(n, 0.1089);
    const Vector y = make_test_signal("Blocks", n, false).values + 0.33 * standard_normal(n, 9);
    const Prior prior = Prior::weighted(Vector::LinSpaced(static_cast<Index>(fam.size()), 1.0, 5.0));

    const AggregateResult hot = ewa_aggregate(fam, y, 1e9, prior, RiskKind::Unbiased, s);
    const double dev = (hot.posterior.weights - prior.weights()).cwiseAbs().maxCoeff();
    o.check(dev < 1e-6, fmt("beta = 1e9: sup |posterior - prior| = %.1e", dev));

    const double beta[] = {8 * 0.1089};
    const GroupedResult g = gewa_aggregate(fam, y, BlockPartition::single(n), beta, prior, Setting::One, s);
    const AggregateResult e = ewa_aggregate(fam, y, beta[0], prior, RiskKind::Unbiased, s);
    const double gap = (g.estimate - e.estimate).cwiseAbs().maxCoeff();
    o.check(gap < 1e-12, fmt("J = 1 GEWA vs EWA: %.1e", gap));

    const Vector v = standard_normal(n, 10);
    const double rt = (dct_inverse(dct_forward(v)) - v).cwiseAbs().maxCoeff();
    const double pars = std::abs(dct_forward(v).squaredNorm() - empirical_norm_sq(v));
    o.check(rt < 1e-10 && pars < 1e-10, fmt("DCT round trip %.1e, Parseval %.1e", rt, pars));

    const double norm = std::abs(e.posterior.weights.sum() - 1.0);
    o.check(norm < 1e-12, fmt("posterior normalization %.1e", norm));

    Vector var(n);
    for (Index i = 0; i < n; ++i) var[i] = 0.05 + 0.01 * (i % 7);
    const double ia[] = {0.5, 2.0};
    const EstimatorFamily seq = pinsker_family(n, ia, w, Basis::Identity);
    const bool all_pass = validate_setting1(fam, s).passed && validate_setting1(seq, Covariance::diagonal(var)).passed &&
                          validate_setting2(fam).passed;
    o.check(all_pass, "validators pass on Pinsker families with diagonal Sigma");
    Matrix a = Matrix::Zero(4, 4), b = Matrix::Zero(4, 4);
    a(0, 0) = 1.0;
    b(0, 1) = b(1, 0) = 0.5;
    b(1, 1) = 1.0;
    const ValidationReport bad = validate_setting1(EstimatorFamily({AffineEstimator::dense(a), AffineEstimator::dense(b)}),
                                                   Covariance::scalar(4, 1.0));
    o.check(!bad.passed && bad.max_commutator > 0.0, fmt("non-commuting pair rejected (commutator %.2f)", bad.max_commutator));
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 reference values, non-smooth signals, n = 256", nonsmooth_reference},
        {"2 reference values, smooth Blocks, n = 256", smooth_reference},
        {"3 ordering EWA <= URE <= min(BJS, ST) + 3 SE", ordering},
        {"4 Stein unbiasedness", stein},
        {"5 discrete oracle inequality", oracle_inequality},
        {"6 projector identity", projector_identity},
        {"7 partition recursion", partition},
        {"8 degenerate and limit cases", limits},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        const Outcome o = run();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  criterion %s  (%.1f s)\n", o.passed ? "PASS" : "FAIL", name.c_str(), secs);
        for (const auto& d : o.details) std::printf("        %s\n", d.c_str());
        std::fflush(stdout);
        failed += o.passed ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
