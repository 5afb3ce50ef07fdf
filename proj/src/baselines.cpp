#include "ewagg/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ewagg/risk.hpp"
#include "ewagg/transform.hpp"

namespace ewagg {
namespace {

void require_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("noise level must be positive and finite");
}

std::map<std::string, double> member_params(const EstimatorFamily& family, std::size_t m) {
    std::map<std::string, double> params;
    const auto& names = family.coordinate_names();
    const auto& coords = family.coordinates(m);
    for (std::size_t i = 0; i < names.size() && i < coords.size(); ++i) params[names[i]] = coords[i];
    params["index"] = static_cast<double>(m);
    return params;
}

MethodResult select_member(const EstimatorFamily& family, const FamilyView& view, const Vector& scores,
                           double mse) {
    Index best = 0;
    for (Index m = 1; m < scores.size(); ++m)
        if (scores[m] < scores[best]) best = m;
    const auto idx = static_cast<std::size_t>(best);
    MethodResult r;
    r.estimate = view.from_working(view.estimate(idx));
    r.selected_params = member_params(family, idx);
    r.selected_label = family[idx].label();
    r.mse = mse;
    return r;
}

}  // namespace

double soft_threshold_sure_objective(const Vector& coeffs, double sigma, double t) {
    require_sigma(sigma);
    double sure = static_cast<double>(coeffs.size());
    for (Index k = 0; k < coeffs.size(); ++k) {
        const double x = std::abs(coeffs[k]) / sigma;
        if (x <= t) sure -= 2.0;
        sure += std::min(x, t) * std::min(x, t);
    }
    return sigma * sigma * sure;
}

MethodResult soft_threshold_sure(const Vector& y, double sigma, bool keep_constant) {
    require_sigma(sigma);
    const Vector c = analyze(Basis::Dct, y);
    const Index n = c.size();
    const Index first = keep_constant ? 1 : 0;
    const Index m = n - first;
    std::vector<double> a(static_cast<std::size_t>(m));
    for (Index k = first; k < n; ++k) a[static_cast<std::size_t>(k - first)] = std::abs(c[k]) / sigma;
    std::sort(a.begin(), a.end());
    std::vector<double> prefix(a.size() + 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) prefix[i + 1] = prefix[i] + a[i] * a[i];

    auto sure_at = [&](double t) {
        const auto count = static_cast<std::size_t>(std::upper_bound(a.begin(), a.end(), t) - a.begin());
        return static_cast<double>(m) - 2.0 * static_cast<double>(count) + prefix[count] +
               static_cast<double>(a.size() - count) * t * t;
    };
    double best_t = 0.0, best = sure_at(0.0);
    for (double t : a) {
        const double s = sure_at(t);
        if (s < best) {
            best = s;
            best_t = t;
        }
    }

    const double level = sigma * best_t;
    Vector shrunk = c;
    for (Index k = first; k < n; ++k) {
        const double mag = std::max(std::abs(c[k]) - level, 0.0);
        shrunk[k] = std::copysign(mag, c[k]);
    }
    MethodResult r;
    r.estimate = synthesize(Basis::Dct, shrunk);
    r.selected_params = {{"t", best_t}, {"threshold", level}, {"sure", sigma * sigma * best}};
    std::ostringstream label;
    label << "ST(t=" << best_t << ")";
    r.selected_label = label.str();
    return r;
}

std::vector<Index> james_stein_block_sizes(Index n) {
    if (n < 3) throw std::invalid_argument("block James-Stein needs n >= 3");
    const auto blocks = static_cast<Index>(std::floor(static_cast<double>(n) / std::log(static_cast<double>(n))));
    std::vector<Index> sizes;
    Index prev = 0;
    for (Index i = 1; i <= blocks; ++i) {
        const Index next = (i * n) / blocks;
        sizes.push_back(next - prev);
        prev = next;
    }
    return sizes;
}

MethodResult block_james_stein(const Vector& y, double sigma) {
    require_sigma(sigma);
    Vector c = analyze(Basis::Dct, y);
    const auto sizes = james_stein_block_sizes(c.size());
    Index begin = 0;
    double kept = 0.0;
    for (Index len : sizes) {
        auto seg = c.segment(begin, len);
        const double energy = seg.squaredNorm();
        const double factor =
            energy > 0.0 ? std::max(0.0, 1.0 - kBlockJamesSteinLambda * static_cast<double>(len) * sigma * sigma / energy)
                         : 0.0;
        seg *= factor;
        if (factor > 0.0) kept += 1.0;
        begin += len;
    }
    MethodResult r;
    r.estimate = synthesize(Basis::Dct, c);
    r.selected_params = {{"blocks", static_cast<double>(sizes.size())}, {"kept_blocks", kept}};
    r.selected_label = "BJS";
    return r;
}

MethodResult ure_select(const EstimatorFamily& family, const Vector& y, const Covariance& sigma_hat) {
    if (y.size() != family.dimension()) throw std::invalid_argument("ure_select: dimension mismatch");
    const FamilyView view(family, y);
    const double n = static_cast<double>(y.size());
    const double trace_s = sigma_hat.trace();
    Vector scores(static_cast<Index>(family.size()));
    for (std::size_t m = 0; m < family.size(); ++m)
        scores[static_cast<Index>(m)] = (view.data() - view.estimate(m)).squaredNorm() / n +
                                        2.0 * trace_product(sigma_hat, family[m]) / n - trace_s / n;
    return select_member(family, view, scores, std::numeric_limits<double>::quiet_NaN());
}

MethodResult oracle_select(const EstimatorFamily& family, const Vector& y, const Vector& f) {
    if (y.size() != family.dimension() || f.size() != family.dimension())
        throw std::invalid_argument("oracle_select: dimension mismatch");
    const FamilyView view(family, y);
    const Vector target = view.to_working(f);
    const double n = static_cast<double>(y.size());
    Vector losses(static_cast<Index>(family.size()));
    for (std::size_t m = 0; m < family.size(); ++m)
        losses[static_cast<Index>(m)] = (view.estimate(m) - target).squaredNorm() / n;
    return select_member(family, view, losses, losses.minCoeff());
}

}  // namespace ewagg
