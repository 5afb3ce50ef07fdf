#include "ewagg/prior.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ewagg {

Prior::Prior(Kind kind, Vector weights) : kind_(kind), weights_(std::move(weights)) {
    if (weights_.size() == 0) throw std::invalid_argument("prior must have at least one atom");
    for (Index i = 0; i < weights_.size(); ++i)
        if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i]))
            throw std::invalid_argument("prior weight " + std::to_string(i) + " is negative or not finite");
    const double total = weights_.sum();
    if (!(total > 0.0)) throw std::invalid_argument("prior has no mass");
    weights_ /= total;
}

Prior Prior::uniform(std::size_t size) {
    return Prior(Kind::DiscreteUniform, Vector::Constant(static_cast<Index>(size), 1.0));
}

Prior Prior::weighted(Vector weights) { return Prior(Kind::DiscreteWeighted, std::move(weights)); }

Prior Prior::sparsity(const std::vector<std::vector<double>>& grid, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("sparsity prior needs tau > 0");
    Vector w(static_cast<Index>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double p = 1.0;
        for (double lambda : grid[i]) {
            const double r = lambda / tau;
            p /= (1.0 + r * r) * (1.0 + r * r);
        }
        w[static_cast<Index>(i)] = p;
    }
    return Prior(Kind::Sparsity, std::move(w));
}

double Prior::pinsker_density_value(double alpha, double w, double scale, double gamma) {
    const double s = std::pow(scale, -alpha / (2.0 * alpha + 2.0 * gamma + 1.0));
    const double denom = 1.0 + s * w;
    return 2.0 * s / (denom * denom * denom) * std::exp(-alpha);
}

Prior Prior::pinsker_density(std::span<const double> alpha, std::span<const double> w, double scale, double gamma) {
    if (alpha.size() != w.size()) throw std::invalid_argument("Pinsker prior needs one (alpha, w) pair per atom");
    if (!(scale > 0.0) || gamma < 0.0) throw std::invalid_argument("Pinsker prior needs scale > 0 and gamma >= 0");
    Vector d(static_cast<Index>(alpha.size()));
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (!(alpha[i] > 0.0) || !(w[i] > 0.0)) throw std::invalid_argument("Pinsker prior support is (0, inf)^2");
        d[static_cast<Index>(i)] = pinsker_density_value(alpha[i], w[i], scale, gamma);
    }
    return Prior(Kind::PinskerDensity, std::move(d));
}

}  // namespace ewagg
